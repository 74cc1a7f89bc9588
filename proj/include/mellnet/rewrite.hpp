#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mellnet/net.hpp"

namespace mellnet {

struct ReductionStep {
    std::string cut_path;
    CutClass rule = CutClass::Ax;
    bool erasing = false;
    int depth = 0;
    // path-qualified old id -> path-qualified surviving ids (empty = consumed);
    // pins are bookkeeping and do not appear
    std::map<std::string, std::vector<std::string>> edge_residues;
    std::map<std::string, std::vector<std::string>> link_residues;
    std::vector<std::string> created_links;
    std::vector<std::string> created_edges;

    std::map<std::string, std::vector<std::string>> edge_ancestors() const {
        std::map<std::string, std::vector<std::string>> inv;
        for (const auto& [k, vs] : edge_residues)
            for (const std::string& v : vs) inv[v].push_back(k);
        return inv;
    }
    std::map<std::string, std::vector<std::string>> link_ancestors() const {
        std::map<std::string, std::vector<std::string>> inv;
        for (const auto& [k, vs] : link_residues)
            for (const std::string& v : vs) inv[v].push_back(k);
        return inv;
    }
};

namespace detail {

inline std::string qual(const Net& n, int gs, const std::string& id) {
    std::string p = n.gs_path(gs);
    return p.empty() ? id : p + "/" + id;
}

// Navigate a path like "bang0/bang2/cut1" to (level, link id).
inline std::pair<int, std::string> resolve_path(const Net& n, const std::string& path) {
    int gs = 0;
    size_t start = 0;
    for (;;) {
        size_t slash = path.find('/', start);
        if (slash == std::string::npos) return {gs, path.substr(start)};
        std::string bang = path.substr(start, slash - start);
        auto it = n.boxes.find({gs, bang});
        if (it == n.boxes.end()) throw NetError("no box along path: " + path);
        gs = it->second.gs;
        start = slash + 1;
    }
}

inline void identity_residues(const Net& n, ReductionStep& st) {
    for (size_t g = 0; g < n.gss.size(); g++) {
        std::set<std::string> edges;
        for (const Link& l : n.gss[g].links) {
            if (l.kind != LinkKind::Pin)
                st.link_residues[qual(n, (int)g, l.id)] = {qual(n, (int)g, l.id)};
            edges.insert(l.prem.begin(), l.prem.end());
            edges.insert(l.concl.begin(), l.concl.end());
        }
        for (const std::string& e : edges)
            st.edge_residues[qual(n, (int)g, e)] = {qual(n, (int)g, e)};
    }
}

inline void erase_link(GS& gs, const std::string& id) {
    gs.links.erase(std::remove_if(gs.links.begin(), gs.links.end(),
                                  [&](const Link& l) { return l.id == id; }),
                   gs.links.end());
}

inline void rebuild_pins(GS& gs) {
    gs.links.erase(std::remove_if(gs.links.begin(), gs.links.end(),
                                  [&](const Link& l) { return l.kind == LinkKind::Pin; }),
                   gs.links.end());
    for (size_t i = 0; i < gs.concls.size(); i++)
        gs.links.push_back({"pin" + std::to_string(i), LinkKind::Pin, {gs.concls[i]}, {}});
}

// Replace edge `from` with edge `to` wherever it appears as a premise or
// conclusion-list entry at the given level.
inline void retarget_edge(Net& W, int g, const std::string& from, const std::string& to) {
    for (Link& l : W.gss[g].links)
        for (std::string& e : l.prem)
            if (e == from) e = to;
    bool concl_changed = false;
    for (std::string& c : W.gss[g].concls)
        if (c == from) {
            c = to;
            concl_changed = true;
        }
    if (concl_changed) rebuild_pins(W.gss[g]);
}

// Drop unreachable levels and renumber; box keys and parent indices follow.
inline Net garbage_collect(const Net& W) {
    std::vector<int> order = {0};
    std::map<int, int> remap;
    for (size_t i = 0; i < order.size(); i++) {
        int g = order[i];
        for (const Link& l : W.gss[g].links) {
            if (l.kind != LinkKind::Bang) continue;
            auto it = W.boxes.find({g, l.id});
            if (it == W.boxes.end()) throw NetError("internal: bang " + l.id + " lost its box");
            order.push_back(it->second.gs);
        }
    }
    Net R;
    for (size_t i = 0; i < order.size(); i++) remap[order[i]] = (int)i;
    for (int g : order) R.gss.push_back(W.gss[g]);
    for (size_t i = 0; i < R.gss.size(); i++) {
        if (i == 0) {
            R.gss[i].parent = -1;
            R.gss[i].parent_bang.clear();
        } else {
            R.gss[i].parent = remap.at(R.gss[i].parent);
        }
    }
    for (const auto& [key, ref] : W.boxes) {
        auto it = remap.find(key.first);
        if (it == remap.end()) continue;
        if (!remap.count(ref.gs)) continue;
        BoxRef nr = ref;
        nr.gs = remap.at(ref.gs);
        R.boxes[{it->second, key.second}] = nr;
    }
    return R;
}

// --- copying box contents ------------------------------------------------

struct CloneMaps {
    std::map<std::string, std::string> edge;  // source-level edge -> new id
    std::map<std::string, std::string> link;
};

inline std::string suffixed_fresh(std::set<std::string>& used, const std::string& base,
                                  const std::string& suffix) {
    std::string cand = base + suffix;
    while (used.count(cand)) cand += "'";
    used.insert(cand);
    return cand;
}

// Deep-copy a boxed level as a fresh level under (parent, parent_bang); ids
// get the suffix at every depth.  Records residues old-key -> new-key.
inline int clone_level(Net& W, int src, int parent, const std::string& parent_bang,
                       const std::string& suffix, ReductionStep& st,
                       const std::map<int, std::string>& src_paths);

// Copy the contents of level `src` into the existing level `dst` (the box is
// opened there).  The source's conclusion edges come back in the edge map with
// no target attached yet; pins are not copied.
inline CloneMaps clone_into_level(Net& W, int src, int dst, const std::string& suffix,
                                  ReductionStep& st,
                                  const std::map<int, std::string>& src_paths) {
    CloneMaps cm;
    std::set<std::string> used_edges, used_links;
    for (const Link& l : W.gss[dst].links) {
        used_links.insert(l.id);
        used_edges.insert(l.prem.begin(), l.prem.end());
        used_edges.insert(l.concl.begin(), l.concl.end());
    }
    const GS src_gs = W.gss[src];  // copy: W.gss may reallocate below
    std::set<std::string> src_edges;
    for (const Link& l : src_gs.links) {
        src_edges.insert(l.prem.begin(), l.prem.end());
        src_edges.insert(l.concl.begin(), l.concl.end());
    }
    for (const std::string& e : src_edges) {
        cm.edge[e] = suffixed_fresh(used_edges, e, suffix);
        auto& res = st.edge_residues[src_paths.at(src) + e];
        std::string p = W.gs_path(dst);
        res.push_back(p.empty() ? cm.edge[e] : p + "/" + cm.edge[e]);
    }
    for (const Link& l : src_gs.links) {
        if (l.kind == LinkKind::Pin) continue;
        Link nl = l;
        nl.id = suffixed_fresh(used_links, l.id, suffix);
        cm.link[l.id] = nl.id;
        for (std::string& e : nl.prem) e = cm.edge.at(e);
        for (std::string& e : nl.concl) e = cm.edge.at(e);
        {
            auto& res = st.link_residues[src_paths.at(src) + l.id];
            std::string p = W.gs_path(dst);
            res.push_back(p.empty() ? nl.id : p + "/" + nl.id);
        }
        if (l.kind == LinkKind::Bang) {
            BoxRef ref = W.boxes.at({src, l.id});
            int child = clone_level(W, ref.gs, dst, nl.id, suffix, st, src_paths);
            BoxRef nref;
            nref.gs = child;
            for (const auto& [a, b] : ref.aux2box) nref.aux2box.push_back({cm.edge.at(a), b + suffix});
            W.boxes[{dst, nl.id}] = nref;
        }
        W.gss[dst].links.push_back(std::move(nl));
    }
    return cm;
}

inline int clone_level(Net& W, int src, int parent, const std::string& parent_bang,
                       const std::string& suffix, ReductionStep& st,
                       const std::map<int, std::string>& src_paths) {
    int idx = (int)W.gss.size();
    W.gss.emplace_back();
    W.gss[idx].parent = parent;
    W.gss[idx].parent_bang = parent_bang;

    const GS src_gs = W.gss[src];
    auto rename = [&](const std::string& e) { return e + suffix; };
    for (const Link& l : src_gs.links) {
        Link nl = l;
        if (l.kind != LinkKind::Pin) {
            nl.id = l.id + suffix;
            auto& res = st.link_residues[src_paths.at(src) + l.id];
            res.push_back(W.gs_path(idx) + "/" + nl.id);
        }
        for (std::string& e : nl.prem) e = rename(e);
        for (std::string& e : nl.concl) e = rename(e);
        W.gss[idx].links.push_back(nl);
        if (l.kind == LinkKind::Bang) {
            BoxRef ref = W.boxes.at({src, l.id});
            int child = clone_level(W, ref.gs, idx, l.id + suffix, suffix, st, src_paths);
            BoxRef nref;
            nref.gs = child;
            for (const auto& [a, b] : ref.aux2box)
                nref.aux2box.push_back({rename(a), rename(b)});
            W.boxes[{idx, l.id + suffix}] = nref;
        }
    }
    for (const std::string& c : src_gs.concls) W.gss[idx].concls.push_back(rename(c));
    std::set<std::string> src_edges;
    for (const Link& l : src_gs.links) {
        src_edges.insert(l.prem.begin(), l.prem.end());
        src_edges.insert(l.concl.begin(), l.concl.end());
    }
    for (const std::string& e : src_edges)
        st.edge_residues[src_paths.at(src) + e].push_back(W.gs_path(idx) + "/" + e + suffix);
    return idx;
}

// Paths of every level of a subtree, with trailing separator, for residue keys.
inline std::map<int, std::string> subtree_paths(const Net& n, const std::vector<int>& levels) {
    std::map<int, std::string> out;
    for (int g : levels) {
        std::string p = n.gs_path(g);
        out[g] = p.empty() ? "" : p + "/";
    }
    return out;
}

// Splice structural conclusions of a boxed level: `old_edge` (a conclusion of
// level `lvl`) is replaced by `repl` (possibly empty), and the change is
// propagated through the enclosing bang's auxiliary conclusions outward.
inline void replace_structural_conclusion(Net& W, int lvl, const std::string& old_edge,
                                          const std::vector<std::string>& repl,
                                          ReductionStep& st) {
    GS& gs = W.gss[lvl];
    auto it = std::find(gs.concls.begin(), gs.concls.end(), old_edge);
    if (it == gs.concls.end())
        throw NetError("internal: " + old_edge + " is not a conclusion where expected");
    size_t pos = (size_t)(it - gs.concls.begin());
    gs.concls.erase(it);
    gs.concls.insert(gs.concls.begin() + pos, repl.begin(), repl.end());
    rebuild_pins(gs);

    if (lvl == 0) {
        if (!repl.empty())
            throw NetError("internal: structural edges cannot surface at ground");
        return;
    }
    int parent = gs.parent;
    const std::string pbang = gs.parent_bang;
    BoxRef& ref = W.boxes.at({parent, pbang});
    const std::string* oa = ref.aux_for(old_edge);
    if (!oa) throw NetError("internal: box conclusion " + old_edge + " not in aux map");
    std::string old_aux = *oa;

    std::set<std::string> used;
    for (const Link& l : W.gss[parent].links) {
        used.insert(l.prem.begin(), l.prem.end());
        used.insert(l.concl.begin(), l.concl.end());
    }
    std::vector<std::string> new_aux;
    for (size_t i = 0; i < repl.size(); i++) {
        std::string na = suffixed_fresh(used, old_aux, "~" + std::to_string(i + 1));
        new_aux.push_back(na);
        st.created_edges.push_back(qual(W, parent, na));
    }

    Link* bang = W.find_link(parent, pbang);
    auto ait = std::find(bang->concl.begin() + 1, bang->concl.end(), old_aux);
    size_t apos = (size_t)(ait - bang->concl.begin());
    bang->concl.erase(ait);
    bang->concl.insert(bang->concl.begin() + apos, new_aux.begin(), new_aux.end());

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [a, b] : ref.aux2box) {
        if (a == old_aux) {
            for (size_t i = 0; i < repl.size(); i++) pairs.push_back({new_aux[i], repl[i]});
        } else {
            pairs.push_back({a, b});
        }
    }
    ref.aux2box = std::move(pairs);

    auto dst = W.dst_of(parent, old_aux);
    if (!dst) throw NetError("internal: aux edge " + old_aux + " has no target");
    Link& dl = W.gss[parent].links[dst->link];
    if (dl.kind == LinkKind::Why) {
        auto pit = std::find(dl.prem.begin(), dl.prem.end(), old_aux);
        size_t ppos = (size_t)(pit - dl.prem.begin());
        dl.prem.erase(pit);
        dl.prem.insert(dl.prem.begin() + ppos, new_aux.begin(), new_aux.end());
    } else if (dl.kind == LinkKind::Pin) {
        replace_structural_conclusion(W, parent, old_aux, new_aux, st);
    } else {
        throw NetError("internal: structural edge reaches a " + std::string(kind_name(dl.kind)));
    }
}

} // namespace detail

// Fires the cut addressed by path.  Throws on clashes and on nets whose
// geometry contradicts validity (e.g. a box feeding its own cut's why link).
inline std::pair<Net, ReductionStep> reduce_cut(const Net& n, const std::string& cut_path) {
    auto [g, tid] = detail::resolve_path(n, cut_path);
    const Link* tl = n.find_link(g, tid);
    if (!tl || tl->kind != LinkKind::Cut) throw NetError("no cut at " + cut_path);

    ReductionStep st;
    st.cut_path = cut_path;
    st.depth = n.depth_of_gs(g);
    detail::identity_residues(n, st);
    auto consume_link = [&](int lg, const std::string& id) {
        st.link_residues[detail::qual(n, lg, id)].clear();
    };
    auto consume_edge = [&](int lg, const std::string& e) {
        st.edge_residues[detail::qual(n, lg, e)].clear();
    };

    Net W = n;
    const std::string p = tl->prem[0], q = tl->prem[1];
    auto s0 = n.src_of(g, p), s1 = n.src_of(g, q);
    LinkKind k0 = n.gss[g].links[s0->link].kind;
    LinkKind k1 = n.gss[g].links[s1->link].kind;

    auto finish = [&](Net&& W2) {
        Net R = detail::garbage_collect(W2);
        check_well_formed(R);
        return std::make_pair(std::move(R), std::move(st));
    };

    // axiom on either side wins
    if (k0 == LinkKind::Ax || k1 == LinkKind::Ax) {
        st.rule = CutClass::Ax;
        bool left = k0 == LinkKind::Ax;
        const Link& axl = n.gss[g].links[left ? s0->link : s1->link];
        const std::string axedge = left ? p : q;
        const std::string other = left ? q : p;
        const std::string o = axl.concl[0] == axedge ? axl.concl[1] : axl.concl[0];
        if (o == other)
            throw NetError("cut closes a single axiom on itself; the net cannot be valid");
        detail::erase_link(W.gss[g], tid);
        detail::erase_link(W.gss[g], axl.id);
        detail::retarget_edge(W, g, o, other);
        consume_link(g, tid);
        consume_link(g, axl.id);
        consume_edge(g, axedge);
        consume_edge(g, o);
        return finish(std::move(W));
    }

    auto is = [&](LinkKind a, LinkKind b) { return (k0 == a && k1 == b) || (k0 == b && k1 == a); };

    if (is(LinkKind::One, LinkKind::Bot)) {
        st.rule = CutClass::OneBot;
        const Link& l0 = n.gss[g].links[s0->link];
        const Link& l1 = n.gss[g].links[s1->link];
        detail::erase_link(W.gss[g], tid);
        detail::erase_link(W.gss[g], l0.id);
        detail::erase_link(W.gss[g], l1.id);
        consume_link(g, tid);
        consume_link(g, l0.id);
        consume_link(g, l1.id);
        consume_edge(g, p);
        consume_edge(g, q);
        return finish(std::move(W));
    }

    if (is(LinkKind::Tensor, LinkKind::Par)) {
        st.rule = CutClass::TensorPar;
        const Link& T = n.gss[g].links[k0 == LinkKind::Tensor ? s0->link : s1->link];
        const Link& P = n.gss[g].links[k0 == LinkKind::Par ? s0->link : s1->link];
        std::string c1 = W.fresh_link_id(g, tid + "'l");
        std::string c2 = W.fresh_link_id(g, tid + "'r");
        W.gss[g].links.push_back({c1, LinkKind::Cut, {T.prem[0], P.prem[0]}, {}});
        W.gss[g].links.push_back({c2, LinkKind::Cut, {T.prem[1], P.prem[1]}, {}});
        detail::erase_link(W.gss[g], tid);
        detail::erase_link(W.gss[g], T.id);
        detail::erase_link(W.gss[g], P.id);
        consume_link(g, tid);
        consume_link(g, T.id);
        consume_link(g, P.id);
        consume_edge(g, p);
        consume_edge(g, q);
        st.created_links.push_back(detail::qual(n, g, c1));
        st.created_links.push_back(detail::qual(n, g, c2));
        return finish(std::move(W));
    }

    if (is(LinkKind::Bang, LinkKind::Why)) {
        st.rule = CutClass::BangWhy;
        const Link bang = n.gss[g].links[k0 == LinkKind::Bang ? s0->link : s1->link];
        const Link why = n.gss[g].links[k0 == LinkKind::Why ? s0->link : s1->link];
        const size_t k = why.prem.size();
        st.erasing = k == 0;
        const BoxRef box_ref = n.box(g, bang.id);
        const int bg = box_ref.gs;
        const std::vector<int> box_subtree = n.subtree(bg);
        const std::set<int> box_set(box_subtree.begin(), box_subtree.end());

        // the box itself is consumed: copies (if any) are the residues
        for (int bgs : box_subtree) {
            std::set<std::string> edges;
            for (const Link& l : n.gss[bgs].links) {
                if (l.kind != LinkKind::Pin) consume_link(bgs, l.id);
                edges.insert(l.prem.begin(), l.prem.end());
                edges.insert(l.concl.begin(), l.concl.end());
            }
            for (const std::string& e : edges) consume_edge(bgs, e);
        }

        // locate box's logical conclusion
        std::string box_main;
        for (const std::string& c : n.gss[bg].concls)
            if (!edge_is_structural(n, bg, c)) box_main = c;

        // resolve every why premise to its introduction
        struct Seg { int gs; std::string edge; };
        std::vector<std::vector<Seg>> chains(k);
        std::vector<int> flat_gs(k);
        std::vector<std::string> flat_id(k), flat_prem(k);
        for (size_t i = 0; i < k; i++) {
            int cg = g;
            std::string e = why.prem[i];
            for (;;) {
                chains[i].push_back({cg, e});
                auto sp = n.src_of(cg, e);
                const Link& sl = n.gss[cg].links[sp->link];
                if (sl.kind == LinkKind::Flat) {
                    flat_gs[i] = cg;
                    flat_id[i] = sl.id;
                    flat_prem[i] = sl.prem[0];
                    break;
                }
                if (cg == g && sl.id == bang.id)
                    throw NetError("box of " + bang.id + " feeds the why link it is cut with");
                const BoxRef& r = n.box(cg, sl.id);
                e = *r.box_edge_for(e);
                cg = r.gs;
            }
            if (box_set.count(flat_gs[i]))
                throw NetError("box of " + bang.id + " feeds the why link it is cut with");
        }

        // targets of the bang's auxiliary conclusions, before any mutation
        struct AuxInfo {
            std::string aux;
            std::string box_edge;
            bool to_pin;
            std::string why_id;  // when to_pin is false
        };
        std::vector<AuxInfo> auxes;
        for (size_t j = 1; j < bang.concl.size(); j++) {
            AuxInfo ai;
            ai.aux = bang.concl[j];
            ai.box_edge = *box_ref.box_edge_for(ai.aux);
            auto d = n.dst_of(g, ai.aux);
            const Link& dl = n.gss[g].links[d->link];
            ai.to_pin = dl.kind == LinkKind::Pin;
            if (!ai.to_pin) ai.why_id = dl.id;
            auxes.push_back(std::move(ai));
        }

        auto src_paths = detail::subtree_paths(n, box_subtree);

        // one copy of the box contents per why premise, opened at the level
        // of the premise's introduction
        std::vector<std::map<std::string, std::string>> copy_edge(k);
        std::vector<std::vector<std::string>> routed(auxes.size());
        for (size_t i = 0; i < k; i++) {
            const std::string suffix = ":" + std::to_string(i + 1);
            int tgs = flat_gs[i];
            detail::CloneMaps cm = detail::clone_into_level(W, bg, tgs, suffix, st, src_paths);
            copy_edge[i] = cm.edge;
            std::string ct = W.fresh_link_id(tgs, tid + suffix);
            W.gss[tgs].links.push_back(
                {ct, LinkKind::Cut, {flat_prem[i], cm.edge.at(box_main)}, {}});
            st.created_links.push_back(detail::qual(W, tgs, ct));
            detail::erase_link(W.gss[tgs], flat_id[i]);
            consume_link(flat_gs[i], flat_id[i]);

            // thread the copy's structural conclusions out to the cut's level
            for (size_t j = 0; j < auxes.size(); j++) {
                std::string cur_edge = cm.edge.at(auxes[j].box_edge);
                int cur = tgs;
                while (cur != g) {
                    GS& cgs = W.gss[cur];
                    cgs.concls.push_back(cur_edge);
                    detail::rebuild_pins(cgs);
                    int parent = cgs.parent;
                    std::string pbang = cgs.parent_bang;
                    std::set<std::string> used;
                    for (const Link& l : W.gss[parent].links) {
                        used.insert(l.prem.begin(), l.prem.end());
                        used.insert(l.concl.begin(), l.concl.end());
                    }
                    std::string na = detail::suffixed_fresh(used, auxes[j].aux + suffix, "");
                    W.find_link(parent, pbang)->concl.push_back(na);
                    W.boxes.at({parent, pbang}).aux2box.push_back({na, cur_edge});
                    st.created_edges.push_back(detail::qual(W, parent, na));
                    cur_edge = na;
                    cur = parent;
                }
                routed[j].push_back(cur_edge);
            }
        }

        // dismantle the chains: each traversed bang loses the corresponding
        // auxiliary conclusion, each traversed level loses that conclusion
        for (size_t i = 0; i < k; i++) {
            for (size_t s = 0; s < chains[i].size(); s++) {
                int cg = chains[i][s].gs;
                const std::string& e = chains[i][s].edge;
                consume_edge(cg, e);
                if (s + 1 < chains[i].size()) {
                    auto sp = W.src_of(cg, e);
                    Link& sl = W.gss[cg].links[sp->link];
                    const std::string inner = chains[i][s + 1].edge;
                    sl.concl.erase(std::remove(sl.concl.begin(), sl.concl.end(), e),
                                   sl.concl.end());
                    BoxRef& r = W.boxes.at({cg, sl.id});
                    r.aux2box.erase(std::remove_if(r.aux2box.begin(), r.aux2box.end(),
                                                   [&](const auto& pr) { return pr.first == e; }),
                                    r.aux2box.end());
                    GS& igs = W.gss[r.gs];
                    igs.concls.erase(std::remove(igs.concls.begin(), igs.concls.end(), inner),
                                     igs.concls.end());
                    detail::rebuild_pins(igs);
                }
            }
        }

        // rewire the targets of the bang's auxiliary conclusions
        for (size_t j = 0; j < auxes.size(); j++) {
            consume_edge(g, auxes[j].aux);
            if (auxes[j].to_pin) {
                detail::replace_structural_conclusion(W, g, auxes[j].aux, routed[j], st);
            } else {
                Link* wl = W.find_link(g, auxes[j].why_id);
                auto pit = std::find(wl->prem.begin(), wl->prem.end(), auxes[j].aux);
                size_t pos = (size_t)(pit - wl->prem.begin());
                wl->prem.erase(pit);
                wl->prem.insert(wl->prem.begin() + pos, routed[j].begin(), routed[j].end());
            }
        }

        // consume the cut, the bang, the why, and (for zero copies) the box
        detail::erase_link(W.gss[g], tid);
        detail::erase_link(W.gss[g], bang.id);
        detail::erase_link(W.gss[g], why.id);
        W.boxes.erase({g, bang.id});
        consume_link(g, tid);
        consume_link(g, bang.id);
        consume_link(g, why.id);
        consume_edge(g, p);
        consume_edge(g, q);
        return finish(std::move(W));
    }

    throw NetError("cut " + cut_path + " is a clash and cannot be reduced");
}

// ---------------------------------------------------------------------------
// Strategies

enum class Strategy : uint8_t { Any, NonErasing, StratifiedNonErasing, AntistratifiedErasing };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Any: return "any";
        case Strategy::NonErasing: return "nonerasing";
        case Strategy::StratifiedNonErasing: return "stratified_nonerasing";
        case Strategy::AntistratifiedErasing: return "antistratified_erasing";
    }
    return "?";
}

inline std::optional<Strategy> strategy_from_name(const std::string& s) {
    if (s == "any") return Strategy::Any;
    if (s == "nonerasing") return Strategy::NonErasing;
    if (s == "stratified_nonerasing") return Strategy::StratifiedNonErasing;
    if (s == "antistratified_erasing") return Strategy::AntistratifiedErasing;
    return std::nullopt;
}

enum class Terminal : uint8_t { Normal, NeNormal, FuelExhausted, ClashBlocked };

inline const char* terminal_name(Terminal t) {
    switch (t) {
        case Terminal::Normal: return "normal";
        case Terminal::NeNormal: return "ne_normal";
        case Terminal::FuelExhausted: return "fuel_exhausted";
        case Terminal::ClashBlocked: return "clash_blocked";
    }
    return "?";
}

struct TraceStep {
    std::string cut_path;
    CutClass rule;
    bool erasing;
    int depth;
};

struct NormalizeResult {
    Net end;
    std::vector<TraceStep> steps;
    Terminal terminal = Terminal::Normal;
};

// First eligible cut of the strategy under the (depth, path) order; nullopt
// at the strategy's rest points.
inline std::optional<CutInfo> pick_cut(const Net& n, Strategy strat) {
    std::vector<CutInfo> pool;
    switch (strat) {
        case Strategy::Any:
            for (const CutInfo& c : classify_cuts(n))
                if (c.cls != CutClass::Clash) pool.push_back(c);
            break;
        case Strategy::NonErasing:
            for (const CutInfo& c : classify_cuts(n))
                if (c.cls != CutClass::Clash && !c.erasing) pool.push_back(c);
            break;
        case Strategy::StratifiedNonErasing:
            pool = stratified_nonerasing_cuts(n);
            break;
        case Strategy::AntistratifiedErasing:
            pool = antistratified_erasing_cuts(n);
            break;
    }
    if (pool.empty()) return std::nullopt;
    return pool.front();
}

inline NormalizeResult normalize(Net n, Strategy strat, long long fuel = 100000) {
    NormalizeResult out;
    for (;;) {
        auto pick = pick_cut(n, strat);
        if (!pick) {
            auto cuts = classify_cuts(n);
            if (cuts.empty()) {
                out.terminal = Terminal::Normal;
            } else if (std::all_of(cuts.begin(), cuts.end(),
                                   [](const CutInfo& c) { return c.erasing; })) {
                out.terminal = Terminal::NeNormal;
            } else if (std::all_of(cuts.begin(), cuts.end(), [](const CutInfo& c) {
                           return c.erasing || c.cls == CutClass::Clash;
                       })) {
                out.terminal = Terminal::ClashBlocked;
            } else {
                // only the antistratified strategy can stall like this
                throw NetError("antistratified reduction needs a net whose cuts all erase");
            }
            break;
        }
        if (fuel-- <= 0) {
            out.terminal = Terminal::FuelExhausted;
            break;
        }
        auto [next, step] = reduce_cut(n, pick->path);
        out.steps.push_back({pick->path, pick->cls, pick->erasing, pick->depth});
        n = std::move(next);
    }
    out.end = std::move(n);
    return out;
}

} // namespace mellnet
