#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mellnet/sexpr.hpp"

namespace mellnet {

struct NetError : std::runtime_error {
    explicit NetError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class LinkKind : uint8_t { Ax, Cut, Tensor, Par, One, Bot, Flat, Why, Bang, Pin };

inline const char* kind_name(LinkKind k) {
    switch (k) {
        case LinkKind::Ax: return "ax";
        case LinkKind::Cut: return "cut";
        case LinkKind::Tensor: return "tensor";
        case LinkKind::Par: return "par";
        case LinkKind::One: return "one";
        case LinkKind::Bot: return "bot";
        case LinkKind::Flat: return "flat";
        case LinkKind::Why: return "why";
        case LinkKind::Bang: return "bang";
        case LinkKind::Pin: return "pin";
    }
    return "?";
}

// A node of the structure.  Premises point up (edges coming in), conclusions
// down (edges going out).  For Bang links concl[0] is the main conclusion and
// the rest are auxiliary (structural) ones.  Conclusion pins are ordinary
// links of kind Pin with a single premise.
struct Link {
    std::string id;
    LinkKind kind;
    std::vector<std::string> prem;
    std::vector<std::string> concl;
};

// One box level.  gss[0] of a Net is the ground structure; every other level
// records which bang of which parent level owns it.
struct GS {
    std::vector<Link> links;           // declaration order; pins last at parse time
    std::vector<std::string> concls;   // conclusion edge ids, in pin order
    int parent = -1;
    std::string parent_bang;
};

struct BoxRef {
    int gs = -1;
    // aux conclusion edge (in the bang's level) -> box conclusion edge (in the
    // box level); the association is a bijection onto the box's structural
    // conclusions.
    std::vector<std::pair<std::string, std::string>> aux2box;

    const std::string* box_edge_for(const std::string& aux) const {
        for (const auto& [a, b] : aux2box)
            if (a == aux) return &b;
        return nullptr;
    }
    const std::string* aux_for(const std::string& box_edge) const {
        for (const auto& [a, b] : aux2box)
            if (b == box_edge) return &a;
        return nullptr;
    }
};

struct Port {
    int link = -1;  // index into GS::links
    int port = -1;  // index into prem or concl
};

struct Net {
    std::vector<GS> gss;  // [0] is ground
    std::map<std::pair<int, std::string>, BoxRef> boxes;

    const BoxRef& box(int gs, const std::string& bang) const {
        auto it = boxes.find({gs, bang});
        if (it == boxes.end()) throw NetError("no box for bang " + bang);
        return it->second;
    }
    BoxRef& box(int gs, const std::string& bang) {
        auto it = boxes.find({gs, bang});
        if (it == boxes.end()) throw NetError("no box for bang " + bang);
        return it->second;
    }

    int link_index(int gs, const std::string& id) const {
        const auto& ls = gss[gs].links;
        for (size_t i = 0; i < ls.size(); i++)
            if (ls[i].id == id) return (int)i;
        return -1;
    }
    const Link* find_link(int gs, const std::string& id) const {
        int i = link_index(gs, id);
        return i < 0 ? nullptr : &gss[gs].links[i];
    }
    Link* find_link(int gs, const std::string& id) {
        int i = link_index(gs, id);
        return i < 0 ? nullptr : &gss[gs].links[i];
    }

    std::optional<Port> src_of(int gs, const std::string& edge) const {
        const auto& ls = gss[gs].links;
        for (size_t i = 0; i < ls.size(); i++)
            for (size_t p = 0; p < ls[i].concl.size(); p++)
                if (ls[i].concl[p] == edge) return Port{(int)i, (int)p};
        return std::nullopt;
    }
    std::optional<Port> dst_of(int gs, const std::string& edge) const {
        const auto& ls = gss[gs].links;
        for (size_t i = 0; i < ls.size(); i++)
            for (size_t p = 0; p < ls[i].prem.size(); p++)
                if (ls[i].prem[p] == edge) return Port{(int)i, (int)p};
        return std::nullopt;
    }

    int depth_of_gs(int gs) const {
        int d = 0;
        while (gss[gs].parent >= 0) {
            gs = gss[gs].parent;
            d++;
        }
        return d;
    }

    // Bang-id path from ground to the level, e.g. "bang0/bang1"; "" for ground.
    std::string gs_path(int gs) const {
        std::vector<std::string> parts;
        while (gss[gs].parent >= 0) {
            parts.push_back(gss[gs].parent_bang);
            gs = gss[gs].parent;
        }
        std::string out;
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            if (!out.empty()) out += '/';
            out += *it;
        }
        return out;
    }

    std::vector<int> subtree(int root) const {
        std::vector<int> out = {root};
        for (size_t i = 0; i < out.size(); i++)
            for (const auto& [key, ref] : boxes)
                if (key.first == out[i]) out.push_back(ref.gs);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string fresh_edge_id(int gs, const std::string& stem) const {
        std::set<std::string> used;
        for (const Link& l : gss[gs].links) {
            used.insert(l.prem.begin(), l.prem.end());
            used.insert(l.concl.begin(), l.concl.end());
        }
        if (!used.count(stem)) return stem;
        for (int i = 1;; i++) {
            std::string c = stem + "~" + std::to_string(i);
            if (!used.count(c)) return c;
        }
    }
    std::string fresh_link_id(int gs, const std::string& stem) const {
        if (!find_link(gs, stem)) return stem;
        for (int i = 1;; i++) {
            std::string c = stem + "~" + std::to_string(i);
            if (!find_link(gs, c)) return c;
        }
    }
};

// True when conclusion port p of link l carries a structural edge.
inline bool structural_src(const Link& l, size_t p) {
    if (l.kind == LinkKind::Flat) return true;
    if (l.kind == LinkKind::Bang) return p >= 1;
    return false;
}

inline bool edge_is_structural(const Net& n, int gs, const std::string& edge) {
    auto s = n.src_of(gs, edge);
    if (!s) throw NetError("edge " + edge + " has no source");
    return structural_src(n.gss[gs].links[s->link], (size_t)s->port);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline int build_gs(Net& n, const Sexp& e, int parent, const std::string& parent_bang);

inline void expect_arrow(const Sexp& e, size_t i, const char* what) {
    if (i >= e.size() || !e.at(i).is_sym("->"))
        throw NetError(std::string("expected -> in ") + what + ": " + write_sexpr(e));
}

inline std::string edge_tok(const Sexp& e) {
    if (!e.is_atom || e.atom == "->" || e.atom == "=")
        throw NetError("bad edge id: " + write_sexpr(e));
    return e.atom;
}

inline int build_gs(Net& n, const Sexp& e, int parent, const std::string& parent_bang) {
    if (e.head() != "net") throw NetError("expected (net ...): " + write_sexpr(e));
    if (e.size() < 2 || e.at(1).head() != "concl")
        throw NetError("net must start with a (concl ...) clause");

    int idx = (int)n.gss.size();
    n.gss.emplace_back();
    n.gss[idx].parent = parent;
    n.gss[idx].parent_bang = parent_bang;

    std::vector<std::string> concls;
    for (size_t i = 1; i < e.at(1).size(); i++) concls.push_back(edge_tok(e.at(1).at(i)));

    std::map<std::string, int> kind_count;
    auto next_id = [&](const char* k) {
        int c = kind_count[k]++;
        return std::string(k) + std::to_string(c);
    };

    std::vector<Link> links;
    for (size_t i = 2; i < e.size(); i++) {
        const Sexp& f = e.at(i);
        std::string h = f.head();
        Link l;
        if (h == "ax") {
            if (f.size() != 3) throw NetError("ax needs two conclusions");
            l = {next_id("ax"), LinkKind::Ax, {}, {edge_tok(f.at(1)), edge_tok(f.at(2))}};
        } else if (h == "cut") {
            if (f.size() != 3) throw NetError("cut needs two premises");
            l = {next_id("cut"), LinkKind::Cut, {edge_tok(f.at(1)), edge_tok(f.at(2))}, {}};
        } else if (h == "one") {
            if (f.size() != 2) throw NetError("one needs one conclusion");
            l = {next_id("one"), LinkKind::One, {}, {edge_tok(f.at(1))}};
        } else if (h == "bot") {
            if (f.size() != 2) throw NetError("bot needs one conclusion");
            l = {next_id("bot"), LinkKind::Bot, {}, {edge_tok(f.at(1))}};
        } else if (h == "tensor" || h == "par") {
            if (f.size() != 5) throw NetError(h + " needs (two premises -> conclusion)");
            expect_arrow(f, 3, h.c_str());
            l = {next_id(h.c_str()), h == "tensor" ? LinkKind::Tensor : LinkKind::Par,
                 {edge_tok(f.at(1)), edge_tok(f.at(2))},
                 {edge_tok(f.at(4))}};
        } else if (h == "flat") {
            if (f.size() != 4) throw NetError("flat needs (premise -> conclusion)");
            expect_arrow(f, 2, "flat");
            l = {next_id("flat"), LinkKind::Flat, {edge_tok(f.at(1))}, {edge_tok(f.at(3))}};
        } else if (h == "why") {
            size_t arrow = 0;
            for (size_t j = 1; j < f.size(); j++)
                if (f.at(j).is_sym("->")) arrow = j;
            if (arrow == 0 || arrow + 2 != f.size())
                throw NetError("why needs (premises... -> conclusion)");
            l = {next_id("why"), LinkKind::Why, {}, {edge_tok(f.at(arrow + 1))}};
            for (size_t j = 1; j < arrow; j++) l.prem.push_back(edge_tok(f.at(j)));
        } else if (h == "bang") {
            expect_arrow(f, 1, "bang");
            if (f.size() < 3) throw NetError("bang needs a main conclusion");
            l = {next_id("bang"), LinkKind::Bang, {}, {edge_tok(f.at(2))}};
            const Sexp* box_form = nullptr;
            std::vector<std::pair<std::string, std::string>> map_pairs;
            for (size_t j = 3; j < f.size(); j++) {
                const Sexp& c = f.at(j);
                std::string ch = c.head();
                if (ch == "aux") {
                    for (size_t m = 1; m < c.size(); m++) l.concl.push_back(edge_tok(c.at(m)));
                } else if (ch == "box") {
                    if (c.size() != 2) throw NetError("box clause needs a net");
                    box_form = &c.at(1);
                } else if (ch == "map") {
                    for (size_t m = 1; m < c.size(); m++) {
                        const Sexp& pr = c.at(m);
                        if (pr.is_atom || pr.size() != 3 || !pr.at(1).is_sym("="))
                            throw NetError("map entry must be (aux = box-conclusion)");
                        map_pairs.push_back({edge_tok(pr.at(0)), edge_tok(pr.at(2))});
                    }
                } else {
                    throw NetError("unknown bang clause: " + write_sexpr(c));
                }
            }
            if (!box_form) throw NetError("bang " + l.id + " is missing its box");
            int child = build_gs(n, *box_form, idx, l.id);
            n.boxes[{idx, l.id}] = BoxRef{child, std::move(map_pairs)};
        } else {
            throw NetError("unknown link form: " + write_sexpr(f));
        }
        links.push_back(std::move(l));
    }

    for (size_t i = 0; i < concls.size(); i++)
        links.push_back({"pin" + std::to_string(i), LinkKind::Pin, {concls[i]}, {}});

    n.gss[idx].links = std::move(links);
    n.gss[idx].concls = std::move(concls);
    return idx;
}

} // namespace detail

// Structural well-formedness: arities, unique source/target per edge, the
// logical/structural port discipline, per-level acyclicity of the link DAG,
// box interfaces.  Validity in the correctness sense (switchings) is a
// separate, more expensive check.
inline void check_well_formed(const Net& n) {
    if (n.gss.empty()) throw NetError("net has no ground level");
    for (size_t g = 0; g < n.gss.size(); g++) {
        const GS& gs = n.gss[g];
        std::map<std::string, std::vector<Port>> srcs, dsts;
        for (size_t i = 0; i < gs.links.size(); i++) {
            const Link& l = gs.links[i];
            size_t np = l.prem.size(), nc = l.concl.size();
            bool ok = true;
            switch (l.kind) {
                case LinkKind::Ax: ok = np == 0 && nc == 2; break;
                case LinkKind::Cut: ok = np == 2 && nc == 0; break;
                case LinkKind::Tensor:
                case LinkKind::Par: ok = np == 2 && nc == 1; break;
                case LinkKind::One:
                case LinkKind::Bot: ok = np == 0 && nc == 1; break;
                case LinkKind::Flat: ok = np == 1 && nc == 1; break;
                case LinkKind::Why: ok = nc == 1; break;
                case LinkKind::Bang: ok = np == 0 && nc >= 1; break;
                case LinkKind::Pin: ok = np == 1 && nc == 0; break;
            }
            if (!ok)
                throw NetError(std::string("bad arity for ") + kind_name(l.kind) + " " + l.id);
            for (size_t p = 0; p < nc; p++) srcs[l.concl[p]].push_back({(int)i, (int)p});
            for (size_t p = 0; p < np; p++) dsts[l.prem[p]].push_back({(int)i, (int)p});
        }
        for (const auto& [e, v] : srcs)
            if (v.size() != 1)
                throw NetError("edge " + e + " has " + std::to_string(v.size()) + " sources");
        for (const auto& [e, v] : dsts)
            if (v.size() != 1)
                throw NetError("edge " + e + " has " + std::to_string(v.size()) + " targets");
        for (const auto& [e, v] : srcs)
            if (!dsts.count(e)) throw NetError("edge " + e + " has no target");
        for (const auto& [e, v] : dsts)
            if (!srcs.count(e)) throw NetError("edge " + e + " has no source");

        // port discipline: why premises take structural edges, every other
        // premise takes logical ones; pins take either
        for (const auto& [e, v] : dsts) {
            const Link& sl = gs.links[srcs[e][0].link];
            bool structural = structural_src(sl, (size_t)srcs[e][0].port);
            const Link& dl = gs.links[v[0].link];
            if (dl.kind == LinkKind::Pin) continue;
            bool wants_structural = dl.kind == LinkKind::Why;
            if (structural != wants_structural)
                throw NetError("edge " + e + " connects " + kind_name(sl.kind) + " to " +
                               kind_name(dl.kind) + " against the structural discipline");
        }

        // per-level DAG over links
        {
            std::vector<int> state(gs.links.size(), 0);
            std::vector<std::vector<int>> next(gs.links.size());
            for (const auto& [e, v] : srcs) next[srcs[e][0].link].push_back(dsts[e][0].link);
            auto dfs = [&](auto&& self, int u) -> bool {
                state[u] = 1;
                for (int w : next[u]) {
                    if (state[w] == 1) return false;
                    if (state[w] == 0 && !self(self, w)) return false;
                }
                state[u] = 2;
                return true;
            };
            for (size_t i = 0; i < gs.links.size(); i++)
                if (state[i] == 0 && !dfs(dfs, (int)i))
                    throw NetError("directed cycle among links at level " + std::to_string(g));
        }

        // box interfaces
        for (const Link& l : gs.links) {
            if (l.kind != LinkKind::Bang) continue;
            auto it = n.boxes.find({(int)g, l.id});
            if (it == n.boxes.end()) throw NetError("bang " + l.id + " has no box");
            const BoxRef& ref = it->second;
            const GS& box = n.gss[ref.gs];
            std::vector<std::string> box_structural, box_logical;
            for (const std::string& c : box.concls)
                (edge_is_structural(n, ref.gs, c) ? box_structural : box_logical).push_back(c);
            if (box_logical.size() != 1)
                throw NetError("box of " + l.id + " must have exactly one logical conclusion");
            if (ref.aux2box.size() != l.concl.size() - 1 ||
                box_structural.size() != l.concl.size() - 1)
                throw NetError("bang " + l.id +
                               ": auxiliary conclusions and box map sizes disagree");
            std::set<std::string> seen_aux, seen_box;
            for (const auto& [a, b] : ref.aux2box) {
                if (std::find(l.concl.begin() + 1, l.concl.end(), a) == l.concl.end())
                    throw NetError("bang " + l.id + ": map mentions unknown aux edge " + a);
                if (std::find(box_structural.begin(), box_structural.end(), b) ==
                    box_structural.end())
                    throw NetError("bang " + l.id + ": map mentions non-structural box edge " + b);
                if (!seen_aux.insert(a).second || !seen_box.insert(b).second)
                    throw NetError("bang " + l.id + ": box map is not a bijection");
            }
            if (box.links.empty()) throw NetError("box of " + l.id + " is empty");
        }
    }

    // a net proper has only logical conclusions at ground
    for (const std::string& c : n.gss[0].concls)
        if (edge_is_structural(n, 0, c))
            throw NetError("ground conclusion " + c + " is structural");
}

inline Net parse_net_sexp(const Sexp& e) {
    Net n;
    detail::build_gs(n, e, -1, "");
    check_well_formed(n);
    return n;
}

inline Net parse_net(const std::string& text) { return parse_net_sexp(parse_sexpr(text)); }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline void print_gs(const Net& n, int g, std::string& out, int indent) {
    std::string pad(indent, ' ');
    out += "(net (concl";
    for (const std::string& c : n.gss[g].concls) {
        out += ' ';
        out += c;
    }
    out += ")";
    for (const Link& l : n.gss[g].links) {
        if (l.kind == LinkKind::Pin) continue;
        out += '\n';
        out += pad;
        out += "  (";
        out += kind_name(l.kind);
        switch (l.kind) {
            case LinkKind::Ax:
            case LinkKind::One:
            case LinkKind::Bot:
                for (const std::string& e : l.concl) { out += ' '; out += e; }
                break;
            case LinkKind::Cut:
                for (const std::string& e : l.prem) { out += ' '; out += e; }
                break;
            case LinkKind::Tensor:
            case LinkKind::Par:
            case LinkKind::Flat:
            case LinkKind::Why:
                for (const std::string& e : l.prem) { out += ' '; out += e; }
                out += " ->";
                out += ' ';
                out += l.concl[0];
                break;
            case LinkKind::Bang: {
                out += " -> ";
                out += l.concl[0];
                if (l.concl.size() > 1) {
                    out += " (aux";
                    for (size_t i = 1; i < l.concl.size(); i++) { out += ' '; out += l.concl[i]; }
                    out += ')';
                }
                const BoxRef& ref = n.box(g, l.id);
                out += "\n";
                out += pad;
                out += "    (box ";
                print_gs(n, ref.gs, out, indent + 4);
                out += ")";
                if (!ref.aux2box.empty()) {
                    out += "\n";
                    out += pad;
                    out += "    (map";
                    for (const auto& [a, b] : ref.aux2box) {
                        out += " (";
                        out += a;
                        out += " = ";
                        out += b;
                        out += ')';
                    }
                    out += ')';
                }
                break;
            }
            case LinkKind::Pin:
                break;
        }
        out += ')';
    }
    out += ')';
}

} // namespace detail

inline std::string print_net(const Net& n) {
    std::string out;
    detail::print_gs(n, 0, out, 0);
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Sizes and cut bookkeeping

// Number of logical edges, boxes included (each box counted once).
inline long long net_size(const Net& n) {
    long long total = 0;
    for (size_t g = 0; g < n.gss.size(); g++)
        for (const Link& l : n.gss[g].links)
            for (size_t p = 0; p < l.concl.size(); p++)
                if (!structural_src(l, p)) total++;
    return total;
}

inline int net_depth(const Net& n) {
    int d = 0;
    for (size_t g = 0; g < n.gss.size(); g++) d = std::max(d, n.depth_of_gs((int)g));
    return d;
}

enum class CutClass : uint8_t { Clash, Ax, TensorPar, OneBot, BangWhy };

inline const char* cut_class_name(CutClass c) {
    switch (c) {
        case CutClass::Clash: return "clash";
        case CutClass::Ax: return "ax";
        case CutClass::TensorPar: return "tensor-par";
        case CutClass::OneBot: return "one-bot";
        case CutClass::BangWhy: return "bang-why";
    }
    return "?";
}

struct CutInfo {
    int gs = 0;
    std::string id;
    std::string path;  // gs path + "/" + id; just id at ground
    int depth = 0;
    CutClass cls = CutClass::Clash;
    bool erasing = false;
    bool linear = false;
};

inline std::vector<CutInfo> classify_cuts(const Net& n) {
    std::vector<CutInfo> out;
    for (size_t g = 0; g < n.gss.size(); g++) {
        for (const Link& l : n.gss[g].links) {
            if (l.kind != LinkKind::Cut) continue;
            CutInfo ci;
            ci.gs = (int)g;
            ci.id = l.id;
            std::string path = n.gs_path((int)g);
            ci.path = path.empty() ? l.id : path + "/" + l.id;
            ci.depth = n.depth_of_gs((int)g);
            auto s0 = n.src_of((int)g, l.prem[0]);
            auto s1 = n.src_of((int)g, l.prem[1]);
            if (!s0 || !s1) throw NetError("cut " + l.id + " has a dangling premise");
            LinkKind k0 = n.gss[g].links[s0->link].kind;
            LinkKind k1 = n.gss[g].links[s1->link].kind;
            auto is = [&](LinkKind a, LinkKind b) {
                return (k0 == a && k1 == b) || (k0 == b && k1 == a);
            };
            if (k0 == LinkKind::Ax || k1 == LinkKind::Ax) {
                ci.cls = CutClass::Ax;
            } else if (is(LinkKind::Tensor, LinkKind::Par)) {
                ci.cls = CutClass::TensorPar;
            } else if (is(LinkKind::One, LinkKind::Bot)) {
                ci.cls = CutClass::OneBot;
            } else if (is(LinkKind::Bang, LinkKind::Why)) {
                ci.cls = CutClass::BangWhy;
                const Link& why = n.gss[g].links[k0 == LinkKind::Why ? s0->link : s1->link];
                ci.erasing = why.prem.empty();
                ci.linear = why.prem.size() == 1;
            } else {
                ci.cls = CutClass::Clash;
            }
            out.push_back(std::move(ci));
        }
    }
    std::sort(out.begin(), out.end(), [](const CutInfo& a, const CutInfo& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.path < b.path;
    });
    return out;
}

inline const CutInfo* find_cut(const std::vector<CutInfo>& cuts, const std::string& path) {
    for (const CutInfo& c : cuts)
        if (c.path == path) return &c;
    return nullptr;
}

// Non-erasing, non-clash cuts of minimal depth among such.
inline std::vector<CutInfo> stratified_nonerasing_cuts(const Net& n) {
    std::vector<CutInfo> all = classify_cuts(n), out;
    int best = -1;
    for (const CutInfo& c : all) {
        if (c.cls == CutClass::Clash || c.erasing) continue;
        if (best < 0 || c.depth < best) best = c.depth;
    }
    for (const CutInfo& c : all)
        if (c.cls != CutClass::Clash && !c.erasing && c.depth == best) out.push_back(c);
    return out;
}

// When every cut is erasing: the erasing cuts of maximal depth.  Otherwise
// empty — the notion only drives reduction of nets with erasing cuts alone.
inline std::vector<CutInfo> antistratified_erasing_cuts(const Net& n) {
    std::vector<CutInfo> all = classify_cuts(n), out;
    for (const CutInfo& c : all)
        if (!c.erasing) return {};
    int best = -1;
    for (const CutInfo& c : all) best = std::max(best, c.depth);
    for (const CutInfo& c : all)
        if (c.depth == best) out.push_back(c);
    return out;
}

inline bool has_clash(const Net& n) {
    for (const CutInfo& c : classify_cuts(n))
        if (c.cls == CutClass::Clash) return true;
    return false;
}

// Only erasing cuts left (in particular no clashes); cut-free counts.
inline bool ne_normal(const Net& n) {
    for (const CutInfo& c : classify_cuts(n))
        if (!c.erasing) return false;
    return true;
}

inline bool cut_free(const Net& n) { return classify_cuts(n).empty(); }

} // namespace mellnet
