#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "net.hpp"
#include "point.hpp"
#include "unify.hpp"

namespace mellnet {

// ---------------------------------------------------------------------------
// Experiments: decorations of a net with web elements.  An experiment labels
// every edge of one level and assigns to every bang a multiset of experiments
// of its box.  The "sm" flavour allows empty box multisets and forces empty
// bags on weakenings; the "smbis" flavour demands at least one copy per box
// and lets weakenings carry any bag.
// ---------------------------------------------------------------------------

enum class ExpMode : uint8_t { Sm, SmBis };

inline const char* exp_mode_name(ExpMode m) { return m == ExpMode::Sm ? "sm" : "smbis"; }

inline ExpMode exp_mode_from_name(const std::string& s) {
    if (s == "sm") return ExpMode::Sm;
    if (s == "smbis") return ExpMode::SmBis;
    throw NetError("unknown experiment mode: " + s);
}

// Bounds making the infinite space of experiments enumerable.  Weakening
// candidates are the labels available to 0-ary why-links in smbis mode; each
// must be a negative bag.
struct Budget {
    int max_copies_per_box = 2;
    std::vector<Point> weakening_candidates = {
        Point::bag(Pol::Minus, {}),
        Point::bag(Pol::Minus, {Point::star(Pol::Plus)}),
    };
    long long max_total_sbis = 64;
};

struct Experiment {
    ExpMode mode = ExpMode::SmBis;
    std::map<std::string, Point> edge_labels;                    // this level's edges
    std::map<std::string, std::vector<Experiment>> box_assign;   // bang id -> copies
};

// Logical edges contributed by one level alone (each edge counted at its
// source conclusion port).
inline long long level_size(const Net& n, int gs) {
    long long total = 0;
    for (const Link& l : n.gss[gs].links)
        for (size_t p = 0; p < l.concl.size(); p++)
            if (!structural_src(l, p)) total++;
    return total;
}

inline std::set<std::string> level_edges(const Net& n, int gs) {
    std::set<std::string> out;
    for (const Link& l : n.gss[gs].links) {
        out.insert(l.prem.begin(), l.prem.end());
        out.insert(l.concl.begin(), l.concl.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Derived data: result, weakening multiset, sizes, serialization.
// ---------------------------------------------------------------------------

inline std::vector<Point> exp_weakening(const Net& n, int gs, const Experiment& e) {
    std::vector<Point> out;
    for (const Link& l : n.gss[gs].links) {
        if (l.kind == LinkKind::Why && l.prem.empty()) {
            const Point& lab = e.edge_labels.at(l.concl[0]);
            out.insert(out.end(), lab.parts.begin(), lab.parts.end());
        }
        if (l.kind == LinkKind::Bang) {
            const BoxRef& ref = n.box(gs, l.id);
            for (const Experiment& sub : e.box_assign.at(l.id)) {
                std::vector<Point> w = exp_weakening(n, ref.gs, sub);
                out.insert(out.end(), w.begin(), w.end());
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline long long exp_size(const Net& n, int gs, const Experiment& e) {
    long long total = level_size(n, gs);
    for (const auto& [bang, subs] : e.box_assign) {
        const BoxRef& ref = n.box(gs, bang);
        for (const Experiment& sub : subs) total += exp_size(n, ref.gs, sub);
    }
    return total;
}

inline long long exp_sbis(const Net& n, int gs, const Experiment& e) {
    return exp_size(n, gs, e) + 2 * (long long)exp_weakening(n, gs, e).size();
}

inline std::vector<Point> exp_result(const Net& n, const Experiment& e) {
    std::vector<Point> out;
    for (const std::string& c : n.gss[0].concls) out.push_back(e.edge_labels.at(c));
    return out;
}

inline std::string exp_show(const Experiment& e) {
    std::string out = "(exp";
    for (const auto& [edge, lab] : e.edge_labels) out += " (" + edge + " " + show(lab) + ")";
    for (const auto& [bang, subs] : e.box_assign) {
        std::vector<std::string> shown;
        for (const Experiment& s : subs) shown.push_back(exp_show(s));
        std::sort(shown.begin(), shown.end());
        out += " (" + bang;
        for (const std::string& s : shown) out += " " + s;
        out += ")";
    }
    out += ")";
    return out;
}

inline Experiment exp_apply_subst(const Subst& s, const Experiment& e) {
    Experiment out = e;
    for (auto& [edge, lab] : out.edge_labels) lab = apply_subst(s, lab);
    for (auto& [bang, subs] : out.box_assign)
        for (Experiment& sub : subs) sub = exp_apply_subst(s, sub);
    return out;
}

// ---------------------------------------------------------------------------
// Validator: does the decoration satisfy every local condition?  Used as an
// independent check on everything the enumerator emits.
// ---------------------------------------------------------------------------

inline bool exp_check(const Net& n, int gs, const Experiment& e, std::string* reason = nullptr) {
    auto fail = [&](const std::string& r) {
        if (reason) *reason = "level " + std::to_string(gs) + ": " + r;
        return false;
    };
    std::set<std::string> edges = level_edges(n, gs);
    for (const std::string& ed : edges)
        if (!e.edge_labels.count(ed)) return fail("edge " + ed + " unlabelled");
    if (e.edge_labels.size() != edges.size()) return fail("stray labels");

    auto lab = [&](const std::string& ed) -> const Point& { return e.edge_labels.at(ed); };
    auto minus_bag = [](const Point& x) {
        return x.tag == Point::Tag::Bag && x.pol == Pol::Minus;
    };

    for (const Link& l : n.gss[gs].links) {
        switch (l.kind) {
            case LinkKind::Ax:
                if (lab(l.concl[0]) != dual(lab(l.concl[1]))) return fail("ax " + l.id);
                break;
            case LinkKind::Cut:
                if (lab(l.prem[0]) != dual(lab(l.prem[1]))) return fail("cut " + l.id);
                break;
            case LinkKind::One:
                if (lab(l.concl[0]) != Point::star(Pol::Plus)) return fail("one " + l.id);
                break;
            case LinkKind::Bot:
                if (lab(l.concl[0]) != Point::star(Pol::Minus)) return fail("bot " + l.id);
                break;
            case LinkKind::Tensor:
                if (lab(l.concl[0]) != Point::pair(Pol::Plus, lab(l.prem[0]), lab(l.prem[1])))
                    return fail("tensor " + l.id);
                break;
            case LinkKind::Par:
                if (lab(l.concl[0]) != Point::pair(Pol::Minus, lab(l.prem[0]), lab(l.prem[1])))
                    return fail("par " + l.id);
                break;
            case LinkKind::Flat:
                if (lab(l.concl[0]) != Point::bag(Pol::Minus, {lab(l.prem[0])}))
                    return fail("flat " + l.id);
                break;
            case LinkKind::Why: {
                if (l.prem.empty()) {
                    const Point& c = lab(l.concl[0]);
                    if (!minus_bag(c)) return fail("weakening " + l.id + " label not a bag");
                    if (e.mode == ExpMode::Sm && !c.parts.empty())
                        return fail("sm weakening " + l.id + " not empty");
                    break;
                }
                std::vector<Point> sum;
                for (const std::string& p : l.prem) {
                    const Point& x = lab(p);
                    if (!minus_bag(x)) return fail("why premise " + p + " not a bag");
                    sum.insert(sum.end(), x.parts.begin(), x.parts.end());
                }
                if (lab(l.concl[0]) != Point::bag(Pol::Minus, std::move(sum)))
                    return fail("why " + l.id);
                break;
            }
            case LinkKind::Bang: {
                auto it = e.box_assign.find(l.id);
                if (it == e.box_assign.end()) return fail("bang " + l.id + " unassigned");
                const std::vector<Experiment>& subs = it->second;
                if (e.mode == ExpMode::SmBis && subs.empty())
                    return fail("smbis bang " + l.id + " with zero copies");
                const BoxRef& ref = n.box(gs, l.id);
                std::string box_logical;
                for (const std::string& c : n.gss[ref.gs].concls)
                    if (!edge_is_structural(n, ref.gs, c)) box_logical = c;
                std::vector<Point> results;
                for (const Experiment& sub : subs) {
                    if (sub.mode != e.mode) return fail("mode mismatch in box of " + l.id);
                    if (!exp_check(n, ref.gs, sub, reason)) return false;
                    results.push_back(sub.edge_labels.at(box_logical));
                }
                if (lab(l.concl[0]) != Point::bag(Pol::Plus, std::move(results)))
                    return fail("bang main " + l.id);
                for (size_t p = 1; p < l.concl.size(); p++) {
                    const std::string* be = ref.box_edge_for(l.concl[p]);
                    if (!be) return fail("bang " + l.id + " aux not bound");
                    std::vector<Point> sum;
                    for (const Experiment& sub : subs) {
                        const Point& x = sub.edge_labels.at(*be);
                        if (!minus_bag(x)) return fail("box conclusion " + *be + " not a bag");
                        sum.insert(sum.end(), x.parts.begin(), x.parts.end());
                    }
                    if (lab(l.concl[p]) != Point::bag(Pol::Minus, std::move(sum)))
                        return fail("bang aux " + l.concl[p]);
                }
                break;
            }
            case LinkKind::Pin:
                break;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Enumeration.  A skeleton fixes the number of copies of every box (at every
// depth, per copy) and the weakening labels; both sizes s and s' depend only
// on the skeleton, so the budget prunes before any labelling happens.  Cut
// equations are then solved by unification over fresh axiom atoms.
// ---------------------------------------------------------------------------

namespace detail {

struct LevelChoice {
    std::map<std::string, std::vector<LevelChoice>> copies;  // bang id -> per-copy
    std::map<std::string, int> weak;                         // 0-ary why id -> candidate
};

inline long long choice_size(const Net& n, int gs, const LevelChoice& c) {
    long long total = level_size(n, gs);
    for (const auto& [bang, subs] : c.copies) {
        const BoxRef& ref = n.box(gs, bang);
        for (const LevelChoice& sub : subs) total += choice_size(n, ref.gs, sub);
    }
    return total;
}

inline long long choice_wcard(const Net& n, int gs, const LevelChoice& c, const Budget& b) {
    long long total = 0;
    for (const auto& [why, idx] : c.weak)
        if (idx >= 0) total += (long long)b.weakening_candidates[idx].parts.size();
    for (const auto& [bang, subs] : c.copies) {
        const BoxRef& ref = n.box(gs, bang);
        for (const LevelChoice& sub : subs) total += choice_wcard(n, ref.gs, sub, b);
    }
    return total;
}

inline void level_choices(const Net& n, int gs, ExpMode mode, const Budget& b,
                          std::vector<LevelChoice>& out);

// Extend partials with every admissible assignment for link `li` onwards.
inline void choices_from(const Net& n, int gs, size_t li, ExpMode mode, const Budget& b,
                         LevelChoice cur, std::vector<LevelChoice>& out) {
    const auto& links = n.gss[gs].links;
    while (li < links.size() && links[li].kind != LinkKind::Bang &&
           !(links[li].kind == LinkKind::Why && links[li].prem.empty()))
        li++;
    if (li == links.size()) {
        out.push_back(std::move(cur));
        return;
    }
    const Link& l = links[li];
    if (l.kind == LinkKind::Why) {
        if (mode == ExpMode::Sm) {
            cur.weak[l.id] = -1;  // forced empty bag
            choices_from(n, gs, li + 1, mode, b, std::move(cur), out);
            return;
        }
        for (int i = 0; i < (int)b.weakening_candidates.size(); i++) {
            LevelChoice next = cur;
            next.weak[l.id] = i;
            choices_from(n, gs, li + 1, mode, b, std::move(next), out);
        }
        return;
    }
    const BoxRef& ref = n.box(gs, l.id);
    std::vector<LevelChoice> subs;
    level_choices(n, ref.gs, mode, b, subs);
    int kmin = mode == ExpMode::Sm ? 0 : 1;
    for (int k = kmin; k <= b.max_copies_per_box; k++) {
        // multisets of k box choices: non-decreasing index tuples
        std::vector<int> pick(k, 0);
        for (;;) {
            LevelChoice next = cur;
            auto& v = next.copies[l.id];
            for (int i = 0; i < k; i++) v.push_back(subs[pick[i]]);
            choices_from(n, gs, li + 1, mode, b, std::move(next), out);
            int j = k - 1;
            while (j >= 0 && pick[j] == (int)subs.size() - 1) j--;
            if (j < 0) break;
            pick[j]++;
            for (int i = j + 1; i < k; i++) pick[i] = pick[j];
        }
        if (subs.empty()) break;  // only k = 0 is realizable
    }
}

inline void level_choices(const Net& n, int gs, ExpMode mode, const Budget& b,
                          std::vector<LevelChoice>& out) {
    choices_from(n, gs, 0, mode, b, LevelChoice{}, out);
}

// Order the links of a level so that every link follows its premise sources.
inline void topo_visit(const Net& n, int gs, int li, std::vector<char>& state,
                       std::vector<int>& out) {
    if (state[li] == 2) return;
    if (state[li] == 1) throw NetError("level contains a premise cycle");
    state[li] = 1;
    for (const std::string& p : n.gss[gs].links[li].prem)
        if (auto s = n.src_of(gs, p)) topo_visit(n, gs, s->link, state, out);
    state[li] = 2;
    out.push_back(li);
}

inline std::vector<int> level_topo(const Net& n, int gs) {
    std::vector<int> out;
    std::vector<char> state(n.gss[gs].links.size(), 0);
    for (size_t li = 0; li < state.size(); li++)
        topo_visit(n, gs, (int)li, state, out);
    return out;
}

struct LabelCtx {
    int counter = 0;
    std::vector<std::pair<Point, Point>> eqs;  // cut premises: first = dual(second)
    const Budget* budget = nullptr;
};

inline Experiment label_level(const Net& n, int gs, const LevelChoice& c, ExpMode mode,
                              LabelCtx& cx) {
    Experiment e;
    e.mode = mode;
    for (int li : level_topo(n, gs)) {
        const Link& l = n.gss[gs].links[li];
        auto lab = [&](const std::string& ed) -> const Point& { return e.edge_labels.at(ed); };
        switch (l.kind) {
            case LinkKind::Ax: {
                std::string a = "g" + std::to_string(cx.counter++);
                e.edge_labels[l.concl[0]] = Point::atom(Pol::Plus, a);
                e.edge_labels[l.concl[1]] = Point::atom(Pol::Minus, a);
                break;
            }
            case LinkKind::One:
                e.edge_labels[l.concl[0]] = Point::star(Pol::Plus);
                break;
            case LinkKind::Bot:
                e.edge_labels[l.concl[0]] = Point::star(Pol::Minus);
                break;
            case LinkKind::Tensor:
                e.edge_labels[l.concl[0]] = Point::pair(Pol::Plus, lab(l.prem[0]), lab(l.prem[1]));
                break;
            case LinkKind::Par:
                e.edge_labels[l.concl[0]] = Point::pair(Pol::Minus, lab(l.prem[0]), lab(l.prem[1]));
                break;
            case LinkKind::Flat:
                e.edge_labels[l.concl[0]] = Point::bag(Pol::Minus, {lab(l.prem[0])});
                break;
            case LinkKind::Why: {
                if (l.prem.empty()) {
                    int idx = c.weak.at(l.id);
                    e.edge_labels[l.concl[0]] =
                        idx < 0 ? Point::bag(Pol::Minus, {}) : cx.budget->weakening_candidates[idx];
                    break;
                }
                std::vector<Point> sum;
                for (const std::string& p : l.prem) {
                    const Point& x = lab(p);
                    sum.insert(sum.end(), x.parts.begin(), x.parts.end());
                }
                e.edge_labels[l.concl[0]] = Point::bag(Pol::Minus, std::move(sum));
                break;
            }
            case LinkKind::Bang: {
                const BoxRef& ref = n.box(gs, l.id);
                std::string box_logical;
                for (const std::string& bc : n.gss[ref.gs].concls)
                    if (!edge_is_structural(n, ref.gs, bc)) box_logical = bc;
                auto& subs = e.box_assign[l.id];
                std::vector<Point> results;
                for (const LevelChoice& sc : c.copies.at(l.id)) {
                    subs.push_back(label_level(n, ref.gs, sc, mode, cx));
                    results.push_back(subs.back().edge_labels.at(box_logical));
                }
                e.edge_labels[l.concl[0]] = Point::bag(Pol::Plus, std::move(results));
                for (size_t p = 1; p < l.concl.size(); p++) {
                    const std::string* be = ref.box_edge_for(l.concl[p]);
                    std::vector<Point> sum;
                    for (const Experiment& sub : subs) {
                        const Point& x = sub.edge_labels.at(*be);
                        sum.insert(sum.end(), x.parts.begin(), x.parts.end());
                    }
                    e.edge_labels[l.concl[p]] = Point::bag(Pol::Minus, std::move(sum));
                }
                break;
            }
            case LinkKind::Cut:
                cx.eqs.push_back({lab(l.prem[0]), lab(l.prem[1])});
                break;
            case LinkKind::Pin:
                break;
        }
    }
    return e;
}

inline bool exp_axioms_atomic(const Net& n, int gs, const Experiment& e) {
    for (const Link& l : n.gss[gs].links) {
        if (l.kind == LinkKind::Ax)
            for (const std::string& c : l.concl)
                if (e.edge_labels.at(c).tag != Point::Tag::Atom) return false;
        if (l.kind == LinkKind::Bang) {
            const BoxRef& ref = n.box(gs, l.id);
            for (const Experiment& sub : e.box_assign.at(l.id))
                if (!exp_axioms_atomic(n, ref.gs, sub)) return false;
        }
    }
    return true;
}

} // namespace detail

// All experiments of the net within the budget, in a deterministic order.
// Axiom labels start as pairwise distinct fresh atoms; when the net has cuts,
// each skeleton's cut equations are solved by unification and one experiment
// is emitted per most-general solution.  With atomic = true, solutions whose
// axiom labels left the atom fragment are dropped.
inline std::vector<Experiment> enumerate_experiments(const Net& n, ExpMode mode, bool atomic,
                                                     const Budget& b,
                                                     bool* truncated = nullptr) {
    for (const Point& cand : b.weakening_candidates)
        if (cand.tag != Point::Tag::Bag || cand.pol != Pol::Minus)
            throw NetError("weakening candidate " + show(cand) + " is not a negative bag");
    if (truncated) *truncated = false;

    std::vector<detail::LevelChoice> skels;
    detail::level_choices(n, 0, mode, b, skels);

    std::vector<Experiment> out;
    std::set<std::string> seen;
    for (const detail::LevelChoice& skel : skels) {
        long long sbis = detail::choice_size(n, 0, skel) + 2 * detail::choice_wcard(n, 0, skel, b);
        if (sbis > b.max_total_sbis) {
            // the slice is incomplete: a skeleton exists past the size cap
            if (truncated) *truncated = true;
            continue;
        }
        detail::LabelCtx cx;
        cx.budget = &b;
        Experiment base = detail::label_level(n, 0, skel, mode, cx);
        std::vector<Subst> sols;
        if (cx.eqs.empty()) {
            sols.push_back(Subst{});
        } else {
            bool tr = false;
            sols = unify_dual_many(cx.eqs, 4096, &tr);
            if (tr && truncated) *truncated = true;
        }
        for (const Subst& s : sols) {
            Experiment e = s.bind.empty() ? base : exp_apply_subst(s, base);
            if (atomic && !detail::exp_axioms_atomic(n, 0, e)) continue;
            if (seen.insert(exp_show(e)).second) out.push_back(std::move(e));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The distinguished single-copy experiment of a net without non-erasing cuts:
// one copy per box, stars on axioms, empty bags on free weakenings, and a
// singleton bag dual to the facing bang on cut weakenings.  Its plain size is
// the net size and its weakening count is the number of cuts.
// ---------------------------------------------------------------------------

namespace detail {

inline Experiment one_experiment_level(const Net& n, int gs) {
    Experiment e;
    e.mode = ExpMode::SmBis;
    std::vector<std::pair<std::string, std::string>> cut_weak;  // why concl edge, other premise
    for (int li : level_topo(n, gs)) {
        const Link& l = n.gss[gs].links[li];
        auto lab = [&](const std::string& ed) -> const Point& { return e.edge_labels.at(ed); };
        switch (l.kind) {
            case LinkKind::Ax:
                e.edge_labels[l.concl[0]] = Point::star(Pol::Plus);
                e.edge_labels[l.concl[1]] = Point::star(Pol::Minus);
                break;
            case LinkKind::One:
                e.edge_labels[l.concl[0]] = Point::star(Pol::Plus);
                break;
            case LinkKind::Bot:
                e.edge_labels[l.concl[0]] = Point::star(Pol::Minus);
                break;
            case LinkKind::Tensor:
                e.edge_labels[l.concl[0]] = Point::pair(Pol::Plus, lab(l.prem[0]), lab(l.prem[1]));
                break;
            case LinkKind::Par:
                e.edge_labels[l.concl[0]] = Point::pair(Pol::Minus, lab(l.prem[0]), lab(l.prem[1]));
                break;
            case LinkKind::Flat:
                e.edge_labels[l.concl[0]] = Point::bag(Pol::Minus, {lab(l.prem[0])});
                break;
            case LinkKind::Why: {
                if (!l.prem.empty()) {
                    std::vector<Point> sum;
                    for (const std::string& p : l.prem) {
                        const Point& x = lab(p);
                        sum.insert(sum.end(), x.parts.begin(), x.parts.end());
                    }
                    e.edge_labels[l.concl[0]] = Point::bag(Pol::Minus, std::move(sum));
                    break;
                }
                auto dst = n.dst_of(gs, l.concl[0]);
                const Link* at = dst ? &n.gss[gs].links[dst->link] : nullptr;
                if (at && at->kind == LinkKind::Cut) {
                    cut_weak.push_back({l.concl[0], at->prem[at->prem[0] == l.concl[0] ? 1 : 0]});
                    e.edge_labels[l.concl[0]] = Point::bag(Pol::Minus, {});  // patched below
                } else {
                    e.edge_labels[l.concl[0]] = Point::bag(Pol::Minus, {});
                }
                break;
            }
            case LinkKind::Bang: {
                const BoxRef& ref = n.box(gs, l.id);
                std::string box_logical;
                for (const std::string& bc : n.gss[ref.gs].concls)
                    if (!edge_is_structural(n, ref.gs, bc)) box_logical = bc;
                auto& subs = e.box_assign[l.id];
                subs.push_back(one_experiment_level(n, ref.gs));
                e.edge_labels[l.concl[0]] =
                    Point::bag(Pol::Plus, {subs[0].edge_labels.at(box_logical)});
                for (size_t p = 1; p < l.concl.size(); p++) {
                    const std::string* be = ref.box_edge_for(l.concl[p]);
                    e.edge_labels[l.concl[p]] = subs[0].edge_labels.at(*be);
                }
                break;
            }
            case LinkKind::Cut: {
                auto s0 = n.src_of(gs, l.prem[0]);
                auto s1 = n.src_of(gs, l.prem[1]);
                const Link& k0 = n.gss[gs].links[s0->link];
                const Link& k1 = n.gss[gs].links[s1->link];
                bool erasing = (k0.kind == LinkKind::Why && k0.prem.empty()) ||
                               (k1.kind == LinkKind::Why && k1.prem.empty());
                if (!erasing)
                    throw NetError("cut " + l.id + " is not erasing; no single-copy experiment");
                break;
            }
            case LinkKind::Pin:
                break;
        }
    }
    for (const auto& [weak_edge, other] : cut_weak)
        e.edge_labels[weak_edge] = dual(e.edge_labels.at(other));
    return e;
}

} // namespace detail

inline Experiment one_experiment(const Net& n) {
    if (!ne_normal(n)) throw NetError("net has a non-erasing cut; no single-copy experiment");
    return detail::one_experiment_level(n, 0);
}

// ---------------------------------------------------------------------------
// Equivalence: same weakening cardinalities, same box multiplicities, and a
// bijection matching equivalent copies.
// ---------------------------------------------------------------------------

namespace detail {

inline bool equiv_match(const Net& n, int gs, const std::vector<Experiment>& a,
                        const std::vector<Experiment>& b, std::vector<char> used, size_t i);

inline bool exp_equiv_level(const Net& n, int gs, const Experiment& a, const Experiment& b) {
    for (const Link& l : n.gss[gs].links) {
        if (l.kind == LinkKind::Why && l.prem.empty()) {
            if (a.edge_labels.at(l.concl[0]).parts.size() !=
                b.edge_labels.at(l.concl[0]).parts.size())
                return false;
        }
        if (l.kind == LinkKind::Bang) {
            const auto& sa = a.box_assign.at(l.id);
            const auto& sb = b.box_assign.at(l.id);
            if (sa.size() != sb.size()) return false;
            if (!equiv_match(n, n.box(gs, l.id).gs, sa, sb,
                             std::vector<char>(sb.size(), 0), 0))
                return false;
        }
    }
    return true;
}

inline bool equiv_match(const Net& n, int gs, const std::vector<Experiment>& a,
                        const std::vector<Experiment>& b, std::vector<char> used, size_t i) {
    if (i == a.size()) return true;
    for (size_t j = 0; j < b.size(); j++) {
        if (used[j]) continue;
        if (exp_equiv_level(n, gs, a[i], b[j])) {
            used[j] = 1;
            if (equiv_match(n, gs, a, b, used, i + 1)) return true;
            used[j] = 0;
        }
    }
    return false;
}

} // namespace detail

inline bool experiments_equivalent(const Net& n, const Experiment& a, const Experiment& b) {
    if (a.mode != b.mode) throw NetError("experiments of different modes are never compared");
    if (a.mode != ExpMode::SmBis) throw NetError("equivalence is defined on smbis experiments");
    return detail::exp_equiv_level(n, 0, a, b);
}

}  // namespace mellnet
