#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "net.hpp"
#include "rewrite.hpp"
#include "sexpr.hpp"

namespace mellnet {

// ---------------------------------------------------------------------------
// Multiplicative-exponential linear-logic formulas:
//   A ::= 1 | bot | X | X^ | (tensor A A) | (par A A) | (! A) | (? A)
// Immutable trees shared by pointer; compare with formula_equal / operator==.
// ---------------------------------------------------------------------------

enum class FormulaKind : uint8_t { One, Bot, Var, CoVar, Tensor, Par, Bang, Why };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FormulaKind kind;
    std::string var;         // Var / CoVar only
    FormulaPtr left, right;  // right only for Tensor / Par
};

inline FormulaPtr f_one() { return std::make_shared<Formula>(Formula{FormulaKind::One, "", nullptr, nullptr}); }
inline FormulaPtr f_bot() { return std::make_shared<Formula>(Formula{FormulaKind::Bot, "", nullptr, nullptr}); }
inline FormulaPtr f_var(std::string x) { return std::make_shared<Formula>(Formula{FormulaKind::Var, std::move(x), nullptr, nullptr}); }
inline FormulaPtr f_covar(std::string x) { return std::make_shared<Formula>(Formula{FormulaKind::CoVar, std::move(x), nullptr, nullptr}); }
inline FormulaPtr f_tensor(FormulaPtr a, FormulaPtr b) { return std::make_shared<Formula>(Formula{FormulaKind::Tensor, "", std::move(a), std::move(b)}); }
inline FormulaPtr f_par(FormulaPtr a, FormulaPtr b) { return std::make_shared<Formula>(Formula{FormulaKind::Par, "", std::move(a), std::move(b)}); }
inline FormulaPtr f_bang(FormulaPtr a) { return std::make_shared<Formula>(Formula{FormulaKind::Bang, "", std::move(a), nullptr}); }
inline FormulaPtr f_why(FormulaPtr a) { return std::make_shared<Formula>(Formula{FormulaKind::Why, "", std::move(a), nullptr}); }

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->var != b->var) return false;
    return formula_equal(a->left, b->left) && formula_equal(a->right, b->right);
}

inline FormulaPtr dual(const FormulaPtr& a) {
    switch (a->kind) {
        case FormulaKind::One: return f_bot();
        case FormulaKind::Bot: return f_one();
        case FormulaKind::Var: return f_covar(a->var);
        case FormulaKind::CoVar: return f_var(a->var);
        case FormulaKind::Tensor: return f_par(dual(a->left), dual(a->right));
        case FormulaKind::Par: return f_tensor(dual(a->left), dual(a->right));
        case FormulaKind::Bang: return f_why(dual(a->left));
        case FormulaKind::Why: return f_bang(dual(a->left));
    }
    throw NetError("bad formula kind");
}

// Number of connective occurrences (1, bot, tensor, par, !, ?); variables
// contribute nothing, so a formula and its dual always have equal complexity.
inline int complexity(const FormulaPtr& a) {
    switch (a->kind) {
        case FormulaKind::One:
        case FormulaKind::Bot: return 1;
        case FormulaKind::Var:
        case FormulaKind::CoVar: return 0;
        case FormulaKind::Tensor:
        case FormulaKind::Par: return 1 + complexity(a->left) + complexity(a->right);
        case FormulaKind::Bang:
        case FormulaKind::Why: return 1 + complexity(a->left);
    }
    throw NetError("bad formula kind");
}

inline std::string formula_to_string(const FormulaPtr& a) {
    switch (a->kind) {
        case FormulaKind::One: return "1";
        case FormulaKind::Bot: return "bot";
        case FormulaKind::Var: return a->var;
        case FormulaKind::CoVar: return a->var + "^";
        case FormulaKind::Tensor: return "(tensor " + formula_to_string(a->left) + " " + formula_to_string(a->right) + ")";
        case FormulaKind::Par: return "(par " + formula_to_string(a->left) + " " + formula_to_string(a->right) + ")";
        case FormulaKind::Bang: return "(! " + formula_to_string(a->left) + ")";
        case FormulaKind::Why: return "(? " + formula_to_string(a->left) + ")";
    }
    throw NetError("bad formula kind");
}

inline FormulaPtr formula_from_sexp(const Sexp& e) {
    if (e.is_atom) {
        const std::string& t = e.atom;
        if (t == "1") return f_one();
        if (t == "bot") return f_bot();
        if (t.empty()) throw ParseError("empty formula atom", 0, 0);
        if (t.back() == '^') {
            if (t.size() == 1) throw ParseError("bare '^' is not a formula", 0, 0);
            return f_covar(t.substr(0, t.size() - 1));
        }
        return f_var(t);
    }
    std::string h = e.head();
    if (h == "tensor" && e.items.size() == 3)
        return f_tensor(formula_from_sexp(e.items[1]), formula_from_sexp(e.items[2]));
    if (h == "par" && e.items.size() == 3)
        return f_par(formula_from_sexp(e.items[1]), formula_from_sexp(e.items[2]));
    if (h == "!" && e.items.size() == 2) return f_bang(formula_from_sexp(e.items[1]));
    if (h == "?" && e.items.size() == 2) return f_why(formula_from_sexp(e.items[1]));
    throw ParseError("cannot read formula " + write_sexpr(e), 0, 0);
}

inline FormulaPtr parse_formula(const std::string& text) {
    return formula_from_sexp(parse_sexpr(text));
}

// ---------------------------------------------------------------------------
// Typing a net: a map from path-qualified logical edge ids ("bang0/e" inside
// the box of bang0, plain "e" at ground) to formulas.  Structural edges carry
// no formula of their own; the payload they transport is derived from the
// flat link at the top of their chain.
// ---------------------------------------------------------------------------

using TypeMap = std::map<std::string, FormulaPtr>;

inline std::string type_key(const Net& n, int gs, const std::string& edge) {
    std::string p = n.gs_path(gs);
    return p.empty() ? edge : p + "/" + edge;
}

inline FormulaPtr edge_type(const Net& n, int gs, const std::string& edge, const TypeMap& tm) {
    auto it = tm.find(type_key(n, gs, edge));
    return it == tm.end() ? nullptr : it->second;
}

// The formula A such that the structural edge carries the flattened form of A:
// conclusion of a flat whose premise is typed A, or an auxiliary conclusion of
// a bang bound to a box conclusion carrying A.  Null when underivable.
inline FormulaPtr structural_payload(const Net& n, int gs, const std::string& edge,
                                     const TypeMap& tm) {
    auto s = n.src_of(gs, edge);
    if (!s) return nullptr;
    const Link& l = n.gss[gs].links[s->link];
    if (l.kind == LinkKind::Flat) return edge_type(n, gs, l.prem[0], tm);
    if (l.kind == LinkKind::Bang && s->port >= 1) {
        const BoxRef& ref = n.box(gs, l.id);
        const std::string* be = ref.box_edge_for(edge);
        if (!be) return nullptr;
        return structural_payload(n, ref.gs, *be, tm);
    }
    return nullptr;
}

// True when the assignment types every logical edge and every link satisfies
// its local constraint: axioms and cuts join dual formulas, units are typed by
// their constants, tensor/par compose their premises, a why-link's conclusion
// is (? A) with every premise chain delivering payload A, and a bang's main
// conclusion is (! B) for B the type of its box's logical conclusion.
inline bool typecheck_mell(const Net& n, const TypeMap& tm) {
    for (size_t g = 0; g < n.gss.size(); g++) {
        std::set<std::string> edges;
        for (const Link& l : n.gss[g].links) {
            edges.insert(l.prem.begin(), l.prem.end());
            edges.insert(l.concl.begin(), l.concl.end());
        }
        for (const std::string& e : edges)
            if (!edge_is_structural(n, (int)g, e) && !edge_type(n, (int)g, e, tm))
                return false;

        for (const Link& l : n.gss[g].links) {
            auto t = [&](const std::string& e) { return edge_type(n, (int)g, e, tm); };
            switch (l.kind) {
                case LinkKind::Ax:
                    if (!formula_equal(t(l.concl[0]), dual(t(l.concl[1])))) return false;
                    break;
                case LinkKind::Cut:
                    if (!formula_equal(t(l.prem[0]), dual(t(l.prem[1])))) return false;
                    break;
                case LinkKind::One:
                    if (t(l.concl[0])->kind != FormulaKind::One) return false;
                    break;
                case LinkKind::Bot:
                    if (t(l.concl[0])->kind != FormulaKind::Bot) return false;
                    break;
                case LinkKind::Tensor:
                    if (!formula_equal(t(l.concl[0]), f_tensor(t(l.prem[0]), t(l.prem[1]))))
                        return false;
                    break;
                case LinkKind::Par:
                    if (!formula_equal(t(l.concl[0]), f_par(t(l.prem[0]), t(l.prem[1]))))
                        return false;
                    break;
                case LinkKind::Flat:
                    break;  // its premise is logical, covered by totality
                case LinkKind::Why: {
                    FormulaPtr c = t(l.concl[0]);
                    if (c->kind != FormulaKind::Why) return false;
                    for (const std::string& p : l.prem) {
                        FormulaPtr pay = structural_payload(n, (int)g, p, tm);
                        if (!pay || !formula_equal(pay, c->left)) return false;
                    }
                    break;
                }
                case LinkKind::Bang: {
                    const BoxRef& ref = n.box((int)g, l.id);
                    FormulaPtr inner;
                    for (const std::string& c : n.gss[ref.gs].concls)
                        if (!edge_is_structural(n, ref.gs, c)) inner = edge_type(n, ref.gs, c, tm);
                    if (!inner) return false;
                    if (!formula_equal(t(l.concl[0]), f_bang(inner))) return false;
                    for (size_t p = 1; p < l.concl.size(); p++)
                        if (!structural_payload(n, (int)g, l.concl[p], tm)) return false;
                    break;
                }
                case LinkKind::Pin:
                    break;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Cut-size measure: the multiset of premise complexities of every cut link at
// every depth.  The duality constraint makes the two premises agree.
// ---------------------------------------------------------------------------

inline std::multiset<int> cut_size_measure(const Net& n, const TypeMap& tm) {
    std::multiset<int> out;
    for (size_t g = 0; g < n.gss.size(); g++)
        for (const Link& l : n.gss[g].links) {
            if (l.kind != LinkKind::Cut) continue;
            FormulaPtr f = edge_type(n, (int)g, l.prem[0], tm);
            if (!f) throw NetError("cut " + l.id + " has an untyped premise " + l.prem[0]);
            out.insert(complexity(f));
        }
    return out;
}

// Strict multiset order over naturals: empty is below every non-empty
// multiset and below nothing else; otherwise compare the largest element,
// then its multiplicity, then recurse on what is left after dropping every
// occurrence of that largest element from both sides.
inline bool multiset_less(std::multiset<int> m, std::multiset<int> m2) {
    for (;;) {
        if (m.empty() && m2.empty()) return false;
        if (m.empty()) return true;
        if (m2.empty()) return false;
        int big = *m.rbegin(), big2 = *m2.rbegin();
        if (big != big2) return big < big2;
        size_t c = m.count(big), c2 = m2.count(big2);
        if (c != c2) return c < c2;
        m.erase(big);
        m2.erase(big2);
    }
}

// ---------------------------------------------------------------------------
// Carrying a typing across a reduction step: every surviving or copied edge
// keeps the formula of its ancestor.  Structural bookkeeping edges created by
// the step need no entry.
// ---------------------------------------------------------------------------

inline TypeMap transport_typing(const TypeMap& tm, const ReductionStep& st) {
    TypeMap out;
    for (const auto& [old_id, f] : tm) {
        auto it = st.edge_residues.find(old_id);
        if (it == st.edge_residues.end()) continue;
        for (const std::string& nid : it->second) {
            auto [pos, inserted] = out.emplace(nid, f);
            if (!inserted && !formula_equal(pos->second, f))
                throw NetError("conflicting types transported onto edge " + nid);
        }
    }
    return out;
}

// Steps whose cut is not of bang/why type, or is linear (one-premise why), or
// cuts a bang whose box subtree is cut-free, strictly shrink the measure.
inline bool measure_step_eligible(const Net& n, const CutInfo& ci) {
    if (ci.cls == CutClass::Clash) return false;
    if (ci.cls != CutClass::BangWhy) return true;
    if (ci.linear) return true;
    const Link* cut = n.find_link(ci.gs, ci.id);
    for (int p = 0; p < 2; p++) {
        auto s = n.src_of(ci.gs, cut->prem[p]);
        const Link& sl = n.gss[ci.gs].links[s->link];
        if (sl.kind == LinkKind::Bang && s->port == 0) {
            for (int g : n.subtree(n.box(ci.gs, sl.id).gs))
                for (const Link& l : n.gss[g].links)
                    if (l.kind == LinkKind::Cut) return false;
            return true;
        }
    }
    throw NetError("cut " + ci.id + " classified bang/why without a bang premise");
}

}  // namespace mellnet
