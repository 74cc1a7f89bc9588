#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "net.hpp"
#include "typing.hpp"

namespace mellnet {

// ---------------------------------------------------------------------------
// Seeded generator of typed cut-free net pairs.  Each pair realizes a random
// formula A and its dual: the left net proves  |- Gamma, A  and the right net
// proves  |- Delta, A~ , both built bottom-up as sequent derivations (axiom,
// unit, tensor, par, promotion, dereliction, contraction) and then read as
// untyped nets.  Cutting the two distinguished conclusions therefore yields a
// typed net, so the pair is strongly normalizing and exercises the semantic
// length predictor against the syntactic oracle.
//
// Shape guarantees, by construction:
//   - both components are cut-free and pass the local typing judgment;
//   - every why-link has arity 1 or 2 (no weakenings anywhere);
//   - boxes contain closed single-conclusion realizers with no why-links,
//     so interpretation budgets with two copies per box suffice;
//   - box nesting depth is bounded by the formula depth bound.
//
// Determinism: all randomness flows through one mt19937 seeded explicitly;
// the same seed and index always reproduce the same pair, byte for byte.
// ---------------------------------------------------------------------------

struct GenPair {
    std::string name;
    uint32_t seed = 0;
    int index = 0;
    std::string formula;     // the cut formula A, printed
    std::string left_text;   // net proving  |- Gamma, A
    std::string right_text;  // net proving  |- Delta, A~
    std::string cut_text;    // both components plus (cut cl cr)
    std::string cl, cr;      // distinguished conclusion edges
    std::map<std::string, FormulaPtr> edge_types;  // by edge name, both sides
};

// Rebuild a path-qualified typing for a parsed net whose edge names are
// globally unique, from the generator's by-name record.
inline TypeMap typemap_by_name(const Net& n, const std::map<std::string, FormulaPtr>& by_name) {
    TypeMap tm;
    for (size_t g = 0; g < n.gss.size(); g++) {
        std::set<std::string> edges;
        for (const Link& l : n.gss[g].links) {
            edges.insert(l.prem.begin(), l.prem.end());
            edges.insert(l.concl.begin(), l.concl.end());
        }
        for (const std::string& e : edges) {
            if (edge_is_structural(n, (int)g, e)) continue;
            auto it = by_name.find(e);
            if (it == by_name.end()) throw NetError("no recorded type for edge " + e);
            tm[type_key(n, (int)g, e)] = it->second;
        }
    }
    return tm;
}

class PairGenerator {
  public:
    explicit PairGenerator(uint32_t seed, int formula_depth = 3, int max_links = 34)
        : seed_(seed), depth_(formula_depth), max_links_(max_links), rng_(seed) {}

    GenPair next() {
        GenPair best;
        for (int attempt = 0; attempt < 50; attempt++) {
            edge_counter_ = 0;
            var_counter_ = 0;
            link_count_ = 0;
            types_.clear();

            FormulaPtr a = rand_connective(depth_);
            Side l = side(a);
            Side r = side(dual(a));

            best.seed = seed_;
            best.index = index_;
            best.name = "pair" + two_digits(index_);
            best.formula = formula_to_string(a);
            best.cl = l.concl;
            best.cr = r.concl;
            best.left_text = net_text(l);
            best.right_text = net_text(r);
            best.cut_text = cut_text(l, r);
            best.edge_types = types_;
            if (link_count_ <= max_links_) break;
        }
        index_++;
        return best;
    }

  private:
    struct Proof {
        std::vector<std::string> links;
        std::vector<std::pair<std::string, FormulaPtr>> concls;
    };
    struct Side {
        Proof p;
        std::string concl;  // distinguished conclusion edge
    };

    uint32_t seed_;
    int depth_;
    int max_links_;
    std::mt19937 rng_;
    int index_ = 0;
    int edge_counter_ = 0;
    int var_counter_ = 0;
    int link_count_ = 0;
    std::map<std::string, FormulaPtr> types_;

    static std::string two_digits(int i) {
        std::string s = std::to_string(i);
        return s.size() < 2 ? "0" + s : s;
    }

    int pick(int n) { return (int)(rng_() % (uint32_t)n); }

    // weighted choice among options 0..k-1
    int weighted(const std::vector<int>& w) {
        int total = 0;
        for (int x : w) total += x;
        int r = pick(total);
        for (size_t i = 0; i < w.size(); i++) {
            r -= w[i];
            if (r < 0) return (int)i;
        }
        return (int)w.size() - 1;
    }

    std::string fresh() { return "e" + std::to_string(edge_counter_++); }
    std::string fresh_var() { return "x" + std::to_string(var_counter_++); }

    std::string edge(const std::string& e, const FormulaPtr& f) {
        types_[e] = f;
        return e;
    }

    void emit(Proof& p, std::string link) {
        p.links.push_back(std::move(link));
        link_count_++;
    }

    // --- formula sampling ---------------------------------------------------

    // closed formulas admit a single-conclusion cut-free realizer, suitable
    // as box contents:  C ::= 1 | C (x) C | X par X~ | !C
    FormulaPtr rand_closed(int d) {
        std::vector<int> w = {2, 3};
        if (d > 0) {
            w.push_back(3);
            w.push_back(3);
        }
        switch (weighted(w)) {
            case 0: return f_one();
            case 1: {
                std::string x = fresh_var();
                return f_par(f_var(x), f_covar(x));
            }
            case 2: return f_tensor(rand_closed(d - 1), rand_closed(d - 1));
            default: return f_bang(rand_closed(d - 1));
        }
    }

    // the cut formula itself is always a connective so no pair is a bare
    // axiom or unit against its mirror
    FormulaPtr rand_connective(int d) {
        switch (weighted({3, 3, 2, 2})) {
            case 0: return f_tensor(rand_formula(d - 1), rand_formula(d - 1));
            case 1: return f_par(rand_formula(d - 1), rand_formula(d - 1));
            case 2: return f_bang(rand_closed(d - 1));
            default: return f_why(dual(rand_closed(d - 1)));
        }
    }

    FormulaPtr rand_formula(int d) {
        std::vector<int> w = {1, 1, 2, 2};
        if (d > 0) {
            w.push_back(3);
            w.push_back(3);
            w.push_back(2);
            w.push_back(2);
        }
        switch (weighted(w)) {
            case 0: return f_one();
            case 1: return f_bot();
            case 2: return f_var(fresh_var());
            case 3: return f_covar(fresh_var());
            case 4: return f_tensor(rand_formula(d - 1), rand_formula(d - 1));
            case 5: return f_par(rand_formula(d - 1), rand_formula(d - 1));
            case 6: return f_bang(rand_closed(d - 1));
            default: return f_why(dual(rand_closed(d - 1)));
        }
    }

    // --- derivation combinators ---------------------------------------------

    Proof one_proof() {
        Proof p;
        std::string e = edge(fresh(), f_one());
        emit(p, "(one " + e + ")");
        p.concls.push_back({e, f_one()});
        return p;
    }

    // the bot rule extends an existing derivation by one conclusion
    std::string add_bot(Proof& p) {
        std::string b = edge(fresh(), f_bot());
        emit(p, "(bot " + b + ")");
        p.concls.push_back({b, f_bot()});
        return b;
    }

    static void drop_concl(Proof& p, const std::string& name) {
        for (size_t i = 0; i < p.concls.size(); i++)
            if (p.concls[i].first == name) {
                p.concls.erase(p.concls.begin() + (long)i);
                return;
            }
        throw NetError("generator lost track of conclusion " + name);
    }

    // Join two derivations into one by tensoring a spare conclusion of each;
    // conclusions named in keep stay available.  Spares are created with the
    // bot rule when a side has none.
    Proof join(Proof p, const std::vector<std::string>& keep, Proof q) {
        auto spare = [&](Proof& pr) -> std::string {
            std::vector<std::string> cands;
            for (const auto& [name, f] : pr.concls) {
                bool kept = false;
                for (const std::string& k : keep) kept = kept || k == name;
                if (!kept) cands.push_back(name);
            }
            if (cands.empty()) return add_bot(pr);
            return cands[pick((int)cands.size())];
        };
        std::string a = spare(p), b = spare(q);
        FormulaPtr fa = types_.at(a), fb = types_.at(b);
        Proof out;
        out.links = std::move(p.links);
        out.links.insert(out.links.end(), q.links.begin(), q.links.end());
        out.concls = std::move(p.concls);
        out.concls.insert(out.concls.end(), q.concls.begin(), q.concls.end());
        drop_concl(out, a);
        drop_concl(out, b);
        std::string t = edge(fresh(), f_tensor(fa, fb));
        emit(out, "(tensor " + a + " " + b + " -> " + t + ")");
        out.concls.push_back({t, f_tensor(fa, fb)});
        return out;
    }

    // single-conclusion realizer of a closed formula (box contents)
    Proof realize_closed(const FormulaPtr& c) {
        switch (c->kind) {
            case FormulaKind::One:
                return one_proof();
            case FormulaKind::Tensor: {
                Proof l = realize_closed(c->left);
                Proof r = realize_closed(c->right);
                std::string a = l.concls.at(0).first, b = r.concls.at(0).first;
                Proof out;
                out.links = std::move(l.links);
                out.links.insert(out.links.end(), r.links.begin(), r.links.end());
                std::string t = edge(fresh(), c);
                emit(out, "(tensor " + a + " " + b + " -> " + t + ")");
                out.concls.push_back({t, c});
                return out;
            }
            case FormulaKind::Par: {
                // the X par X~ realizer: one axiom folded by a par
                Proof out;
                std::string a = edge(fresh(), c->left);
                std::string b = edge(fresh(), c->right);
                emit(out, "(ax " + a + " " + b + ")");
                std::string t = edge(fresh(), c);
                emit(out, "(par " + a + " " + b + " -> " + t + ")");
                out.concls.push_back({t, c});
                return out;
            }
            case FormulaKind::Bang:
                return promote(c);
            default:
                throw NetError("formula " + formula_to_string(c) + " is not closed");
        }
    }

    // promotion of a closed realizer: a box with no auxiliary doors
    Proof promote(const FormulaPtr& bang_f) {
        Proof inner = realize_closed(bang_f->left);
        std::string c = inner.concls.at(0).first;
        std::string body;
        for (const std::string& l : inner.links) body += " " + l;
        Proof out;
        std::string m = edge(fresh(), bang_f);
        emit(out, "(bang -> " + m + " (box (net (concl " + c + ")" + body + ")))");
        out.concls.push_back({m, bang_f});
        return out;
    }

    Side side(const FormulaPtr& a) {
        switch (a->kind) {
            case FormulaKind::One: {
                Proof p = one_proof();
                std::string e = p.concls.at(0).first;
                return {std::move(p), e};
            }
            case FormulaKind::Bot: {
                Proof p = one_proof();
                std::string b = add_bot(p);
                return {std::move(p), b};
            }
            case FormulaKind::Var:
            case FormulaKind::CoVar: {
                FormulaPtr v = a->kind == FormulaKind::Var ? a : dual(a);
                Proof p;
                std::string pos = edge(fresh(), v);
                std::string neg = edge(fresh(), dual(v));
                emit(p, "(ax " + pos + " " + neg + ")");
                p.concls.push_back({pos, v});
                p.concls.push_back({neg, dual(v)});
                return {std::move(p), a->kind == FormulaKind::Var ? pos : neg};
            }
            case FormulaKind::Tensor: {
                Side l = side(a->left), r = side(a->right);
                Proof out;
                out.links = std::move(l.p.links);
                out.links.insert(out.links.end(), r.p.links.begin(), r.p.links.end());
                out.concls = std::move(l.p.concls);
                out.concls.insert(out.concls.end(), r.p.concls.begin(), r.p.concls.end());
                drop_concl(out, l.concl);
                drop_concl(out, r.concl);
                std::string t = edge(fresh(), a);
                emit(out, "(tensor " + l.concl + " " + r.concl + " -> " + t + ")");
                out.concls.push_back({t, a});
                return {std::move(out), t};
            }
            case FormulaKind::Par: {
                Side l = side(a->left), r = side(a->right);
                Proof joined = join(std::move(l.p), {l.concl, r.concl}, std::move(r.p));
                drop_concl(joined, l.concl);
                drop_concl(joined, r.concl);
                std::string t = edge(fresh(), a);
                emit(joined, "(par " + l.concl + " " + r.concl + " -> " + t + ")");
                joined.concls.push_back({t, a});
                return {std::move(joined), t};
            }
            case FormulaKind::Bang: {
                Proof p = promote(a);
                std::string m = p.concls.at(0).first;
                return {std::move(p), m};
            }
            case FormulaKind::Why: {
                // dereliction (k = 1) or dereliction + contraction (k = 2)
                int k = 1 + pick(2);
                std::vector<Side> parts;
                for (int i = 0; i < k; i++) parts.push_back(side(a->left));
                Proof acc = std::move(parts[0].p);
                std::vector<std::string> keep = {parts[0].concl};
                for (int i = 1; i < k; i++) {
                    keep.push_back(parts[i].concl);
                    acc = join(std::move(acc), keep, std::move(parts[i].p));
                }
                std::string prems;
                for (int i = 0; i < k; i++) {
                    std::string s = fresh();  // structural, carries no formula
                    emit(acc, "(flat " + parts[i].concl + " -> " + s + ")");
                    drop_concl(acc, parts[i].concl);
                    prems += s + " ";
                }
                std::string w = edge(fresh(), a);
                emit(acc, "(why " + prems + "-> " + w + ")");
                acc.concls.push_back({w, a});
                return {std::move(acc), w};
            }
        }
        throw NetError("bad formula kind");
    }

    static std::string net_text(const Side& s) {
        std::string concls = s.concl;
        for (const auto& [name, f] : s.p.concls)
            if (name != s.concl) concls += " " + name;
        std::string out = "(net (concl " + concls + ")";
        for (const std::string& l : s.p.links) out += " " + l;
        out += ")";
        return out;
    }

    std::string cut_text(const Side& l, const Side& r) const {
        std::string concls;
        for (const auto& [name, f] : l.p.concls)
            if (name != l.concl) concls += (concls.empty() ? "" : " ") + name;
        for (const auto& [name, f] : r.p.concls)
            if (name != r.concl) concls += (concls.empty() ? "" : " ") + name;
        std::string out = "(net (concl " + concls + ")";
        for (const std::string& x : l.p.links) out += " " + x;
        for (const std::string& x : r.p.links) out += " " + x;
        out += " (cut " + l.concl + " " + r.concl + "))";
        return out;
    }
};

inline std::vector<GenPair> generate_pairs(uint32_t seed, int count, int formula_depth = 3) {
    PairGenerator g(seed, formula_depth);
    std::vector<GenPair> out;
    for (int i = 0; i < count; i++) out.push_back(g.next());
    return out;
}

}  // namespace mellnet
