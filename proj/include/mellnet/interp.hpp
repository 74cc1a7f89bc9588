#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "net.hpp"
#include "point.hpp"
#include "unify.hpp"

namespace mellnet {

// ---------------------------------------------------------------------------
// Interpretation points: the observable footprint of an smbis experiment --
// its result vector, its weakening multiset, and the size the quantitative
// lemmas minimize over.
// ---------------------------------------------------------------------------

struct InterpPoint {
    std::vector<Point> result;
    std::vector<Point> w;  // canonically sorted
    long long s_bis = 0;
};

inline InterpPoint make_interp(std::vector<Point> result, std::vector<Point> w) {
    std::sort(w.begin(), w.end());
    InterpPoint p{std::move(result), std::move(w), 0};
    p.s_bis = sbis_point_size(p.result, p.w);
    return p;
}

inline std::string show(const InterpPoint& p) {
    std::string out = "(point (result";
    for (const Point& x : p.result) out += " " + show(x);
    out += ") (w";
    for (const Point& x : p.w) out += " " + show(x);
    out += ") (sbis " + std::to_string(p.s_bis) + "))";
    return out;
}

inline bool operator==(const InterpPoint& a, const InterpPoint& b) {
    return a.result == b.result && a.w == b.w;
}
inline bool operator<(const InterpPoint& a, const InterpPoint& b) {
    if (a.result != b.result) return a.result < b.result;
    return a.w < b.w;
}

inline InterpPoint interp_of_experiment(const Net& n, const Experiment& e) {
    return make_interp(exp_result(n, e), exp_weakening(n, 0, e));
}

inline InterpPoint apply_subst(const Subst& s, const InterpPoint& p) {
    std::vector<Point> result, w;
    for (const Point& x : p.result) result.push_back(apply_subst(s, x));
    for (const Point& x : p.w) w.push_back(apply_subst(s, x));
    return make_interp(std::move(result), std::move(w));
}

// ---------------------------------------------------------------------------
// Canonical atom renaming, so interpretation slices can be compared as sets
// modulo the arbitrary fresh names the enumerator picked.
// ---------------------------------------------------------------------------

namespace detail {

inline Point rename_atoms(const Point& x, const std::map<std::string, std::string>& m) {
    switch (x.tag) {
        case Point::Tag::Star:
            return x;
        case Point::Tag::Atom: {
            auto it = m.find(x.name);
            return it == m.end() ? x : Point::atom(x.pol, it->second);
        }
        case Point::Tag::Pair:
            return Point::pair(x.pol, rename_atoms(x.parts[0], m), rename_atoms(x.parts[1], m));
        case Point::Tag::Bag: {
            std::vector<Point> parts;
            for (const Point& p : x.parts) parts.push_back(rename_atoms(p, m));
            return Point::bag(x.pol, std::move(parts));
        }
    }
    return x;
}

inline std::string render_renamed(const std::vector<Point>& xs,
                                  const std::map<std::string, std::string>& m) {
    std::string out;
    for (const Point& x : xs) out += show(rename_atoms(x, m)) + " ";
    return out;
}

} // namespace detail

// The lexicographically least serialization over all bijective renamings of
// the point's atoms onto r0, r1, ...  Exact up to 6 atoms (720 candidates);
// beyond that a first-occurrence pass is used, which is stable in practice.
inline std::vector<Point> canonical_atoms(const std::vector<Point>& xs) {
    std::set<std::string> atom_set;
    collect_atoms(xs, atom_set);
    if (atom_set.empty()) return xs;
    std::vector<std::string> atoms(atom_set.begin(), atom_set.end());

    auto apply = [&](const std::vector<std::string>& order) {
        std::map<std::string, std::string> m;
        for (size_t i = 0; i < order.size(); i++) m[order[i]] = "r" + std::to_string(i);
        std::vector<Point> out;
        for (const Point& x : xs) out.push_back(detail::rename_atoms(x, m));
        return out;
    };

    if (atoms.size() > 6) {
        // first-occurrence order over the serialized traversal
        std::string flat;
        for (const Point& x : xs) flat += show(x) + " ";
        std::stable_sort(atoms.begin(), atoms.end(), [&](const auto& a, const auto& b) {
            return flat.find(" " + a + ")") < flat.find(" " + b + ")");
        });
        return apply(atoms);
    }

    std::sort(atoms.begin(), atoms.end());
    std::vector<Point> best;
    std::string best_key;
    do {
        std::vector<Point> cand = apply(atoms);
        std::string key;
        for (const Point& x : cand) key += show(x) + " ";
        if (best_key.empty() || key < best_key) {
            best_key = key;
            best = cand;
        }
    } while (std::next_permutation(atoms.begin(), atoms.end()));
    return best;
}

inline InterpPoint canonical_atoms(const InterpPoint& p) {
    std::vector<Point> merged = p.result;
    merged.insert(merged.end(), p.w.begin(), p.w.end());
    std::vector<Point> renamed = canonical_atoms(merged);
    std::vector<Point> result(renamed.begin(), renamed.begin() + p.result.size());
    std::vector<Point> w(renamed.begin() + p.result.size(), renamed.end());
    return make_interp(std::move(result), std::move(w));
}

// Prefix every atom name; used to keep two nets' interpretations disjoint.
inline InterpPoint prefix_atoms(const InterpPoint& p, const std::string& prefix) {
    std::set<std::string> atom_set;
    collect_atoms(p.result, atom_set);
    collect_atoms(p.w, atom_set);
    std::map<std::string, std::string> m;
    for (const std::string& a : atom_set) m[a] = prefix + a;
    std::vector<Point> result, w;
    for (const Point& x : p.result) result.push_back(detail::rename_atoms(x, m));
    for (const Point& x : p.w) w.push_back(detail::rename_atoms(x, m));
    return make_interp(std::move(result), std::move(w));
}

// ---------------------------------------------------------------------------
// Budgeted interpretation slices.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<Point>> sm_slice(const Net& n, const Budget& b,
                                                bool atomic = true, bool* truncated = nullptr) {
    std::vector<std::vector<Point>> out;
    for (const Experiment& e : enumerate_experiments(n, ExpMode::Sm, atomic, b, truncated))
        out.push_back(exp_result(n, e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<InterpPoint> smbis_slice(const Net& n, const Budget& b,
                                            bool atomic = true, bool* truncated = nullptr) {
    std::vector<InterpPoint> out;
    for (const Experiment& e : enumerate_experiments(n, ExpMode::SmBis, atomic, b, truncated))
        out.push_back(interp_of_experiment(n, e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Slices rendered comparable across different fresh-name choices.
inline std::set<std::string> canonical_slice_key(const std::vector<std::vector<Point>>& slice) {
    std::set<std::string> out;
    for (const auto& r : slice) {
        std::string key;
        for (const Point& x : canonical_atoms(r)) key += show(x) + " ";
        out.insert(key);
    }
    return out;
}

inline std::set<std::string> canonical_slice_key(const std::vector<InterpPoint>& slice) {
    std::set<std::string> out;
    for (const InterpPoint& p : slice) out.insert(show(canonical_atoms(p)));
    return out;
}

inline std::optional<long long> sbis_inf(const std::vector<InterpPoint>& slice) {
    std::optional<long long> best;
    for (const InterpPoint& p : slice)
        if (!best || p.s_bis < *best) best = p.s_bis;
    return best;
}

// ---------------------------------------------------------------------------
// atomic_part: the results no other member of the set maps onto through a
// substitution sending some atom to a non-atom.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<Point>> atomic_part(const std::vector<std::vector<Point>>& E) {
    std::vector<std::vector<Point>> out;
    for (const std::vector<Point>& r : E) {
        bool keep = true;
        for (const std::vector<Point>& r2 : E) {
            for (const Subst& s : match_points(r2, r)) {
                for (const auto& [name, value] : s.bind) {
                    if (value.tag != Point::Tag::Atom) {
                        keep = false;
                        break;
                    }
                }
                if (!keep) break;
            }
            if (!keep) break;
        }
        if (keep) out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The bag-splitting expansion turning one exhaustive sm result into smbis
// points: structure is copied, and each negative empty bag blossoms into a
// weakening candidate whose contents are charged to W.
// ---------------------------------------------------------------------------

struct FEntry {
    Point y;
    std::vector<Point> w;
};

inline std::vector<FEntry> expand_F_point(const Point& x, const Budget& b) {
    switch (x.tag) {
        case Point::Tag::Star:
        case Point::Tag::Atom:
            return {{x, {}}};
        case Point::Tag::Pair: {
            std::vector<FEntry> out;
            for (const FEntry& l : expand_F_point(x.parts[0], b))
                for (const FEntry& r : expand_F_point(x.parts[1], b)) {
                    std::vector<Point> w = l.w;
                    w.insert(w.end(), r.w.begin(), r.w.end());
                    out.push_back({Point::pair(x.pol, l.y, r.y), std::move(w)});
                }
            return out;
        }
        case Point::Tag::Bag: {
            if (x.parts.empty()) {
                if (x.pol == Pol::Plus)
                    throw NetError("expansion undefined on the non-exhaustive point " + show(x));
                std::vector<FEntry> out;
                for (const Point& cand : b.weakening_candidates)
                    out.push_back({cand, cand.parts});
                return out;
            }
            std::vector<FEntry> acc = {{Point::bag(x.pol, {}), {}}};
            for (const Point& part : x.parts) {
                std::vector<FEntry> next;
                for (const FEntry& a : acc)
                    for (const FEntry& p : expand_F_point(part, b)) {
                        std::vector<Point> parts = a.y.parts;
                        parts.push_back(p.y);
                        std::vector<Point> w = a.w;
                        w.insert(w.end(), p.w.begin(), p.w.end());
                        next.push_back({Point::bag(x.pol, std::move(parts)), std::move(w)});
                    }
                acc = std::move(next);
            }
            return acc;
        }
    }
    return {};
}

inline std::vector<InterpPoint> expand_F(const std::vector<Point>& xs, const Budget& b) {
    if (!exhaustive(xs))
        throw NetError("expansion undefined on non-exhaustive results");
    std::vector<InterpPoint> acc = {make_interp({}, {})};
    for (const Point& x : xs) {
        std::vector<InterpPoint> next;
        for (const InterpPoint& a : acc)
            for (const FEntry& f : expand_F_point(x, b)) {
                std::vector<Point> result = a.result;
                result.push_back(f.y);
                std::vector<Point> w = a.w;
                w.insert(w.end(), f.w.begin(), f.w.end());
                next.push_back(make_interp(std::move(result), std::move(w)));
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

// ---------------------------------------------------------------------------
// Reconstruction of the smbis interpretation from the sm one (cut-free nets):
// expand the exhaustive atomic results, then optionally close under a given
// list of substitutions.
// ---------------------------------------------------------------------------

inline std::vector<InterpPoint> smbis_from_sm(const std::vector<std::vector<Point>>& E,
                                              const Budget& b,
                                              const std::vector<Subst>& sigmas = {}) {
    std::vector<InterpPoint> out;
    for (const std::vector<Point>& r : atomic_part(E)) {
        if (!exhaustive(r)) continue;
        for (const InterpPoint& p : expand_F(r, b)) out.push_back(p);
    }
    size_t base = out.size();
    for (const Subst& s : sigmas)
        for (size_t i = 0; i < base; i++) out.push_back(apply_subst(s, out[i]));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Composition over a cut: unify the chosen components dually, drop them, and
// merge the weakening multisets.  Callers keep atom namespaces disjoint.
// ---------------------------------------------------------------------------

inline std::vector<InterpPoint> compose_interpretations(const std::vector<InterpPoint>& I,
                                                        size_t ci,
                                                        const std::vector<InterpPoint>& I2,
                                                        size_t ci2,
                                                        bool* truncated = nullptr) {
    std::vector<InterpPoint> out;
    if (truncated) *truncated = false;
    for (const InterpPoint& z : I) {
        if (ci >= z.result.size()) throw NetError("cut component out of range");
        for (const InterpPoint& z2 : I2) {
            if (ci2 >= z2.result.size()) throw NetError("cut component out of range");
            bool tr = false;
            for (const Subst& s : unify_dual(z.result[ci], z2.result[ci2], 4096, &tr)) {
                std::vector<Point> result;
                for (size_t i = 0; i < z.result.size(); i++)
                    if (i != ci) result.push_back(apply_subst(s, z.result[i]));
                for (size_t i = 0; i < z2.result.size(); i++)
                    if (i != ci2) result.push_back(apply_subst(s, z2.result[i]));
                std::vector<Point> w;
                for (const Point& x : z.w) w.push_back(apply_subst(s, x));
                for (const Point& x : z2.w) w.push_back(apply_subst(s, x));
                out.push_back(make_interp(std::move(result), std::move(w)));
            }
            if (tr && truncated) *truncated = true;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace mellnet
