#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mellnet/point.hpp"

namespace mellnet {

// Atom substitution.  Bindings are kept fully resolved: no right-hand side
// mentions a bound atom, so application never needs iteration.
struct Subst {
    std::map<std::string, Point> bind;

    bool bound(const std::string& n) const { return bind.count(n) != 0; }

    std::string show() const {
        std::string out = "{";
        bool first = true;
        for (const auto& [k, v] : bind) {
            if (!first) out += ' ';
            first = false;
            out += k;
            out += "=";
            out += mellnet::show(v);
        }
        out += '}';
        return out;
    }
};

inline Point apply_subst(const Subst& s, const Point& x) {
    if (x.tag == Point::Tag::Atom) {
        auto it = s.bind.find(x.name);
        if (it == s.bind.end()) return x;
        return x.pol == Pol::Plus ? it->second : dual(it->second);
    }
    Point y = x;
    for (size_t i = 0; i < y.parts.size(); i++) y.parts[i] = apply_subst(s, x.parts[i]);
    if (y.tag == Point::Tag::Bag) std::sort(y.parts.begin(), y.parts.end());
    return y;
}

inline std::vector<Point> apply_subst(const Subst& s, const std::vector<Point>& xs) {
    std::vector<Point> out;
    out.reserve(xs.size());
    for (const Point& x : xs) out.push_back(apply_subst(s, x));
    return out;
}

namespace detail {

// Install n := v, rewriting existing bindings so the resolved invariant holds.
// Returns false when the occurs check fails.
inline bool subst_bind(Subst& s, const std::string& n, Point v) {
    v = apply_subst(s, v);
    if (contains_atom(v, n)) return false;
    Subst one;
    one.bind.emplace(n, v);
    for (auto& [k, rhs] : s.bind) rhs = apply_subst(one, rhs);
    s.bind.emplace(n, std::move(v));
    return true;
}

struct DualLimits {
    size_t max_solutions;
    long long steps_left;
    bool truncated = false;
};

// Solve the goal list left to right; each goal demands first = dual(second)
// under the substitution built so far.  Bags branch over the choice of
// counterpart for their first member.
inline void solve_dual(std::vector<std::pair<Point, Point>> goals, Subst s,
                       std::vector<Subst>& out, DualLimits& lim) {
    if (out.size() >= lim.max_solutions || lim.steps_left-- <= 0) {
        lim.truncated = true;
        return;
    }
    if (goals.empty()) {
        out.push_back(std::move(s));
        return;
    }
    Point x = apply_subst(s, goals.front().first);
    Point y = apply_subst(s, goals.front().second);
    goals.erase(goals.begin());

    auto atom_case = [&](const Point& a, const Point& other) {
        if (other.tag == Point::Tag::Atom && other.name == a.name) {
            if (other.pol == a.pol) return;  // x = dual(x) has no solution
            solve_dual(std::move(goals), std::move(s), out, lim);
            return;
        }
        Point v = a.pol == Pol::Plus ? dual(other) : other;
        if (!subst_bind(s, a.name, std::move(v))) return;
        solve_dual(std::move(goals), std::move(s), out, lim);
    };

    if (x.tag == Point::Tag::Atom) { atom_case(x, y); return; }
    if (y.tag == Point::Tag::Atom) { atom_case(y, x); return; }
    if (x.tag != y.tag || x.pol != flip(y.pol)) return;

    switch (x.tag) {
        case Point::Tag::Star:
            solve_dual(std::move(goals), std::move(s), out, lim);
            return;
        case Point::Tag::Pair: {
            goals.insert(goals.begin(), {{x.parts[0], y.parts[0]}, {x.parts[1], y.parts[1]}});
            solve_dual(std::move(goals), std::move(s), out, lim);
            return;
        }
        case Point::Tag::Bag: {
            if (x.parts.size() != y.parts.size()) return;
            if (x.parts.empty()) {
                solve_dual(std::move(goals), std::move(s), out, lim);
                return;
            }
            Point xrest = x;
            xrest.parts.erase(xrest.parts.begin());
            std::set<std::string> tried;
            for (size_t j = 0; j < y.parts.size(); j++) {
                if (!tried.insert(mellnet::show(y.parts[j])).second) continue;
                Point yrest = y;
                yrest.parts.erase(yrest.parts.begin() + j);
                std::vector<std::pair<Point, Point>> g2 = goals;
                g2.insert(g2.begin(), {{x.parts[0], y.parts[j]}, {xrest, yrest}});
                solve_dual(std::move(g2), s, out, lim);
            }
            return;
        }
        default:
            return;  // atoms handled above
    }
}

inline std::vector<Subst> dedup_substs(std::vector<Subst> xs, const std::set<std::string>& atoms) {
    std::vector<Subst> out;
    std::set<std::string> seen;
    for (Subst& s : xs) {
        Subst restricted;
        for (const std::string& a : atoms) {
            auto it = s.bind.find(a);
            if (it != s.bind.end()) restricted.bind.emplace(a, it->second);
        }
        if (seen.insert(restricted.show()).second) out.push_back(std::move(restricted));
    }
    return out;
}

} // namespace detail

// All most-general ways of making x and y dual to each other.  Callers are
// responsible for keeping the atom spaces of x and y disjoint when the two
// come from different nets.
inline std::vector<Subst> unify_dual_many(const std::vector<std::pair<Point, Point>>& eqs,
                                          size_t max_solutions = 4096,
                                          bool* truncated = nullptr) {
    detail::DualLimits lim{max_solutions, 2'000'000};
    std::vector<Subst> raw;
    detail::solve_dual(eqs, Subst{}, raw, lim);
    if (truncated) *truncated = lim.truncated;
    std::set<std::string> atoms;
    for (const auto& [x, y] : eqs) {
        collect_atoms(x, atoms);
        collect_atoms(y, atoms);
    }
    return detail::dedup_substs(std::move(raw), atoms);
}

inline std::vector<Subst> unify_dual(const Point& x, const Point& y,
                                     size_t max_solutions = 4096,
                                     bool* truncated = nullptr) {
    return unify_dual_many({{x, y}}, max_solutions, truncated);
}

namespace detail {

// One-sided matching: sigma(pattern) == target with the target's atoms
// treated as constants.  Same goal-list scheme as solve_dual, but without
// the polarity flip.
inline void solve_match(std::vector<std::pair<Point, Point>> goals, Subst s,
                        std::vector<Subst>& out, const std::set<std::string>& consts,
                        DualLimits& lim) {
    if (out.size() >= lim.max_solutions || lim.steps_left-- <= 0) return;
    if (goals.empty()) {
        out.push_back(std::move(s));
        return;
    }
    Point p = apply_subst(s, goals.front().first);
    const Point t = goals.front().second;
    goals.erase(goals.begin());

    if (p.tag == Point::Tag::Atom) {
        // the target's atoms are constants: they match themselves and
        // nothing else, and they are never bound
        if (consts.count(p.name)) {
            if (p.tag == t.tag && p.pol == t.pol && p.name == t.name)
                solve_match(std::move(goals), std::move(s), out, consts, lim);
            return;
        }
        Point v = p.pol == Pol::Plus ? t : dual(t);
        if (!subst_bind(s, p.name, std::move(v))) return;
        solve_match(std::move(goals), std::move(s), out, consts, lim);
        return;
    }
    if (p.tag != t.tag || p.pol != t.pol) return;
    switch (p.tag) {
        case Point::Tag::Star:
            solve_match(std::move(goals), std::move(s), out, consts, lim);
            return;
        case Point::Tag::Pair: {
            goals.insert(goals.begin(), {{p.parts[0], t.parts[0]}, {p.parts[1], t.parts[1]}});
            solve_match(std::move(goals), std::move(s), out, consts, lim);
            return;
        }
        case Point::Tag::Bag: {
            if (p.parts.size() != t.parts.size()) return;
            if (p.parts.empty()) {
                solve_match(std::move(goals), std::move(s), out, consts, lim);
                return;
            }
            Point prest = p;
            prest.parts.erase(prest.parts.begin());
            std::set<std::string> tried;
            for (size_t j = 0; j < t.parts.size(); j++) {
                if (!tried.insert(mellnet::show(t.parts[j])).second) continue;
                Point trest = t;
                trest.parts.erase(trest.parts.begin() + j);
                std::vector<std::pair<Point, Point>> g2 = goals;
                g2.insert(g2.begin(), {{p.parts[0], t.parts[j]}, {prest, trest}});
                solve_match(std::move(g2), s, out, consts, lim);
            }
            return;
        }
        default:
            return;
    }
}

} // namespace detail

// Substitutions sigma with sigma(pattern) = target, componentwise over the
// vectors.  The target's atoms act as constants.
inline std::vector<Subst> match_points(const std::vector<Point>& pattern,
                                       const std::vector<Point>& target,
                                       size_t max_solutions = 4096) {
    if (pattern.size() != target.size()) return {};
    std::vector<std::pair<Point, Point>> goals;
    for (size_t i = 0; i < pattern.size(); i++) goals.push_back({pattern[i], target[i]});
    detail::DualLimits lim{max_solutions, 500'000};
    std::set<std::string> consts;
    collect_atoms(target, consts);
    std::vector<Subst> raw;
    detail::solve_match(std::move(goals), Subst{}, raw, consts, lim);
    std::set<std::string> atoms;
    collect_atoms(pattern, atoms);
    return detail::dedup_substs(std::move(raw), atoms);
}

} // namespace mellnet
