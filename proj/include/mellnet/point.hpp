#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mellnet/sexpr.hpp"

namespace mellnet {

enum class Pol : uint8_t { Plus, Minus };

inline Pol flip(Pol p) { return p == Pol::Plus ? Pol::Minus : Pol::Plus; }

// Element of the relational web: polarised star, atom, pair, or finite
// multiset ("bag").  Bags are kept sorted so that structural equality is
// multiset equality.
struct Point {
    enum class Tag : uint8_t { Star, Atom, Pair, Bag };

    Tag tag = Tag::Star;
    Pol pol = Pol::Plus;
    std::string name;          // Tag::Atom
    std::vector<Point> parts;  // Tag::Pair: exactly 2; Tag::Bag: sorted

    static Point star(Pol p) {
        Point x;
        x.tag = Tag::Star;
        x.pol = p;
        return x;
    }
    static Point atom(Pol p, std::string n) {
        Point x;
        x.tag = Tag::Atom;
        x.pol = p;
        x.name = std::move(n);
        return x;
    }
    static Point pair(Pol p, Point a, Point b) {
        Point x;
        x.tag = Tag::Pair;
        x.pol = p;
        x.parts.push_back(std::move(a));
        x.parts.push_back(std::move(b));
        return x;
    }
    static Point bag(Pol p, std::vector<Point> xs);
};

inline int cmp(const Point& a, const Point& b) {
    if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
    if (a.pol != b.pol) return a.pol < b.pol ? -1 : 1;
    if (a.tag == Point::Tag::Atom) {
        if (a.name != b.name) return a.name < b.name ? -1 : 1;
        return 0;
    }
    if (a.parts.size() != b.parts.size())
        return a.parts.size() < b.parts.size() ? -1 : 1;
    for (size_t i = 0; i < a.parts.size(); i++) {
        int c = cmp(a.parts[i], b.parts[i]);
        if (c) return c;
    }
    return 0;
}

inline bool operator==(const Point& a, const Point& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Point& a, const Point& b) { return cmp(a, b) != 0; }
inline bool operator<(const Point& a, const Point& b) { return cmp(a, b) < 0; }

inline Point Point::bag(Pol p, std::vector<Point> xs) {
    Point x;
    x.tag = Tag::Bag;
    x.pol = p;
    std::sort(xs.begin(), xs.end());
    x.parts = std::move(xs);
    return x;
}

// Re-sort all bags bottom-up; needed after in-place rewriting of subterms.
inline void normalize_bags(Point& x) {
    for (Point& p : x.parts) normalize_bags(p);
    if (x.tag == Point::Tag::Bag) std::sort(x.parts.begin(), x.parts.end());
}

inline Point dual(const Point& x) {
    Point y = x;
    y.pol = flip(x.pol);
    for (size_t i = 0; i < y.parts.size(); i++) y.parts[i] = dual(x.parts[i]);
    if (y.tag == Point::Tag::Bag) std::sort(y.parts.begin(), y.parts.end());
    return y;
}

// Number of polarity occurrences: stars and atoms weigh 1, pairs and bags
// weigh 1 plus their contents.
inline long long point_size(const Point& x) {
    long long n = 1;
    for (const Point& p : x.parts) n += point_size(p);
    return n;
}

// Tuples of results and weakening multisets sum member sizes with no extra
// unit for the container itself.
inline long long point_size(const std::vector<Point>& xs) {
    long long n = 0;
    for (const Point& p : xs) n += point_size(p);
    return n;
}

inline long long sbis_point_size(const Point& x, const std::vector<Point>& w) {
    long long n = point_size(x);
    for (const Point& a : w) n += point_size(a) + 2;
    return n;
}

inline long long sbis_point_size(const std::vector<Point>& xs, const std::vector<Point>& w) {
    long long n = point_size(xs);
    for (const Point& a : w) n += point_size(a) + 2;
    return n;
}

// True when no subterm is a positive empty bag, i.e. no box was taken with
// zero copies anywhere inside the value.
inline bool exhaustive(const Point& x) {
    if (x.tag == Point::Tag::Bag && x.pol == Pol::Plus && x.parts.empty()) return false;
    for (const Point& p : x.parts)
        if (!exhaustive(p)) return false;
    return true;
}

inline bool exhaustive(const std::vector<Point>& xs) {
    for (const Point& p : xs)
        if (!exhaustive(p)) return false;
    return true;
}

inline void collect_atoms(const Point& x, std::set<std::string>& out) {
    if (x.tag == Point::Tag::Atom) out.insert(x.name);
    for (const Point& p : x.parts) collect_atoms(p, out);
}

inline void collect_atoms(const std::vector<Point>& xs, std::set<std::string>& out) {
    for (const Point& p : xs) collect_atoms(p, out);
}

inline bool contains_atom(const Point& x, const std::string& n) {
    if (x.tag == Point::Tag::Atom && x.name == n) return true;
    for (const Point& p : x.parts)
        if (contains_atom(p, n)) return true;
    return false;
}

inline Sexp point_to_sexp(const Point& x) {
    Sexp body;
    switch (x.tag) {
        case Point::Tag::Star: body = Sexp::sym("*"); break;
        case Point::Tag::Atom: body = Sexp::sym(x.name); break;
        case Point::Tag::Pair: {
            body = Sexp::list({Sexp::sym("pair"), point_to_sexp(x.parts[0]), point_to_sexp(x.parts[1])});
            break;
        }
        case Point::Tag::Bag: {
            body = Sexp::list({Sexp::sym("bag")});
            for (const Point& p : x.parts) body.items.push_back(point_to_sexp(p));
            break;
        }
    }
    return Sexp::list({Sexp::sym(x.pol == Pol::Plus ? "+" : "-"), std::move(body)});
}

inline std::string show(const Point& x) { return write_sexpr(point_to_sexp(x)); }

inline std::string show(const std::vector<Point>& xs) {
    std::string out = "(";
    for (size_t i = 0; i < xs.size(); i++) {
        if (i) out += ' ';
        out += show(xs[i]);
    }
    out += ')';
    return out;
}

inline Point point_from_sexp(const Sexp& e) {
    if (e.is_atom || e.size() != 2 || !e.at(0).is_atom)
        throw std::runtime_error("malformed point: " + write_sexpr(e));
    Pol p;
    if (e.at(0).atom == "+") p = Pol::Plus;
    else if (e.at(0).atom == "-") p = Pol::Minus;
    else throw std::runtime_error("bad polarity: " + e.at(0).atom);
    const Sexp& body = e.at(1);
    if (body.is_atom) {
        if (body.atom == "*") return Point::star(p);
        return Point::atom(p, body.atom);
    }
    std::string h = body.head();
    if (h == "pair") {
        if (body.size() != 3) throw std::runtime_error("pair needs two members");
        return Point::pair(p, point_from_sexp(body.at(1)), point_from_sexp(body.at(2)));
    }
    if (h == "bag") {
        std::vector<Point> xs;
        for (size_t i = 1; i < body.size(); i++) xs.push_back(point_from_sexp(body.at(i)));
        return Point::bag(p, std::move(xs));
    }
    throw std::runtime_error("malformed point body: " + write_sexpr(body));
}

inline Point parse_point(const std::string& text) { return point_from_sexp(parse_sexpr(text)); }

} // namespace mellnet
