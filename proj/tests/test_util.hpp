#pragma once

#include <random>
#include <string>
#include <vector>

#include "mellnet/point.hpp"

namespace testutil {

using mellnet::Point;
using mellnet::Pol;

// Seeded generator of small points over a fixed atom pool; used by the
// property-style checks.
struct PointGen {
    std::mt19937 rng;
    std::vector<std::string> atoms = {"x", "y", "z"};

    explicit PointGen(uint32_t seed) : rng(seed) {}

    Point gen(int depth = 2) {
        Pol p = rng() % 2 ? Pol::Plus : Pol::Minus;
        int tag = depth <= 0 ? (int)(rng() % 2) : (int)(rng() % 4);
        switch (tag) {
            case 0:
                return Point::star(p);
            case 1:
                return Point::atom(p, atoms[rng() % atoms.size()]);
            case 2:
                return Point::pair(p, gen(depth - 1), gen(depth - 1));
            default: {
                size_t n = rng() % 3;
                std::vector<Point> xs;
                for (size_t i = 0; i < n; i++) xs.push_back(gen(depth - 1));
                return Point::bag(p, std::move(xs));
            }
        }
    }
};

} // namespace testutil
