#pragma once

#include <random>
#include <string>
#include <vector>

#include "toricdef/errors.hpp"
#include "toricdef/polytope.hpp"

namespace toricdef::testing {

inline const std::string fixtures = TORICDEF_FIXTURES;

inline Polytope fixture(const std::string& name) { return read_polytope_file(fixtures + "/" + name).polytope; }

/// Random convex lattice polygon with at most max_vertices vertices and coordinates in [-range, range].
inline Polytope random_polygon(std::mt19937_64& rng, std::size_t max_vertices, std::int64_t range) {
    std::uniform_int_distribution<std::int64_t> coord(-range, range);
    std::uniform_int_distribution<std::size_t> count(3, max_vertices);
    for (;;) {
        std::vector<Point> pts(count(rng));
        for (auto& q : pts) q = {coord(rng), coord(rng)};
        try {
            return polygon_from_vertices(pts);
        } catch (const ValidationError&) {
        }
    }
}

}  // namespace toricdef::testing
