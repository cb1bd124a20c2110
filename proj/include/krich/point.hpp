#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "krich/error.hpp"
#include "krich/rational.hpp"

namespace krich {

using Point = std::vector<Rational>;

/// A finite point set in R^dim. Points are held in file/insertion order;
/// indices into `points` identify members everywhere else in the library.
struct PointSet {
    std::size_t dim = 0;
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
};

/// Checks the structural invariants every consumer relies on: dim >= 2,
/// every point has exactly dim coordinates, and no two points coincide.
inline void validate_pointset(const PointSet& ps) {
    detail::require(ps.dim >= 2, "point set dimension must be at least 2");
    std::set<Point> seen;
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        detail::require(ps.points[i].size() == ps.dim,
                        "point " + std::to_string(i) + " has " +
                            std::to_string(ps.points[i].size()) + " coordinates, expected " +
                            std::to_string(ps.dim));
        detail::require(seen.insert(ps.points[i]).second,
                        "duplicate point at index " + std::to_string(i));
    }
}

inline void check_dim(const PointSet& ps, std::size_t dim, const char* where) {
    detail::require(ps.dim == dim, std::string(where) + ": point set has dimension " +
                                       std::to_string(ps.dim) + ", expected " +
                                       std::to_string(dim));
}

}  // namespace krich
