#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "krich/error.hpp"
#include "krich/flat.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"

namespace krich::exactgeom {

/// A (d-1)-sphere in R^d: exact center and exact squared radius.
struct Sphere {
    Point center;
    Rational radius_sq;

    std::size_t ambient() const { return center.size(); }

    std::string canonical_key() const {
        std::string out;
        append_uvarint(out, center.size());
        for (const Rational& c : center) append_rational_bytes(out, c);
        append_rational_bytes(out, radius_sq);
        return out;
    }

    friend bool operator==(const Sphere& a, const Sphere& b) {
        return a.center == b.center && a.radius_sq == b.radius_sq;
    }
};

/// A (d-2)-sphere in R^d: the intersection of a carrier hyperplane with a
/// full sphere whose center already lies on the carrier. The codimension-2
/// flat spanned by its image on the paraboloid serves as the canonical
/// identity (two such spheres are equal iff their lifted flats are).
struct CoSphere {
    Flat carrier;       // hyperplane of R^d containing the sphere
    Point center;       // lies on carrier
    Rational radius_sq; // > 0, measured inside the carrier
    Flat lifted;        // codimension-2 flat of R^{d+1}, canonical identity

    std::string canonical_key() const { return lifted.canonical_key(); }
};

inline Rational squared_norm(const Point& p) {
    Rational s = 0;
    for (const Rational& x : p) s += x * x;
    return s;
}

/// x in R^d -> (x, |x|^2) in R^{d+1}.
inline Point lift_point(const Point& p) {
    Point q = p;
    q.push_back(squared_norm(p));
    return q;
}

inline bool sphere_contains(const Sphere& s, const Point& p) {
    detail::require(p.size() == s.center.size(), "sphere_contains: dimension mismatch");
    Rational dist_sq = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational diff = p[i] - s.center[i];
        dist_sq += diff * diff;
    }
    return dist_sq == s.radius_sq;
}

/// The unique (d-1)-sphere through d+1 points of R^d. Absent when the lifted
/// points are affinely dependent or their hull is vertical (which happens
/// exactly when the points lie on a common hyperplane of R^d).
inline std::optional<Sphere> sphere_through(const std::vector<Point>& pts) {
    detail::require(!pts.empty() && pts.size() == pts[0].size() + 1,
                    "sphere_through needs exactly d+1 points of R^d");
    const std::size_t d = pts[0].size();
    std::vector<Point> lifted;
    lifted.reserve(pts.size());
    for (const Point& p : pts) {
        detail::require(p.size() == d, "sphere_through: mixed point dimensions");
        lifted.push_back(lift_point(p));
    }
    std::optional<Flat> hull = hyperplane_through(lifted);
    if (!hull || is_vertical(*hull)) return std::nullopt;

    // Row [a_1..a_d, a_{d+1} | b] with a_{d+1} != 0 meets the paraboloid in
    // the sphere |x - c|^2 = r^2 with c_i = -a_i / (2 a_{d+1}).
    const Row& row = hull->eqs[0];
    const Rational& last = row[d];
    Point center(d);
    for (std::size_t i = 0; i < d; ++i) center[i] = -row[i] / (2 * last);
    Rational radius_sq = row[d + 1] / last + squared_norm(center);
    detail::ensure(radius_sq > 0, "sphere through distinct points has positive radius");
    for (const Point& p : pts)
        detail::ensure(sphere_contains(Sphere{center, radius_sq}, p),
                       "constructed sphere misses an input point");
    return Sphere{std::move(center), std::move(radius_sq)};
}

}  // namespace krich::exactgeom
