#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "krich/error.hpp"
#include "krich/flat.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"
#include "krich/rng.hpp"
#include "krich/sphere.hpp"

namespace krich::transforms {

using exactgeom::Flat;
using exactgeom::Matrix;
using exactgeom::Row;
using exactgeom::Sphere;
using exactgeom::CoSphere;

// Shear and projection coefficients are drawn as plain integers in
// [-2^31, 2^31]: large enough that a bad draw is never observed in practice,
// small enough to keep coefficient growth in later exact arithmetic tame.
inline constexpr std::int64_t kDrawBound = std::int64_t(1) << 31;

inline Rational draw_coefficient(Rng& rng) {
    return Rational(Integer(rng.between(-kDrawBound, kDrawBound)));
}

// --- point-hyperplane duality ------------------------------------------------
//
// The duality fixed here maps p to the hyperplane
//   x_d = p_1 x_1 + ... + p_{d-1} x_{d-1} - p_d
// and is an exact involution on points and non-vertical hyperplanes that
// preserves incidences in both directions.

inline Flat dualize_point(const Point& p) {
    const std::size_t d = p.size();
    detail::require(d >= 2, "dualize_point needs dimension at least 2");
    Row row(d + 1);
    for (std::size_t i = 0; i + 1 < d; ++i) row[i] = -p[i];
    row[d - 1] = 1;
    row[d] = -p[d - 1];
    return exactgeom::make_hyperplane(d, std::move(row));
}

inline Point dualize_hyperplane(const Flat& h) {
    detail::require(h.is_hyperplane(), "dualize_hyperplane needs a hyperplane");
    const std::size_t d = h.ambient;
    detail::require(d >= 2, "dualize_hyperplane needs dimension at least 2");
    const Row& row = h.eqs[0];
    const Rational& ad = row[d - 1];
    detail::require(ad != 0, "vertical, not dualizable");
    // Rewrite a.x = b as x_d = sum c_i x_i + c_0; the dual point is
    // (c_1, ..., c_{d-1}, -c_0).
    Point p(d);
    for (std::size_t i = 0; i + 1 < d; ++i) p[i] = -row[i] / ad;
    p[d - 1] = -row[d] / ad;
    return p;
}

// --- paraboloid lifting -------------------------------------------------------

inline Point lift(const Point& p) { return exactgeom::lift_point(p); }

inline PointSet lift(const PointSet& ps) {
    PointSet out;
    out.dim = ps.dim + 1;
    out.points.reserve(ps.points.size());
    for (const Point& p : ps.points) out.points.push_back(exactgeom::lift_point(p));
    return out;
}

/// The hyperplane of R^{d+1} whose paraboloid section is the given sphere:
/// |x - c|^2 = r^2 becomes x_{d+1} = 2 c . x + (r^2 - |c|^2).
inline Flat lift(const Sphere& s) {
    const std::size_t d = s.center.size();
    Row row(d + 2);
    for (std::size_t i = 0; i < d; ++i) row[i] = -2 * s.center[i];
    row[d] = 1;
    row[d + 1] = s.radius_sq - exactgeom::squared_norm(s.center);
    return exactgeom::make_hyperplane(d + 1, std::move(row));
}

/// Inverse of the lifting on hyperplanes of R^{d+1}: a hyperplane with
/// nonzero x_{d+1} coefficient cuts the paraboloid in a sphere of R^d; one
/// with zero coefficient is vertical and descends to a hyperplane of R^d.
/// Throws when the sphere would have radius_sq <= 0 (the hyperplane misses
/// or merely touches the paraboloid).
inline std::variant<Sphere, Flat> unlift_hyperplane(const Flat& h) {
    detail::require(h.is_hyperplane(), "unlift_hyperplane needs a hyperplane");
    detail::require(h.ambient >= 2, "unlift_hyperplane needs ambient dimension >= 2");
    const std::size_t d = h.ambient - 1;
    const Row& row = h.eqs[0];
    const Rational& last = row[d];
    if (last == 0) {
        Row lower(row.begin(), row.begin() + d);
        lower.push_back(row[d + 1]);
        return exactgeom::make_hyperplane(d, std::move(lower));
    }
    Point center(d);
    for (std::size_t i = 0; i < d; ++i) center[i] = -row[i] / (2 * last);
    Rational radius_sq = row[d + 1] / last + exactgeom::squared_norm(center);
    detail::require(radius_sq > 0, "imaginary or point sphere (radius_sq <= 0)");
    return Sphere{std::move(center), std::move(radius_sq)};
}

/// Converts a non-vertical codimension-2 flat of R^{d+1} into the
/// (d-2)-sphere its paraboloid section projects to: one equation with
/// nonzero x_{d+1} coefficient unliftes to a full sphere, the other (made
/// vertical by elimination) descends to the carrier hyperplane; the sphere
/// center is then dropped orthogonally onto the carrier.
inline CoSphere cosphere_from_lifted(const Flat& g) {
    detail::require(g.codim() == 2, "cosphere_from_lifted needs a codimension-2 flat");
    const std::size_t d = g.ambient - 1;
    detail::require(d >= 2, "cosphere_from_lifted needs ambient dimension >= 3");
    Row r1 = g.eqs[0], r2 = g.eqs[1];
    if (r1[d] == 0) std::swap(r1, r2);
    detail::require(r1[d] != 0, "vertical lifted flat has no sphere section");
    if (r2[d] != 0) {
        const Rational f = r2[d] / r1[d];
        for (std::size_t j = 0; j <= d + 1; ++j) r2[j] -= f * r1[j];
    }

    auto section = unlift_hyperplane(exactgeom::make_hyperplane(d + 1, std::move(r1)));
    Sphere full = std::get<Sphere>(std::move(section));
    Row carrier_row(r2.begin(), r2.begin() + d);
    carrier_row.push_back(r2[d + 1]);
    Flat carrier = exactgeom::make_hyperplane(d, std::move(carrier_row));

    // Project the center onto the carrier a.x = b along a.
    const Row& a = carrier.eqs[0];
    Rational a_dot_a = 0, a_dot_c = 0;
    for (std::size_t i = 0; i < d; ++i) {
        a_dot_a += a[i] * a[i];
        a_dot_c += a[i] * full.center[i];
    }
    const Rational off = a_dot_c - a[d];  // signed multiple of |a|
    Point center(d);
    for (std::size_t i = 0; i < d; ++i) center[i] = full.center[i] - off * a[i] / a_dot_a;
    Rational radius_sq = full.radius_sq - off * off / a_dot_a;
    detail::require(radius_sq > 0, "lifted flat meets the paraboloid in no real sphere");
    return CoSphere{std::move(carrier), std::move(center), std::move(radius_sq), g};
}

// --- shear --------------------------------------------------------------------

/// The unimodular map x_i += s_i x_d (i < d), x_d unchanged. Used to make a
/// finite hyperplane family non-vertical before dualizing.
struct ShearMap {
    std::vector<Rational> s;  // length d-1
    std::uint64_t seed = 0;
    unsigned attempts = 0;

    Point apply(const Point& p) const {
        detail::require(p.size() == s.size() + 1, "ShearMap::apply: dimension mismatch");
        Point q = p;
        const Rational& xd = p[s.size()];
        for (std::size_t i = 0; i < s.size(); ++i) q[i] += s[i] * xd;
        return q;
    }

    /// Image of the hyperplane a.x = b: coefficients on x_1..x_{d-1} are
    /// unchanged, the x_d coefficient becomes a_d - sum_i a_i s_i.
    Flat apply(const Flat& h) const {
        detail::require(h.is_hyperplane(), "ShearMap::apply: hyperplane expected");
        const std::size_t d = h.ambient;
        detail::require(d == s.size() + 1, "ShearMap::apply: dimension mismatch");
        Row row = h.eqs[0];
        for (std::size_t i = 0; i + 1 < d; ++i) row[d - 1] -= row[i] * s[i];
        return exactgeom::make_hyperplane(d, std::move(row));
    }
};

struct ShearResult {
    PointSet points;
    std::vector<Flat> hyperplanes;
    ShearMap map;
};

/// Draws shears from the seed until every hyperplane in H is non-vertical,
/// then applies the accepted shear to both P and H. Incidences are preserved
/// exactly because the map is an invertible linear change of coordinates.
inline ShearResult random_shear(const PointSet& ps, const std::vector<Flat>& hs,
                                std::uint64_t seed) {
    detail::require(ps.dim >= 2, "random_shear needs dimension at least 2");
    for (const Flat& h : hs) {
        detail::require(h.is_hyperplane(), "random_shear: hyperplane expected");
        detail::require(h.ambient == ps.dim, "random_shear: dimension mismatch");
    }
    const std::size_t d = ps.dim;
    Rng rng(seed);
    for (unsigned attempt = 1; attempt <= 64; ++attempt) {
        ShearMap map;
        map.seed = seed;
        map.attempts = attempt;
        map.s.reserve(d - 1);
        for (std::size_t i = 0; i + 1 < d; ++i) map.s.push_back(draw_coefficient(rng));
        bool ok = true;
        for (const Flat& h : hs) {
            const Row& row = h.eqs[0];
            Rational coeff = row[d - 1];
            for (std::size_t i = 0; i + 1 < d; ++i) coeff -= row[i] * map.s[i];
            if (coeff == 0) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ShearResult out;
        out.map = map;
        out.points.dim = d;
        out.points.points.reserve(ps.points.size());
        for (const Point& p : ps.points) out.points.points.push_back(map.apply(p));
        out.hyperplanes.reserve(hs.size());
        for (const Flat& h : hs) out.hyperplanes.push_back(map.apply(h));
        return out;
    }
    throw invalid_input("random_shear: no admissible shear within 64 draws for this seed");
}

// --- verified generic projection ---------------------------------------------

/// A t x d rational map together with the evidence that it behaved
/// generically on the point set it was drawn for: it separated all points
/// and preserved the dimension of every spanned (t-1)-flat it was checked
/// against.
struct ProjectionMap {
    Matrix matrix;  // t rows, d columns
    std::uint64_t seed = 0;
    std::size_t verified_against = 0;

    Point apply(const Point& p) const {
        detail::require(!matrix.empty() && p.size() == matrix[0].size(),
                        "ProjectionMap::apply: dimension mismatch");
        Point q(matrix.size());
        for (std::size_t i = 0; i < matrix.size(); ++i) q[i] = exactgeom::dot(matrix[i], p);
        return q;
    }
};

/// Draws a t x d map from the seed and accepts it only after verifying the
/// two genericity conditions explicitly: no two points of P are identified,
/// and every (t-1)-flat spanned by t affinely independent points of P keeps
/// dimension t-1 in the image. Checking one spanning subset per flat
/// suffices because an affine image of a hull is the hull of the images.
inline std::pair<ProjectionMap, PointSet> generic_projection(const PointSet& ps,
                                                             std::size_t t,
                                                             std::uint64_t seed) {
    validate_pointset(ps);
    detail::require(t >= 3 && t < ps.dim, "generic_projection needs 3 <= t < d");

    // One representative affinely independent t-subset per spanned flat.
    std::vector<std::vector<std::size_t>> reps;
    {
        std::set<std::string> seen;
        std::vector<std::size_t> idx(t);
        for (std::size_t i = 0; i < t; ++i) idx[i] = i;
        const std::size_t n = ps.points.size();
        if (n >= t) {
            for (;;) {
                std::optional<Flat> hull = exactgeom::affine_hull_indexed(ps, idx);
                if (hull && hull->dim() == t - 1 && seen.insert(hull->canonical_key()).second)
                    reps.push_back(idx);
                std::size_t i = 0;
                for (; i < t; ++i) {
                    std::size_t limit = (i + 1 < t) ? idx[i + 1] : n;
                    if (idx[i] + 1 < limit) {
                        ++idx[i];
                        for (std::size_t j = 0; j < i; ++j) idx[j] = j;
                        break;
                    }
                }
                if (i == t) break;
            }
        }
    }

    Rng rng(seed);
    for (unsigned attempt = 1; attempt <= 64; ++attempt) {
        ProjectionMap map;
        map.seed = seed;
        map.matrix.assign(t, Row(ps.dim));
        for (Row& row : map.matrix)
            for (Rational& x : row) x = draw_coefficient(rng);

        PointSet images;
        images.dim = t;
        images.points.reserve(ps.points.size());
        for (const Point& p : ps.points) images.points.push_back(map.apply(p));

        std::set<Point> distinct(images.points.begin(), images.points.end());
        if (distinct.size() != images.points.size()) continue;

        bool ok = true;
        for (const std::vector<std::size_t>& idx : reps) {
            std::optional<Flat> hull = exactgeom::affine_hull_indexed(images, idx);
            if (!hull || hull->dim() != t - 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        map.verified_against = reps.size();
        return {std::move(map), std::move(images)};
    }
    throw invalid_input("generic_projection: no generic map within 64 draws for this seed");
}

/// Raises a point set into a higher ambient dimension through a random
/// integer linear map of full rank (hence injective on all of R^d). The
/// inverse direction of generic_projection, used to stage flat-enumeration
/// instances whose answers are known in the lower dimension.
inline std::pair<ProjectionMap, PointSet> generic_embedding(const PointSet& ps,
                                                            std::size_t big_dim,
                                                            std::uint64_t seed) {
    validate_pointset(ps);
    detail::require(big_dim > ps.dim, "generic_embedding needs a larger target dimension");
    Rng rng(seed);
    for (unsigned attempt = 1; attempt <= 64; ++attempt) {
        ProjectionMap map;
        map.seed = seed;
        map.matrix.assign(big_dim, Row(ps.dim));
        for (Row& row : map.matrix)
            for (Rational& x : row) x = draw_coefficient(rng);

        Matrix probe = map.matrix;
        if (exactgeom::rref(probe).size() != ps.dim) continue;

        PointSet images;
        images.dim = big_dim;
        images.points.reserve(ps.points.size());
        for (const Point& p : ps.points) images.points.push_back(map.apply(p));
        map.verified_against = 0;
        return {std::move(map), std::move(images)};
    }
    throw invalid_input("generic_embedding: no full-rank map within 64 draws for this seed");
}

}  // namespace krich::transforms
