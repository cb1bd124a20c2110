#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krich/error.hpp"
#include "krich/linalg.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"

namespace krich::exactgeom {

/// An affine subspace of R^ambient of dimension in [0, ambient-1], stored as
/// the unique RREF of its equation system. Each row [a_1..a_ambient | b]
/// encodes a.x = b. Two Flats describe the same point set iff their stored
/// forms compare equal, which makes canonical_key() usable for hashing,
/// deduplication and a stable output order.
struct Flat {
    std::size_t ambient = 0;
    Matrix eqs;  // RREF, exactly ambient - dim rows, ambient + 1 columns

    std::size_t dim() const { return ambient - eqs.size(); }
    std::size_t codim() const { return eqs.size(); }
    bool is_hyperplane() const { return eqs.size() == 1; }

    std::string canonical_key() const {
        std::string out;
        append_uvarint(out, ambient);
        append_uvarint(out, eqs.size());
        for (const Row& row : eqs)
            for (const Rational& x : row) append_rational_bytes(out, x);
        return out;
    }

    friend bool operator==(const Flat& a, const Flat& b) {
        return a.ambient == b.ambient && a.eqs == b.eqs;
    }
};

/// Canonicalizes a raw equation list (rows a.x = b over ambient variables).
/// Drops redundant rows. Throws if the system is inconsistent (a pivot in the
/// right-hand-side column means the solution set is empty, which no Flat may
/// represent). An empty result means the equations cut out all of R^ambient.
inline Matrix canonicalize_equations(std::size_t ambient, Matrix raw) {
    for (const Row& row : raw)
        detail::require(row.size() == ambient + 1, "equation row has wrong width");
    std::vector<std::size_t> pivots = rref(raw);
    for (std::size_t p : pivots)
        detail::require(p < ambient, "inconsistent equation system (empty solution set)");
    return raw;
}

inline Flat make_flat(std::size_t ambient, Matrix raw) {
    detail::require(ambient >= 1, "ambient dimension must be at least 1");
    Matrix eqs = canonicalize_equations(ambient, std::move(raw));
    detail::require(!eqs.empty(), "equations cut out the full space, not a flat");
    return Flat{ambient, std::move(eqs)};
}

inline Flat make_hyperplane(std::size_t ambient, Row coeffs_and_rhs) {
    Flat f = make_flat(ambient, Matrix{std::move(coeffs_and_rhs)});
    detail::require(f.is_hyperplane(), "equation row is degenerate");
    return f;
}

/// Smallest affine subspace containing the points; nullopt when that is the
/// whole space. Built from the nullspace of the difference vectors, then
/// canonicalized. GetPoint maps 0..count-1 to a point reference.
template <class GetPoint>
std::optional<Flat> affine_hull_by(std::size_t count, GetPoint&& get) {
    detail::require(count > 0, "affine_hull of an empty point list");
    const Point& base = get(0);
    const std::size_t d = base.size();
    detail::require(d >= 1, "points must have dimension at least 1");

    Matrix diffs;
    diffs.reserve(count - 1);
    for (std::size_t i = 1; i < count; ++i) {
        const Point& p = get(i);
        detail::require(p.size() == d, "affine_hull: mixed point dimensions");
        Row r(d);
        for (std::size_t j = 0; j < d; ++j) r[j] = p[j] - base[j];
        diffs.push_back(std::move(r));
    }
    std::vector<std::size_t> pivots = rref(diffs);
    if (pivots.size() == d) return std::nullopt;  // points span R^d

    Matrix normals = nullspace_from_rref(diffs, d, pivots);
    Matrix eqs;
    eqs.reserve(normals.size());
    for (Row& a : normals) {
        Rational b = 0;
        for (std::size_t j = 0; j < d; ++j) b += a[j] * base[j];
        a.push_back(std::move(b));
        eqs.push_back(std::move(a));
    }
    return make_flat(d, std::move(eqs));
}

inline std::optional<Flat> affine_hull(const std::vector<Point>& pts) {
    return affine_hull_by(pts.size(), [&](std::size_t i) -> const Point& { return pts[i]; });
}

inline std::optional<Flat> affine_hull_indexed(const PointSet& ps,
                                               const std::vector<std::size_t>& idx) {
    return affine_hull_by(idx.size(),
                          [&](std::size_t i) -> const Point& { return ps.points[idx[i]]; });
}

/// The unique hyperplane through d points of R^d, or nullopt when they are
/// affinely dependent.
inline std::optional<Flat> hyperplane_through(const std::vector<Point>& pts) {
    detail::require(!pts.empty() && pts.size() == pts[0].size(),
                    "hyperplane_through needs exactly d points of R^d");
    std::optional<Flat> hull = affine_hull(pts);
    if (!hull || !hull->is_hyperplane()) return std::nullopt;
    return hull;
}

inline bool flat_contains(const Flat& f, const Point& p) {
    detail::require(p.size() == f.ambient, "flat_contains: dimension mismatch");
    for (const Row& row : f.eqs) {
        Rational s = 0;
        for (std::size_t j = 0; j < f.ambient; ++j) s += row[j] * p[j];
        if (s != row[f.ambient]) return false;
    }
    return true;
}

/// Exact incidence count plus the member indices in input order.
inline std::pair<std::size_t, std::vector<std::size_t>> count_on_flat(const PointSet& ps,
                                                                      const Flat& f) {
    check_dim(ps, f.ambient, "count_on_flat");
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ps.points.size(); ++i)
        if (flat_contains(f, ps.points[i])) members.push_back(i);
    return {members.size(), std::move(members)};
}

/// A flat is vertical when the last coordinate axis is one of its directions,
/// i.e. every equation row has zero coefficient on x_ambient.
inline bool is_vertical(const Flat& f) {
    for (const Row& row : f.eqs)
        if (row[f.ambient - 1] != 0) return false;
    return true;
}

/// Basis of the direction space (nullspace of the coefficient part).
inline Matrix directions(const Flat& f) {
    Matrix coeff;
    coeff.reserve(f.eqs.size());
    for (const Row& row : f.eqs) coeff.emplace_back(row.begin(), row.begin() + f.ambient);
    std::vector<std::size_t> pivots = rref(coeff);
    return nullspace_from_rref(coeff, f.ambient, pivots);
}

/// True when the two flats share at least one point (stacked system stays
/// consistent).
inline bool flats_intersect(const Flat& a, const Flat& b) {
    detail::require(a.ambient == b.ambient, "flats_intersect: dimension mismatch");
    Matrix joint = a.eqs;
    joint.insert(joint.end(), b.eqs.begin(), b.eqs.end());
    for (std::size_t p : rref(joint))
        if (p == a.ambient) return false;
    return true;
}

}  // namespace krich::exactgeom
