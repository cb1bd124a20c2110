#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "krich/error.hpp"
#include "krich/flat.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"
#include "krich/rng.hpp"

namespace krich::constructions {

using exactgeom::Flat;

/// Exact statistics a generator promises about its output, checkable with no
/// enumeration at all (identities) or with targeted counting (family sizes,
/// richest-flat values).
struct ConstructionStats {
    std::size_t n = 0;
    std::size_t k = 0;
    Integer predicted_rich_lower = 0;
    std::optional<Rational> grid_identity_lhs;  // n^d / k^{d+1}
    std::optional<Rational> grid_identity_rhs;  // d^d * u * v^d
    std::optional<Integer> predicted_ell;       // exact richest-(d-2)-flat count, when known
    std::optional<Integer> predicted_ell_vertical;          // grid d > 3: u^{d-3} * duv
    std::optional<Integer> predicted_ell_nonvertical_bound;  // grid d > 3: u^{d-2}
};

namespace detail_cons {

inline std::size_t to_size(const Integer& x, const char* what) {
    detail::require(x >= 0 && x <= Integer(std::size_t(1) << 40), std::string(what) + " too large");
    return x.convert_to<std::size_t>();
}

}  // namespace detail_cons

/// The [0,u)^{d-1} x [0,duv) integer box. Every hyperplane of the companion
/// family (see grid_rich_family) meets it in exactly k = u^{d-1} points, one
/// per column, giving u * v^d hyperplanes that are exactly k-rich; the
/// count/identity fields make that checkable without enumeration.
inline std::pair<PointSet, ConstructionStats> grid_construction(std::size_t d, std::size_t u,
                                                                std::size_t v) {
    detail::require(d >= 3, "grid_construction needs d >= 3");
    detail::require(v >= 1 && u > v, "grid_construction needs u > v >= 1");
    const Integer n_exact = Integer(d) * ipow(Integer(u), d) * Integer(v);
    const std::size_t n = detail_cons::to_size(n_exact, "grid point count");
    detail::require(n <= 50'000'000, "grid too large to materialize");
    const std::size_t k = detail_cons::to_size(ipow(Integer(u), d - 1), "grid richness");
    const std::size_t tall = d * u * v;  // extent of the last axis

    PointSet ps;
    ps.dim = d;
    ps.points.reserve(n);
    std::vector<std::size_t> odo(d, 0);
    auto advance = [&]() {
        std::size_t j = d;
        while (j > 0) {
            --j;
            const std::size_t extent = (j + 1 == d) ? tall : u;
            if (++odo[j] < extent) return true;
            odo[j] = 0;
        }
        return false;
    };
    do {
        Point p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = Rational(Integer(odo[j]));
        ps.points.push_back(std::move(p));
    } while (advance());
    detail::ensure(ps.points.size() == n, "grid point count mismatch");

    ConstructionStats st;
    st.n = n;
    st.k = k;
    st.predicted_rich_lower = Integer(u) * ipow(Integer(v), d);
    st.grid_identity_lhs = Rational(ipow(Integer(n), d), ipow(Integer(k), d + 1));
    st.grid_identity_rhs = Rational(ipow(Integer(d), d) * Integer(u) * ipow(Integer(v), d));
    if (d == 3) {
        // The tallest line is a vertical column with duv points; any
        // non-vertical line changes some bounded coordinate, so it carries
        // at most u < duv points.
        st.predicted_ell = Integer(tall);
    } else {
        st.predicted_ell_vertical = ipow(Integer(u), d - 3) * Integer(tall);
        st.predicted_ell_nonvertical_bound = ipow(Integer(u), d - 2);
    }
    return {std::move(ps), std::move(st)};
}

/// The hyperplanes x_d = a_1 x_1 + ... + a_{d-1} x_{d-1} + a_d with
/// 0 <= a_i <= v-1 and 0 <= a_d <= uv-1. Over the grid's base columns the
/// right-hand side stays inside [0, duv), so each hyperplane picks exactly
/// one point per column.
inline std::vector<Flat> grid_rich_family(std::size_t d, std::size_t u, std::size_t v) {
    detail::require(d >= 3 && v >= 1 && u > v, "grid_rich_family: invalid parameters");
    std::vector<Flat> family;
    family.reserve(detail_cons::to_size(ipow(Integer(v), d - 1) * Integer(u * v), "family size"));
    std::vector<std::size_t> a(d, 0);  // a[0..d-2] slopes, a[d-1] offset
    auto advance = [&]() {
        std::size_t j = d;
        while (j > 0) {
            --j;
            const std::size_t extent = (j + 1 == d) ? u * v : v;
            if (++a[j] < extent) return true;
            a[j] = 0;
        }
        return false;
    };
    do {
        exactgeom::Row row(d + 1);
        for (std::size_t i = 0; i + 1 < d; ++i) row[i] = -Rational(Integer(a[i]));
        row[d - 1] = 1;
        row[d] = Rational(Integer(a[d - 1]));
        family.push_back(exactgeom::make_hyperplane(d, std::move(row)));
    } while (advance());
    return family;
}

struct SkewLinesResult {
    PointSet points;
    ConstructionStats stats;
    std::vector<Flat> lines;
};

/// u pairwise skew lines in R^3 realized as rulings of the surface z = x y:
/// line i is {(i, s, i s)}, carrying the k points s = 0..k-1. Distinct
/// rulings never meet (their x_1 values differ) and are never parallel
/// (directions (0, 1, i) differ), so skewness holds by construction.
inline SkewLinesResult skew_lines_construction(std::size_t u, std::size_t k) {
    detail::require(u >= 2, "skew_lines_construction needs u >= 2");
    detail::require(k >= 3 && k >= u, "skew_lines_construction needs k >= 3 and k >= u");
    SkewLinesResult out;
    out.points.dim = 3;
    out.points.points.reserve(u * k);
    for (std::size_t i = 0; i < u; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            out.points.points.push_back(Point{Rational(Integer(i)), Rational(Integer(s)),
                                              Rational(Integer(i * s))});
        }
        // x_1 = i and x_3 = i x_2.
        out.lines.push_back(exactgeom::make_flat(
            3, exactgeom::Matrix{{Rational(1), Rational(0), Rational(0), Rational(Integer(i))},
                                 {Rational(0), -Rational(Integer(i)), Rational(1), Rational(0)}}));
    }
    out.stats.n = u * k;
    out.stats.k = k;
    out.stats.predicted_ell = Integer(k);
    return out;
}

/// n points in general position inside the (d-2)-flat x_{d-1} = x_d = 0,
/// realized on the moment curve s -> (s, s^2, ..., s^{d-2}, 0, 0) with
/// distinct parameters: any d-1 of them are affinely independent (a
/// Vandermonde determinant), so no j-flat with j <= d-3 holds j+2 of them.
inline PointSet coflat_general_position(std::size_t d, std::size_t n, std::uint64_t seed) {
    detail::require(d >= 4, "coflat_general_position needs d >= 4");
    detail::require(n >= d, "coflat_general_position needs n >= d");
    Rng rng(seed);
    std::set<std::int64_t> params;
    const std::int64_t window = 2 * static_cast<std::int64_t>(n);
    while (params.size() < n) params.insert(rng.between(-window, window));
    PointSet ps;
    ps.dim = d;
    ps.points.reserve(n);
    for (std::int64_t s : params) {
        Point p(d, Rational(0));
        Integer pow_s = 1;
        for (std::size_t j = 0; j + 2 < d; ++j) {
            pow_s *= Integer(s);
            p[j] = Rational(pow_s);
        }
        ps.points.push_back(std::move(p));
    }
    return ps;
}

/// n distinct integer points drawn uniformly from [-bound, bound]^d, with
/// collisions redrawn. Asking for every lattice point returns the full cube
/// in lexicographic order instead of waiting out the coupon collector.
inline PointSet random_pointset(std::size_t d, std::size_t n, std::int64_t bound,
                                std::uint64_t seed) {
    detail::require(d >= 2, "random_pointset needs d >= 2");
    detail::require(n >= 1 && bound >= 1, "random_pointset needs n >= 1 and bound >= 1");
    const Integer total = ipow(Integer(2 * bound + 1), d);
    detail::require(Integer(n) <= total, "n exceeds the number of lattice points available");
    PointSet ps;
    ps.dim = d;
    ps.points.reserve(n);
    if (Integer(n) == total) {
        std::vector<std::int64_t> odo(d, -bound);
        auto advance = [&]() {
            std::size_t j = d;
            while (j > 0) {
                --j;
                if (++odo[j] <= bound) return true;
                odo[j] = -bound;
            }
            return false;
        };
        do {
            Point p(d);
            for (std::size_t j = 0; j < d; ++j) p[j] = Rational(Integer(odo[j]));
            ps.points.push_back(std::move(p));
        } while (advance());
        return ps;
    }
    Rng rng(seed);
    std::set<std::vector<std::int64_t>> seen;
    while (ps.points.size() < n) {
        std::vector<std::int64_t> q(d);
        for (std::size_t j = 0; j < d; ++j) q[j] = rng.between(-bound, bound);
        if (!seen.insert(q).second) continue;
        Point p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = Rational(Integer(q[j]));
        ps.points.push_back(std::move(p));
    }
    return ps;
}

}  // namespace krich::constructions
