#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "test_util.hpp"

using namespace krich;
using namespace krich::testutil;
using exactgeom::Flat;

TEST(GridConstruction, SmallestCase) {
    auto [ps, stats] = constructions::grid_construction(3, 2, 1);
    EXPECT_EQ(ps.dim, 3u);
    EXPECT_EQ(ps.points.size(), 24u);
    EXPECT_EQ(stats.n, 24u);
    EXPECT_EQ(stats.k, 4u);
    EXPECT_EQ(stats.predicted_rich_lower, Integer(2));
    ASSERT_TRUE(stats.grid_identity_lhs.has_value());
    ASSERT_TRUE(stats.grid_identity_rhs.has_value());
    EXPECT_EQ(*stats.grid_identity_lhs, Rational(54));
    EXPECT_EQ(*stats.grid_identity_rhs, Rational(54));
    ASSERT_TRUE(stats.predicted_ell.has_value());
    EXPECT_EQ(*stats.predicted_ell, Integer(6));
}

TEST(GridConstruction, IdentityHoldsAcrossCases) {
    const std::size_t cases[][3] = {{3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {3, 4, 1}, {3, 4, 2}};
    for (const auto& c : cases) {
        auto [ps, stats] = constructions::grid_construction(c[0], c[1], c[2]);
        const std::size_t d = c[0], u = c[1], v = c[2];
        std::size_t n = 1;
        for (std::size_t i = 0; i + 1 < d; ++i) n *= u;
        n *= d * u * v;  // u^(d-1) coordinates times the tall last axis
        EXPECT_EQ(ps.points.size(), n);
        EXPECT_EQ(stats.k, u * u);
        ASSERT_TRUE(stats.grid_identity_lhs.has_value());
        EXPECT_EQ(*stats.grid_identity_lhs, *stats.grid_identity_rhs);
        // Both sides equal n^d / k^(d+1) = d^d * u * v^d.
        const Rational n_r{Integer(n)}, k_r{Integer(stats.k)};
        EXPECT_EQ(*stats.grid_identity_lhs, rpow(n_r, d) / rpow(k_r, d + 1));
        EXPECT_EQ(*stats.grid_identity_rhs,
                  Rational(ipow(Integer(d), d) * Integer(u) * ipow(Integer(v), d)));
    }
}

TEST(GridConstruction, FamilyPlanesAreExactlyKRich) {
    for (auto [d, u, v] : {std::array<std::size_t, 3>{3, 2, 1},
                           std::array<std::size_t, 3>{3, 3, 2},
                           std::array<std::size_t, 3>{4, 2, 1}}) {
        auto [ps, stats] = constructions::grid_construction(d, u, v);
        auto family = constructions::grid_rich_family(d, u, v);
        EXPECT_EQ(Integer(family.size()), Integer(u) * ipow(Integer(v), d));
        std::set<std::string> keys;
        for (const Flat& h : family) {
            EXPECT_TRUE(h.is_hyperplane());
            EXPECT_EQ(exactgeom::count_on_flat(ps, h).first, stats.k);
            keys.insert(h.canonical_key());
        }
        EXPECT_EQ(keys.size(), family.size());
    }
}

TEST(GridConstruction, FourDimensionalPredictions) {
    auto [ps, stats] = constructions::grid_construction(4, 2, 1);
    EXPECT_EQ(ps.points.size(), 64u);
    EXPECT_EQ(stats.k, 8u);
    ASSERT_TRUE(stats.grid_identity_lhs.has_value());
    EXPECT_EQ(*stats.grid_identity_lhs, Rational(512));
    EXPECT_FALSE(stats.predicted_ell.has_value());
    ASSERT_TRUE(stats.predicted_ell_vertical.has_value());
    EXPECT_EQ(*stats.predicted_ell_vertical, Integer(16));
    ASSERT_TRUE(stats.predicted_ell_nonvertical_bound.has_value());
    EXPECT_EQ(*stats.predicted_ell_nonvertical_bound, Integer(4));
}

TEST(GridConstruction, ParameterValidation) {
    EXPECT_THROW(constructions::grid_construction(2, 3, 1), invalid_input);
    EXPECT_THROW(constructions::grid_construction(3, 2, 2), invalid_input);
    EXPECT_THROW(constructions::grid_construction(3, 1, 1), invalid_input);
}

TEST(SkewLines, SmallestCasePointsExact) {
    auto res = constructions::skew_lines_construction(2, 3);
    const PointSet expected = ps_of({{"0", "0", "0"},
                                     {"0", "1", "0"},
                                     {"0", "2", "0"},
                                     {"1", "0", "0"},
                                     {"1", "1", "1"},
                                     {"1", "2", "2"}});
    EXPECT_EQ(res.points.points, expected.points);
    EXPECT_EQ(res.stats.n, 6u);
    EXPECT_EQ(res.stats.k, 3u);
    ASSERT_TRUE(res.stats.predicted_ell.has_value());
    EXPECT_EQ(*res.stats.predicted_ell, Integer(3));
}

TEST(SkewLines, LinesContainTheirPoints) {
    for (auto [u, k] : {std::pair<std::size_t, std::size_t>{2, 5},
                        std::pair<std::size_t, std::size_t>{3, 3},
                        std::pair<std::size_t, std::size_t>{3, 5}}) {
        auto res = constructions::skew_lines_construction(u, k);
        ASSERT_EQ(res.lines.size(), u);
        EXPECT_EQ(res.points.points.size(), u * k);
        for (std::size_t i = 0; i < u; ++i) {
            EXPECT_EQ(res.lines[i].dim(), 1u);
            for (std::size_t s = 0; s < k; ++s) {
                EXPECT_TRUE(
                    exactgeom::flat_contains(res.lines[i], res.points.points[i * k + s]));
            }
        }
    }
}

TEST(SkewLines, PairwiseSkew) {
    auto res = constructions::skew_lines_construction(4, 4);
    for (std::size_t i = 0; i < res.lines.size(); ++i) {
        for (std::size_t j = i + 1; j < res.lines.size(); ++j) {
            EXPECT_FALSE(exactgeom::flats_intersect(res.lines[i], res.lines[j]));
            const auto di = exactgeom::directions(res.lines[i]);
            const auto dj = exactgeom::directions(res.lines[j]);
            ASSERT_EQ(di.size(), 1u);
            ASSERT_EQ(dj.size(), 1u);
            // Not parallel either: direction vectors are independent.
            std::vector<std::vector<Rational>> mat = {di[0], dj[0]};
            EXPECT_EQ(exactgeom::rref(mat).size(), 2u);
        }
    }
}

TEST(SkewLines, ParameterValidation) {
    EXPECT_THROW(constructions::skew_lines_construction(1, 3), invalid_input);
    EXPECT_THROW(constructions::skew_lines_construction(2, 2), invalid_input);
    EXPECT_THROW(constructions::skew_lines_construction(4, 3), invalid_input);
}

TEST(Coflat, PointsLieOnCodimensionTwoFlat) {
    const PointSet ps = constructions::coflat_general_position(4, 12, 7);
    EXPECT_EQ(ps.dim, 4u);
    EXPECT_EQ(ps.points.size(), 12u);
    const Flat carrier = flat_of(4, {{"0", "0", "1", "0", "0"}, {"0", "0", "0", "1", "0"}});
    for (const Point& p : ps.points) EXPECT_TRUE(exactgeom::flat_contains(carrier, p));
    auto hull = exactgeom::affine_hull(ps.points);
    ASSERT_TRUE(hull.has_value());
    EXPECT_EQ(*hull, carrier);
}

TEST(Coflat, GeneralPositionInsideCarrier) {
    const PointSet ps = constructions::coflat_general_position(5, 8, 3);
    EXPECT_EQ(ps.dim, 5u);
    // No 3 points collinear and no 4 on a 2-flat beyond what dim-3 hulls force:
    // on a degree-(d-2) moment curve, any d-1 points are affinely independent.
    EXPECT_EQ(richenum::richest_subflat(ps, 1).count(), 2u);
    EXPECT_EQ(richenum::richest_subflat(ps, 2).count(), 3u);
}

TEST(Coflat, SeedDeterminismAndVariation) {
    const PointSet a = constructions::coflat_general_position(4, 12, 7);
    const PointSet b = constructions::coflat_general_position(4, 12, 7);
    const PointSet c = constructions::coflat_general_position(4, 12, 8);
    EXPECT_EQ(a.points, b.points);
    EXPECT_NE(a.points, c.points);
}

TEST(Coflat, ParameterValidation) {
    EXPECT_THROW(constructions::coflat_general_position(3, 12, 1), invalid_input);
    EXPECT_THROW(constructions::coflat_general_position(4, 3, 1), invalid_input);
}

TEST(RandomPointset, Deterministic) {
    const PointSet a = constructions::random_pointset(3, 20, 10, 1);
    const PointSet b = constructions::random_pointset(3, 20, 10, 1);
    const PointSet c = constructions::random_pointset(3, 20, 10, 2);
    EXPECT_EQ(a.points, b.points);
    EXPECT_NE(a.points, c.points);
    EXPECT_EQ(a.points.size(), 20u);
    std::set<Point> distinct(a.points.begin(), a.points.end());
    EXPECT_EQ(distinct.size(), a.points.size());
    for (const Point& p : a.points)
        for (const Rational& x : p) {
            EXPECT_LE(x, Rational(10));
            EXPECT_GE(x, Rational(-10));
            EXPECT_EQ(den(x), Integer(1));
        }
}

TEST(RandomPointset, ExhaustsFullLattice) {
    const PointSet ps = constructions::random_pointset(2, 9, 1, 5);
    std::vector<Point> expected;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            expected.push_back(Point{Rational(x), Rational(y)});
    std::vector<Point> got = ps.points;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expected);
}

TEST(RandomPointset, RejectsOverfullRequest) {
    EXPECT_THROW(constructions::random_pointset(2, 10, 1, 1), invalid_input);
    EXPECT_THROW(constructions::random_pointset(1, 3, 1, 1), invalid_input);
}
