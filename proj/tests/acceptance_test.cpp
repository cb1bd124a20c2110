// Acceptance gate: ten production criteria, one printed pass/fail line each.
// Every check is exact (rational identities, canonical-form equality, byte
// comparisons); nothing here is tolerance-based.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "test_util.hpp"

using namespace krich;
using namespace krich::testutil;
using exactgeom::Flat;
using richenum::RichFlatFamily;

namespace {

class Banner {
  public:
    Banner(int id, std::string label) : id_(id), label_(std::move(label)) {}
    ~Banner() {
        std::printf("[criterion %d] %s: %s\n", id_,
                    ::testing::Test::HasFailure() ? "FAIL" : "PASS", label_.c_str());
        std::fflush(stdout);
    }

  private:
    int id_;
    std::string label_;
};

const std::array<std::array<std::size_t, 3>, 6> kGridCases = {{
    {3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {3, 4, 1}, {3, 4, 2}, {4, 2, 1}}};

PointSet circle_plus_generic_3d() {
    return ps_of({{"1", "0", "0"},
                  {"0", "1", "0"},
                  {"0", "-1", "0"},
                  {"-3/5", "4/5", "0"},
                  {"3/5", "4/5", "0"},
                  {"0", "0", "1"},
                  {"1", "2", "3"},
                  {"-2", "1", "5"},
                  {"3", "-1", "2"}});
}

PointSet collinear_5() {
    return ps_of({{"0", "0", "0"},
                  {"1", "0", "0"},
                  {"2", "0", "0"},
                  {"3", "0", "0"},
                  {"4", "0", "0"}});
}

Rational random_rational(Rng& rng) {
    return Rational(Integer(rng.between(-50, 50)), Integer(rng.between(1, 6)));
}

Point random_point(Rng& rng, std::size_t d) {
    Point p(d);
    for (Rational& x : p) x = random_rational(rng);
    return p;
}

// A point of h obtained by solving the last coordinate; h must be non-vertical.
Point point_on(const Flat& h, Point base) {
    const exactgeom::Row& row = h.eqs[0];
    const std::size_t d = h.ambient;
    Rational rest(0);
    for (std::size_t i = 0; i + 1 < d; ++i) rest += row[i] * base[i];
    base[d - 1] = (row[d] - rest) / row[d - 1];
    return base;
}

std::multiset<std::size_t> count_multiset(const RichFlatFamily& fam) {
    std::multiset<std::size_t> counts;
    for (const auto& fm : fam.members) counts.insert(fm.members.size());
    return counts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::path(::testing::TempDir()) / name).string();
}

int run_cli(const std::string& args, std::string* captured = nullptr) {
    const std::string out = temp_path("cli-stdout.bin");
    const std::string err = temp_path("cli-stderr.bin");
    const std::string cmd =
        std::string(KRICH_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int raw = std::system(cmd.c_str());
    if (captured) *captured = read_file(out);
    if (raw == -1) return -1;
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST(Acceptance, Criterion01_GridIdentities) {
    Banner banner(1, "grid constructions: counts, families, exact identity");
    for (const auto& c : kGridCases) {
        const std::size_t d = c[0], u = c[1], v = c[2];
        SCOPED_TRACE("grid d=" + std::to_string(d) + " u=" + std::to_string(u) +
                     " v=" + std::to_string(v));
        auto [ps, stats] = constructions::grid_construction(d, u, v);
        const Integer n_expected = Integer(d) * ipow(Integer(u), d) * Integer(v);
        EXPECT_EQ(Integer(ps.points.size()), n_expected);
        EXPECT_EQ(Integer(stats.k), ipow(Integer(u), d - 1));

        const auto family = constructions::grid_rich_family(d, u, v);
        EXPECT_EQ(Integer(family.size()), Integer(u) * ipow(Integer(v), d));
        for (const Flat& h : family)
            EXPECT_EQ(exactgeom::count_on_flat(ps, h).first, stats.k);

        RichFlatFamily fam = richenum::k_rich_hyperplanes(ps, stats.k);
        EXPECT_GE(Integer(fam.members.size()), Integer(u) * ipow(Integer(v), d));

        ASSERT_TRUE(stats.grid_identity_lhs.has_value());
        ASSERT_TRUE(stats.grid_identity_rhs.has_value());
        EXPECT_EQ(*stats.grid_identity_lhs, *stats.grid_identity_rhs);
        EXPECT_EQ(rpow(Rational(n_expected), d) / rpow(Rational(Integer(stats.k)), d + 1),
                  *stats.grid_identity_rhs);
    }
    // u > v >= 1 excludes (u, v) = (2, 2); the generator says so loudly.
    EXPECT_THROW(constructions::grid_construction(3, 2, 2), invalid_input);
}

TEST(Acceptance, Criterion02_GridRichestLine) {
    Banner banner(2, "grid richest line count equals d*u*v");
    for (const auto& c : kGridCases) {
        if (c[0] != 3) continue;
        const std::size_t u = c[1], v = c[2];
        SCOPED_TRACE("grid u=" + std::to_string(u) + " v=" + std::to_string(v));
        auto [ps, stats] = constructions::grid_construction(3, u, v);
        const auto rich = richenum::richest_subflat(ps, 1);
        EXPECT_EQ(rich.count(), 3 * u * v);
        ASSERT_TRUE(stats.predicted_ell.has_value());
        EXPECT_EQ(Integer(rich.count()), *stats.predicted_ell);
    }
}

TEST(Acceptance, Criterion03_SkewLines) {
    Banner banner(3, "skew lines: richest = k, witness is a construction line");
    for (auto [u, k] : {std::pair<std::size_t, std::size_t>{2, 3},
                        std::pair<std::size_t, std::size_t>{2, 5},
                        std::pair<std::size_t, std::size_t>{3, 3},
                        std::pair<std::size_t, std::size_t>{3, 5}}) {
        SCOPED_TRACE("skew u=" + std::to_string(u) + " k=" + std::to_string(k));
        auto skew = constructions::skew_lines_construction(u, k);
        const auto rich = richenum::richest_subflat(skew.points, 1);
        EXPECT_EQ(rich.count(), k);

        RichFlatFamily fam = richenum::k_rich_hyperplanes(skew.points, k);
        ASSERT_TRUE(fam.infinite_witness.has_value());
        bool witness_is_construction_line = false;
        for (const Flat& line : skew.lines)
            witness_is_construction_line =
                witness_is_construction_line || fam.infinite_witness->flat == line;
        EXPECT_TRUE(witness_is_construction_line);

        for (std::size_t i = 0; i < skew.lines.size(); ++i) {
            for (std::size_t j = i + 1; j < skew.lines.size(); ++j) {
                EXPECT_FALSE(exactgeom::flats_intersect(skew.lines[i], skew.lines[j]));
                EXPECT_NE(exactgeom::directions(skew.lines[i]),
                          exactgeom::directions(skew.lines[j]));
            }
        }
    }
}

TEST(Acceptance, Criterion04_CoflatWitness) {
    Banner banner(4, "coflat: carrier witness and thin lines");
    const PointSet ps = constructions::coflat_general_position(4, 12, 7);
    RichFlatFamily fam = richenum::k_rich_hyperplanes(ps, 4);
    EXPECT_TRUE(fam.members.empty());
    ASSERT_TRUE(fam.infinite_witness.has_value());
    const Flat carrier =
        flat_of(4, {{"0", "0", "1", "0", "0"}, {"0", "0", "0", "1", "0"}});
    EXPECT_EQ(fam.infinite_witness->flat, carrier);
    EXPECT_EQ(fam.infinite_witness->members.size(), 12u);
    EXPECT_EQ(richenum::richest_subflat(ps, 1).count(), 2u);
}

TEST(Acceptance, Criterion05_Lemma1Audit) {
    Banner banner(5, "pair-count audit holds on constructions and random sets");
    auto check = [](const PointSet& ps, std::size_t k, const std::string& label) {
        SCOPED_TRACE(label);
        const auto rep = harness::run_lemma1_audit(ps, k);
        EXPECT_TRUE(rep.audit.holds);
        EXPECT_LE(rep.audit.cherry_lhs, rep.audit.cherry_rhs);
        if (rep.audit.product_applicable)
            EXPECT_LE(rep.audit.product_lhs, rep.audit.product_rhs);
    };
    for (const auto& c : kGridCases) {
        auto [ps, stats] = constructions::grid_construction(c[0], c[1], c[2]);
        check(ps, stats.k,
              "grid d=" + std::to_string(c[0]) + " u=" + std::to_string(c[1]) +
                  " v=" + std::to_string(c[2]));
    }
    for (auto [u, k] : {std::pair<std::size_t, std::size_t>{2, 3},
                        std::pair<std::size_t, std::size_t>{2, 5},
                        std::pair<std::size_t, std::size_t>{3, 3},
                        std::pair<std::size_t, std::size_t>{3, 5}}) {
        check(constructions::skew_lines_construction(u, k).points, k,
              "skew u=" + std::to_string(u) + " k=" + std::to_string(k));
    }
    check(constructions::coflat_general_position(4, 12, 7), 4, "coflat d=4 n=12");
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        check(constructions::random_pointset(3, 25, 10, seed), 3,
              "random seed " + std::to_string(seed));
    }
}

TEST(Acceptance, Criterion06_TransformProperties) {
    Banner banner(6, "duality involution/incidence, lifting incidence, round trips");
    for (std::size_t d : {2u, 3u, 4u}) {
        Rng rng(1000 + d);
        for (int iter = 0; iter < 1000; ++iter) {
            const Point p = random_point(rng, d);
            const Point q = random_point(rng, d);
            const Flat p_dual = transforms::dualize_point(p);
            const Flat q_dual = transforms::dualize_point(q);
            ASSERT_EQ(transforms::dualize_hyperplane(p_dual), p);
            ASSERT_EQ(transforms::dualize_point(transforms::dualize_hyperplane(q_dual)),
                      q_dual);
            ASSERT_EQ(exactgeom::flat_contains(q_dual, p),
                      exactgeom::flat_contains(p_dual, q));
            const Point on = point_on(q_dual, p);
            ASSERT_TRUE(exactgeom::flat_contains(q_dual, on));
            ASSERT_TRUE(exactgeom::flat_contains(transforms::dualize_point(on), q));
        }
    }
    for (std::size_t d : {2u, 3u}) {
        Rng rng(2000 + d);
        for (int iter = 0; iter < 500; ++iter) {
            const Point center = random_point(rng, d);
            const Rational radius(Integer(rng.between(1, 9)), Integer(rng.between(1, 3)));
            const exactgeom::Sphere sph{center, radius * radius};
            const Flat lifted = transforms::lift(sph);

            const Point probe = random_point(rng, d);
            ASSERT_EQ(exactgeom::sphere_contains(sph, probe),
                      exactgeom::flat_contains(lifted, transforms::lift(probe)));

            Point on = center;  // rational circle parametrization in two axes
            const Rational t = random_rational(rng);
            const Rational denom = Rational(1) + t * t;
            on[0] += radius * (Rational(1) - t * t) / denom;
            on[1] += radius * (t + t) / denom;
            ASSERT_TRUE(exactgeom::sphere_contains(sph, on));
            ASSERT_TRUE(exactgeom::flat_contains(lifted, transforms::lift(on)));

            const auto back = transforms::unlift_hyperplane(lifted);
            ASSERT_TRUE(std::holds_alternative<exactgeom::Sphere>(back));
            ASSERT_EQ(std::get<exactgeom::Sphere>(back), sph);
        }
    }
}

TEST(Acceptance, Criterion07_SpherePipeline) {
    Banner banner(7, "sphere pipeline: circle witness found, collinear yields nothing");
    const PointSet ps = circle_plus_generic_3d();
    const auto rich = richenum::richest_subsphere(ps);
    EXPECT_EQ(rich.count, 5u);
    ASSERT_TRUE(rich.sphere.has_value());
    EXPECT_EQ(rich.sphere->carrier, hyper(3, {"0", "0", "1", "0"}));
    EXPECT_EQ(rich.sphere->center, pt({"0", "0", "0"}));
    EXPECT_EQ(rich.sphere->radius_sq, Rational(1));

    const auto fam = richenum::k_rich_spheres(ps, 5);
    ASSERT_TRUE(fam.infinite_witness.has_value());
    EXPECT_EQ(fam.infinite_witness->members, (std::vector<std::size_t>{0, 1, 2, 3, 4}));

    const auto none = richenum::k_rich_spheres(collinear_5(), 5);
    EXPECT_TRUE(none.members.empty());
    EXPECT_FALSE(none.infinite_witness.has_value());
}

TEST(Acceptance, Criterion08_FlatTransport) {
    Banner banner(8, "embedding/projection preserve the rich-count multiset");
    auto [grid, stats] = constructions::grid_construction(3, 2, 1);
    (void)stats;
    const RichFlatFamily original = richenum::k_rich_hyperplanes(grid, 4);
    const std::size_t ell_original = richenum::richest_subflat(grid, 1).count();

    auto [emb_map, embedded] = transforms::generic_embedding(grid, 4, 99);
    EXPECT_EQ(embedded.points.size(), grid.points.size());
    const RichFlatFamily lifted = richenum::k_rich_flats(embedded, 3, 4);
    EXPECT_EQ(count_multiset(lifted), count_multiset(original));
    EXPECT_EQ(richenum::richest_subflat(embedded, 1).count(), ell_original);

    auto [proj_map, projected] = transforms::generic_projection(embedded, 3, 17);
    EXPECT_EQ(projected.points.size(), grid.points.size());
    EXPECT_EQ(proj_map.verified_against,
              richenum::spanned_flats_members(embedded, 3, 2).size());
    EXPECT_GT(proj_map.verified_against, 0u);
    std::set<Point> images(projected.points.begin(), projected.points.end());
    EXPECT_EQ(images.size(), projected.points.size());

    const RichFlatFamily back = richenum::k_rich_hyperplanes(projected, 4);
    EXPECT_EQ(count_multiset(back), count_multiset(original));
    EXPECT_EQ(richenum::richest_subflat(projected, 1).count(), ell_original);
    EXPECT_EQ(back.infinite_witness.has_value(), original.infinite_witness.has_value());
}

TEST(Acceptance, Criterion09_TheoremAuditNumbers) {
    Banner banner(9, "grid theorem audit: exact ratio and constant bound");
    for (std::size_t u : {2u, 3u, 4u}) {
        SCOPED_TRACE("grid u=" + std::to_string(u) + " v=1");
        auto [ps, stats] = constructions::grid_construction(3, u, 1);
        const std::size_t k = u * u;
        ASSERT_EQ(stats.k, k);
        const auto a =
            harness::run_theorem_audit(ps, harness::TheoremKind::hyperplane, k, Rational(4));
        EXPECT_FALSE(a.exploratory);
        // ell = 3u exactly; the conclusion ratio ell / k^(1/2) is 3uv / u = 3.
        EXPECT_EQ(a.ell, 3 * u);
        EXPECT_EQ(a.conclusion_exponent, Rational(1, 2));
        EXPECT_EQ(a.conclusion_lhs_pow, Integer(9 * u * u));  // (3u)^2
        EXPECT_EQ(a.conclusion_rhs_pow, Integer(u * u));      // k^1
        EXPECT_TRUE(a.conclusion_holds_for_unit_constant);
        ASSERT_TRUE(a.conclusion_ratio.has_value());
        EXPECT_EQ(*a.conclusion_ratio, Rational(3));

        // Hypothesis side: denominator n^3/k^4 + n/k = 27u + 3u = 30u, and the
        // u-plane construction family alone forces c_required >= u/(30u) = 1/30.
        ASSERT_TRUE(a.hypothesis_denominator.has_value());
        EXPECT_EQ(*a.hypothesis_denominator, Rational(Integer(30 * u)));
        const std::size_t family_size = constructions::grid_rich_family(3, u, 1).size();
        EXPECT_EQ(family_size, u);
        EXPECT_GE(a.m_spanned, family_size);
        EXPECT_EQ(Rational(Integer(family_size)) / *a.hypothesis_denominator,
                  Rational(1, 30));
        if (a.c_required) {
            EXPECT_GE(*a.c_required, Rational(1, 30));
        } else {
            // Witness regime (3u >= u^2 only for u <= 3): the audit reports the
            // infinite family instead of a finite constant.
            EXPECT_TRUE(a.infinite_witness_present);
            EXPECT_LE(u, 3u);
        }
    }
}

TEST(Acceptance, Criterion10_CliDeterminism) {
    Banner banner(10, "CLI: thread count never changes emitted bytes");
    const std::string grid_file = temp_path("acc-grid.json");
    const std::string coflat_file = temp_path("acc-coflat.json");
    const std::string circle_file = temp_path("acc-circle.json");
    ASSERT_EQ(run_cli("generate grid --d 3 --u 2 --v 1 --out " + grid_file), 0);
    ASSERT_EQ(run_cli("generate coflat --d 4 --n 12 --seed 7 --out " + coflat_file), 0);
    harness::save_pointset(circle_plus_generic_3d(), circle_file);

    const std::vector<std::string> commands = {
        "generate grid --d 3 --u 2 --v 1",
        "generate skewlines --u 2 --k 3",
        "generate coflat --d 4 --n 12 --seed 7",
        "generate random --d 3 --n 10 --bound 5 --seed 1",
        "enumerate hyperplanes --k 4 --format json " + grid_file,
        "enumerate hyperplanes --k 4 --format csv " + grid_file,
        "enumerate flats --k 4 --t 3 --format json " + coflat_file,
        "enumerate flats --k 4 --t 3 --format csv " + coflat_file,
        "enumerate spheres --k 5 --format json " + circle_file,
        "enumerate spheres --k 5 --format csv " + circle_file,
        "richest flat --dim 1 --format json " + grid_file,
        "richest flat --dim 1 --format csv " + grid_file,
        "richest sphere --format json " + circle_file,
        "richest sphere --format csv " + circle_file,
        "audit lemma1 --k 4 --format json " + grid_file,
        "audit lemma1 --k 4 --format csv " + grid_file,
        "audit theorem --which hyperplane --k 4 --alpha 4 --format json " + grid_file,
        "audit theorem --which hyperplane --k 4 --alpha 4 --format csv " + grid_file,
        "audit theorem --which hyperplane --k 4 --alpha 9/2 --format json " + grid_file,
        "audit theorem --which sphere --k 5 --alpha 4 --format json " + circle_file,
        "audit theorem --which flat --k 4 --alpha 4 --t 3 --format json " + coflat_file,
        "audit theorem --which flat --k 4 --alpha 4 --t 3 --format csv " + coflat_file,
    };
    for (const std::string& cmd : commands) {
        SCOPED_TRACE(cmd);
        std::string once, eight;
        EXPECT_EQ(run_cli(cmd + " --threads 1", &once), 0);
        EXPECT_EQ(run_cli(cmd + " --threads 8", &eight), 0);
        EXPECT_FALSE(once.empty());
        EXPECT_EQ(once, eight);
    }

    // Contractual exit codes: bad input is 1, never a crash.
    EXPECT_EQ(run_cli("enumerate hyperplanes --k 2 " + grid_file), 1);
    EXPECT_EQ(run_cli("enumerate hyperplanes --k 4 " + temp_path("no-such-file.json")), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
    EXPECT_EQ(run_cli("--help"), 0);
}
