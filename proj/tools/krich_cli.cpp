// Command line front end: generate | enumerate | richest | audit.
// Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "krich/krich.hpp"

namespace {

using namespace krich;

void write_output(const std::string& bytes, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << bytes;
        std::cout.flush();
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    detail::require(f.good(), "cannot open output file '" + out_path + "'");
    f << bytes;
    f.flush();
    detail::require(f.good(), "failed writing output file '" + out_path + "'");
}

struct ReportOpts {
    std::string out_path;
    std::string format = "json";
    std::size_t threads = 1;
    std::string file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        cmd->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--threads", threads, "worker threads (speed only, output is identical)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("file", file, "point set JSON file")->required();
    }

    PointSet load() const { return harness::load_pointset(file); }

    void emit(const harness::Report& rep) const {
        write_output(harness::emit_report(rep, harness::parse_format(format)), out_path);
    }
};

int run(int argc, char** argv) {
    CLI::App app{"exact enumeration and audits of k-rich flats and spheres"};
    app.require_subcommand(1);

    // generate -----------------------------------------------------------
    CLI::App* generate = app.add_subcommand("generate", "emit a construction as point set JSON");
    generate->require_subcommand(1);
    std::string gen_out;
    std::size_t gen_threads = 1;  // accepted for interface uniformity; generation is serial
    for (CLI::App* g : {generate}) {
        g->add_option("--out", gen_out, "write the point set here instead of stdout");
        g->add_option("--threads", gen_threads, "accepted and ignored")
            ->check(CLI::PositiveNumber);
    }

    std::size_t grid_d = 3, grid_u = 2, grid_v = 1;
    CLI::App* gen_grid = generate->add_subcommand("grid", "integer grid with a rich hyperplane family");
    gen_grid->fallthrough();
    gen_grid->add_option("--d", grid_d, "ambient dimension")->required();
    gen_grid->add_option("--u", grid_u, "base extent")->required();
    gen_grid->add_option("--v", grid_v, "slope extent")->required();
    gen_grid->callback([&] {
        auto [ps, stats] = constructions::grid_construction(grid_d, grid_u, grid_v);
        (void)stats;
        write_output(harness::pointset_to_string(ps), gen_out);
    });

    std::size_t skew_u = 2, skew_k = 3;
    CLI::App* gen_skew = generate->add_subcommand("skewlines", "points on pairwise skew lines");
    gen_skew->fallthrough();
    gen_skew->add_option("--u", skew_u, "number of lines")->required();
    gen_skew->add_option("--k", skew_k, "points per line")->required();
    gen_skew->callback([&] {
        write_output(
            harness::pointset_to_string(constructions::skew_lines_construction(skew_u, skew_k).points),
            gen_out);
    });

    std::size_t coflat_d = 4, coflat_n = 12;
    std::uint64_t coflat_seed = 0;
    CLI::App* gen_coflat =
        generate->add_subcommand("coflat", "general-position points on a codimension-2 flat");
    gen_coflat->fallthrough();
    gen_coflat->add_option("--d", coflat_d, "ambient dimension")->required();
    gen_coflat->add_option("--n", coflat_n, "point count")->required();
    gen_coflat->add_option("--seed", coflat_seed, "rng seed");
    gen_coflat->callback([&] {
        write_output(harness::pointset_to_string(
                         constructions::coflat_general_position(coflat_d, coflat_n, coflat_seed)),
                     gen_out);
    });

    std::size_t rand_d = 3, rand_n = 10;
    std::int64_t rand_bound = 10;
    std::uint64_t rand_seed = 0;
    CLI::App* gen_random = generate->add_subcommand("random", "distinct integer points");
    gen_random->fallthrough();
    gen_random->add_option("--d", rand_d, "ambient dimension")->required();
    gen_random->add_option("--n", rand_n, "point count")->required();
    gen_random->add_option("--bound", rand_bound, "coordinates drawn from [-bound, bound]")
        ->required();
    gen_random->add_option("--seed", rand_seed, "rng seed");
    gen_random->callback([&] {
        write_output(harness::pointset_to_string(
                         constructions::random_pointset(rand_d, rand_n, rand_bound, rand_seed)),
                     gen_out);
    });

    // enumerate ----------------------------------------------------------
    CLI::App* enumerate = app.add_subcommand("enumerate", "list k-rich objects");
    enumerate->require_subcommand(1);

    ReportOpts enum_hyp_opts;
    std::size_t enum_hyp_k = 0;
    CLI::App* enum_hyp = enumerate->add_subcommand("hyperplanes", "spanned k-rich hyperplanes");
    enum_hyp->add_option("--k", enum_hyp_k, "richness threshold")->required();
    enum_hyp_opts.attach(enum_hyp);
    enum_hyp->callback([&] {
        PointSet ps = enum_hyp_opts.load();
        harness::RichFlatFamily fam =
            richenum::k_rich_hyperplanes(ps, enum_hyp_k, enum_hyp_opts.threads);
        enum_hyp_opts.emit(harness::report_flat_family(fam, "hyperplane"));
    });

    ReportOpts enum_flat_opts;
    std::size_t enum_flat_k = 0, enum_flat_t = 0;
    CLI::App* enum_flat = enumerate->add_subcommand("flats", "spanned k-rich (t-1)-flats");
    enum_flat->add_option("--k", enum_flat_k, "richness threshold")->required();
    enum_flat->add_option("--t", enum_flat_t, "flats are spanned by t points")->required();
    enum_flat_opts.attach(enum_flat);
    enum_flat->callback([&] {
        PointSet ps = enum_flat_opts.load();
        harness::RichFlatFamily fam =
            richenum::k_rich_flats(ps, enum_flat_t, enum_flat_k, enum_flat_opts.threads);
        enum_flat_opts.emit(harness::report_flat_family(fam, "flat"));
    });

    ReportOpts enum_sph_opts;
    std::size_t enum_sph_k = 0;
    CLI::App* enum_sph = enumerate->add_subcommand("spheres", "spanned k-rich (d-1)-spheres");
    enum_sph->add_option("--k", enum_sph_k, "richness threshold")->required();
    enum_sph_opts.attach(enum_sph);
    enum_sph->callback([&] {
        PointSet ps = enum_sph_opts.load();
        harness::RichSphereFamily fam =
            richenum::k_rich_spheres(ps, enum_sph_k, enum_sph_opts.threads);
        enum_sph_opts.emit(harness::report_sphere_family(fam));
    });

    // richest ------------------------------------------------------------
    CLI::App* richest = app.add_subcommand("richest", "most populated low-dimensional object");
    richest->require_subcommand(1);

    ReportOpts rich_flat_opts;
    std::size_t rich_flat_dim = 1;
    CLI::App* rich_flat = richest->add_subcommand("flat", "richest flat of a given dimension");
    rich_flat->add_option("--dim", rich_flat_dim, "flat dimension, at most d-2")->required();
    rich_flat_opts.attach(rich_flat);
    rich_flat->callback([&] {
        PointSet ps = rich_flat_opts.load();
        harness::RichestFlat rich =
            richenum::richest_subflat(ps, rich_flat_dim, rich_flat_opts.threads);
        rich_flat_opts.emit(harness::report_richest_flat(rich, rich_flat_dim));
    });

    ReportOpts rich_sph_opts;
    CLI::App* rich_sph = richest->add_subcommand("sphere", "richest (d-2)-sphere");
    rich_sph_opts.attach(rich_sph);
    rich_sph->callback([&] {
        PointSet ps = rich_sph_opts.load();
        harness::RichestSphere rich = richenum::richest_subsphere(ps, rich_sph_opts.threads);
        rich_sph_opts.emit(harness::report_richest_sphere(rich));
    });

    // audit ----------------------------------------------------------------
    CLI::App* audit = app.add_subcommand("audit", "exact-constant statement audits");
    audit->require_subcommand(1);

    ReportOpts lemma_opts;
    std::size_t lemma_k = 0;
    CLI::App* audit_lemma = audit->add_subcommand("lemma1", "pair-count incidence audit");
    audit_lemma->add_option("--k", lemma_k, "richness threshold")->required();
    lemma_opts.attach(audit_lemma);
    audit_lemma->callback([&] {
        PointSet ps = lemma_opts.load();
        lemma_opts.emit(
            harness::report_lemma1(harness::run_lemma1_audit(ps, lemma_k, lemma_opts.threads)));
    });

    ReportOpts thm_opts;
    std::string thm_which;
    std::size_t thm_k = 0, thm_t = 0;
    std::string thm_alpha;
    CLI::App* audit_thm = audit->add_subcommand("theorem", "rich-object count audit");
    audit_thm->add_option("--which", thm_which, "hyperplane | sphere | flat")
        ->required()
        ->check(CLI::IsMember({"hyperplane", "sphere", "flat"}));
    audit_thm->add_option("--k", thm_k, "richness threshold")->required();
    audit_thm->add_option("--alpha", thm_alpha, "exponent as p/q")->required();
    audit_thm->add_option("--t", thm_t, "span size for the flat statement");
    thm_opts.attach(audit_thm);
    audit_thm->callback([&] {
        PointSet ps = thm_opts.load();
        harness::TheoremKind kind = harness::parse_theorem_kind(thm_which);
        detail::require(kind != harness::TheoremKind::flat || thm_t != 0,
                        "--t is required for the flat statement");
        Rational alpha = parse_rational(thm_alpha);
        thm_opts.emit(harness::report_theorem(
            harness::run_theorem_audit(ps, kind, thm_k, alpha, thm_t, thm_opts.threads)));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help requests exit 0; any command line problem is invalid input.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const krich::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const krich::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
