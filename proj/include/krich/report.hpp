#pragma once

#include <sstream>
#include <string>

#include "krich/audit.hpp"
#include "krich/enumerate.hpp"
#include "krich/io.hpp"

namespace krich::harness {

/// A command result rendered both ways up front; emit picks one. Building
/// both keeps the two formats in one place so they cannot drift apart.
struct Report {
    Json json;
    std::string csv;
};

inline std::string emit_report(const Report& rep, Format fmt) {
    return fmt == Format::json ? rep.json.dump(2) + "\n" : rep.csv;
}

namespace detail_report {

inline void csv_row(std::ostringstream& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const std::string& c : cells) {
        if (!first) out << ',';
        out << c;
        first = false;
    }
    out << '\n';
}

}  // namespace detail_report

inline Report report_flat_family(const RichFlatFamily& fam, const std::string& label) {
    Report rep;
    rep.json["command"] = "enumerate";
    rep.json["object"] = label;
    rep.json["object_dim"] = fam.object_dim;
    rep.json["k"] = fam.k;
    rep.json["count"] = fam.members.size();
    Json arr = Json::array();
    for (const richenum::FlatMember& fm : fam.members) {
        Json row;
        row["count"] = fm.members.size();
        row["members"] = indices_to_json(fm.members);
        row["flat"] = flat_to_json(fm.flat);
        arr.push_back(std::move(row));
    }
    rep.json["rich"] = std::move(arr);
    if (fam.infinite_witness) {
        Json w;
        w["count"] = fam.infinite_witness->members.size();
        w["members"] = indices_to_json(fam.infinite_witness->members);
        w["flat"] = flat_to_json(fam.infinite_witness->flat);
        rep.json["infinite_witness"] = std::move(w);
    } else {
        rep.json["infinite_witness"] = nullptr;
    }

    std::ostringstream csv;
    detail_report::csv_row(csv, {"role", "count", "members", "object"});
    for (const richenum::FlatMember& fm : fam.members)
        detail_report::csv_row(csv, {"member", std::to_string(fm.members.size()),
                                     indices_to_csv_token(fm.members),
                                     flat_to_csv_token(fm.flat)});
    if (fam.infinite_witness)
        detail_report::csv_row(csv,
                               {"witness",
                                std::to_string(fam.infinite_witness->members.size()),
                                indices_to_csv_token(fam.infinite_witness->members),
                                flat_to_csv_token(fam.infinite_witness->flat)});
    rep.csv = csv.str();
    return rep;
}

inline Report report_sphere_family(const RichSphereFamily& fam) {
    Report rep;
    rep.json["command"] = "enumerate";
    rep.json["object"] = "sphere";
    rep.json["k"] = fam.k;
    rep.json["count"] = fam.members.size();
    Json arr = Json::array();
    for (const richenum::SphereMember& sm : fam.members) {
        Json row;
        row["count"] = sm.members.size();
        row["members"] = indices_to_json(sm.members);
        row["sphere"] = sphere_to_json(sm.sphere);
        arr.push_back(std::move(row));
    }
    rep.json["rich"] = std::move(arr);
    if (fam.infinite_witness) {
        Json w;
        w["count"] = fam.infinite_witness->members.size();
        w["members"] = indices_to_json(fam.infinite_witness->members);
        w["cosphere"] = cosphere_to_json(fam.infinite_witness->sphere);
        rep.json["infinite_witness"] = std::move(w);
    } else {
        rep.json["infinite_witness"] = nullptr;
    }

    std::ostringstream csv;
    detail_report::csv_row(csv, {"role", "count", "members", "object"});
    for (const richenum::SphereMember& sm : fam.members)
        detail_report::csv_row(csv, {"member", std::to_string(sm.members.size()),
                                     indices_to_csv_token(sm.members),
                                     sphere_to_csv_token(sm.sphere)});
    if (fam.infinite_witness)
        detail_report::csv_row(
            csv, {"witness", std::to_string(fam.infinite_witness->members.size()),
                  indices_to_csv_token(fam.infinite_witness->members),
                  flat_to_csv_token(fam.infinite_witness->sphere.lifted)});
    rep.csv = csv.str();
    return rep;
}

inline Report report_richest_flat(const RichestFlat& rich, std::size_t object_dim) {
    Report rep;
    rep.json["command"] = "richest";
    rep.json["object"] = "flat";
    rep.json["object_dim"] = object_dim;
    rep.json["count"] = rich.count();
    rep.json["members"] = indices_to_json(rich.members);
    rep.json["flat"] = flat_to_json(rich.flat);

    std::ostringstream csv;
    detail_report::csv_row(csv, {"count", "members", "object"});
    detail_report::csv_row(csv, {std::to_string(rich.count()),
                                 indices_to_csv_token(rich.members),
                                 flat_to_csv_token(rich.flat)});
    rep.csv = csv.str();
    return rep;
}

inline Report report_richest_sphere(const RichestSphere& rich) {
    Report rep;
    rep.json["command"] = "richest";
    rep.json["object"] = "sphere";
    rep.json["count"] = rich.count;
    rep.json["members"] = indices_to_json(rich.members);
    rep.json["cosphere"] = rich.sphere ? cosphere_to_json(*rich.sphere) : Json(nullptr);

    std::ostringstream csv;
    detail_report::csv_row(csv, {"count", "members", "object"});
    detail_report::csv_row(csv,
                           {std::to_string(rich.count), indices_to_csv_token(rich.members),
                            rich.sphere ? flat_to_csv_token(rich.sphere->lifted) : std::string()});
    rep.csv = csv.str();
    return rep;
}

inline Report report_lemma1(const Lemma1Report& l) {
    const Lemma1Audit& a = l.audit;
    Report rep;
    rep.json["command"] = "audit";
    rep.json["statement"] = "lemma1";
    rep.json["k"] = l.k;
    rep.json["n"] = a.n;
    rep.json["m"] = a.m;
    rep.json["incidences"] = a.total.str();
    rep.json["ell"] = a.ell;
    rep.json["pair_count_lhs"] = a.cherry_lhs.str();
    rep.json["pair_count_rhs"] = a.cherry_rhs.str();
    rep.json["product_form_lhs"] = a.product_lhs.str();
    rep.json["product_form_rhs"] = a.product_rhs.str();
    rep.json["product_form_applicable"] = a.product_applicable;
    rep.json["holds"] = a.holds;

    std::ostringstream csv;
    detail_report::csv_row(csv, {"k", "n", "m", "incidences", "ell", "pair_count_lhs",
                                 "pair_count_rhs", "product_form_lhs", "product_form_rhs",
                                 "product_form_applicable", "holds"});
    detail_report::csv_row(csv, {std::to_string(l.k), std::to_string(a.n), std::to_string(a.m),
                                 a.total.str(), std::to_string(a.ell),
                                 a.cherry_lhs.str(), a.cherry_rhs.str(), a.product_lhs.str(),
                                 a.product_rhs.str(), a.product_applicable ? "true" : "false",
                                 a.holds ? "true" : "false"});
    rep.csv = csv.str();
    return rep;
}

namespace detail_report {

inline Json rational_or_null(const std::optional<Rational>& r) {
    return r ? Json(format_rational(*r)) : Json(nullptr);
}

inline std::string rational_or_empty(const std::optional<Rational>& r) {
    return r ? format_rational(*r) : std::string();
}

inline void theorem_csv_header(std::ostringstream& csv) {
    csv_row(csv, {"kind", "d", "t", "n", "k", "alpha", "exploratory", "rich_count",
                  "infinite_witness_present", "ell", "k_alpha", "k_alpha_floor",
                  "hypothesis_denominator", "c_required", "c_required_lower",
                  "c_required_upper", "conclusion_exponent", "conclusion_lhs_pow",
                  "conclusion_rhs_pow", "conclusion_holds_for_unit_constant",
                  "conclusion_ratio"});
}

}  // namespace detail_report

inline Report report_theorem(const TheoremAudit& a) {
    Report rep;
    Json& j = rep.json;
    j["command"] = "audit";
    j["statement"] = "theorem";
    j["kind"] = theorem_kind_name(a.kind);
    j["d"] = a.d;
    if (a.kind == TheoremKind::flat)
        j["t"] = a.t;
    else
        j["t"] = nullptr;
    j["n"] = a.n;
    j["k"] = a.k;
    j["alpha"] = format_rational(a.alpha);
    j["alpha_display"] = to_display(a.alpha);
    j["exploratory"] = a.exploratory;
    j["rich_count"] = a.m_spanned;
    j["infinite_witness_present"] = a.infinite_witness_present;
    j["ell"] = a.ell;
    j["k_alpha"] = detail_report::rational_or_null(a.k_alpha);
    j["k_alpha_floor"] = a.k_alpha_floor.str();
    j["hypothesis_denominator"] = detail_report::rational_or_null(a.hypothesis_denominator);
    j["c_required"] = detail_report::rational_or_null(a.c_required);
    if (a.c_required) j["c_required_display"] = to_display(*a.c_required);
    if (a.c_required_bracket) {
        j["c_required_lower"] = format_rational(a.c_required_bracket->first);
        j["c_required_upper"] = format_rational(a.c_required_bracket->second);
    } else {
        j["c_required_lower"] = nullptr;
        j["c_required_upper"] = nullptr;
    }
    j["conclusion_exponent"] = format_rational(a.conclusion_exponent);
    j["conclusion_lhs_pow"] = a.conclusion_lhs_pow.str();
    j["conclusion_rhs_pow"] = a.conclusion_rhs_pow.str();
    j["conclusion_holds_for_unit_constant"] = a.conclusion_holds_for_unit_constant;
    j["conclusion_ratio"] = detail_report::rational_or_null(a.conclusion_ratio);
    if (a.conclusion_ratio) j["conclusion_ratio_display"] = to_display(*a.conclusion_ratio);

    std::ostringstream csv;
    detail_report::theorem_csv_header(csv);
    detail_report::csv_row(
        csv, {theorem_kind_name(a.kind), std::to_string(a.d),
              a.kind == TheoremKind::flat ? std::to_string(a.t) : std::string(),
              std::to_string(a.n), std::to_string(a.k), format_rational(a.alpha),
              a.exploratory ? "true" : "false", std::to_string(a.m_spanned),
              a.infinite_witness_present ? "true" : "false", std::to_string(a.ell),
              detail_report::rational_or_empty(a.k_alpha), a.k_alpha_floor.str(),
              detail_report::rational_or_empty(a.hypothesis_denominator),
              detail_report::rational_or_empty(a.c_required),
              a.c_required_bracket ? format_rational(a.c_required_bracket->first)
                                   : std::string(),
              a.c_required_bracket ? format_rational(a.c_required_bracket->second)
                                   : std::string(),
              format_rational(a.conclusion_exponent), a.conclusion_lhs_pow.str(),
              a.conclusion_rhs_pow.str(),
              a.conclusion_holds_for_unit_constant ? "true" : "false",
              detail_report::rational_or_empty(a.conclusion_ratio)});
    rep.csv = csv.str();
    return rep;
}

/// Batch form: one JSON array element / CSV data row per audit. An empty
/// batch still carries the CSV header so downstream column parsing works.
inline Report report_theorems(const std::vector<TheoremAudit>& audits) {
    Report rep;
    rep.json["command"] = "audit";
    rep.json["statement"] = "theorem";
    Json arr = Json::array();
    std::ostringstream csv;
    detail_report::theorem_csv_header(csv);
    for (const TheoremAudit& a : audits) {
        Report one = report_theorem(a);
        arr.push_back(std::move(one.json));
        // Drop the single-report header, keep its data row.
        const std::size_t cut = one.csv.find('\n');
        csv << one.csv.substr(cut + 1);
    }
    rep.json["audits"] = std::move(arr);
    rep.csv = csv.str();
    return rep;
}

inline Report report_suite(const SuiteReport& suite) {
    Report rep;
    rep.json["command"] = "audit";
    rep.json["statement"] = "suite";
    Json arr = Json::array();
    for (const SuiteCheck& c : suite.checks) {
        Json row;
        row["name"] = c.name;
        row["lhs"] = c.lhs;
        row["rhs"] = c.rhs;
        row["pass"] = c.pass;
        arr.push_back(std::move(row));
    }
    rep.json["checks"] = std::move(arr);
    rep.json["all_pass"] = suite.all_pass;

    std::ostringstream csv;
    detail_report::csv_row(csv, {"name", "lhs", "rhs", "pass"});
    for (const SuiteCheck& c : suite.checks) {
        // Suite names and values may contain commas in principle; they do not
        // today, and keeping the cells raw keeps the file trivially grepable.
        detail_report::csv_row(csv, {c.name, c.lhs, c.rhs, c.pass ? "true" : "false"});
    }
    rep.csv = csv.str();
    return rep;
}

}  // namespace krich::harness
