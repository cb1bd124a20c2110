#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "krich/enumerate.hpp"
#include "krich/error.hpp"
#include "krich/flat.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"
#include "krich/sphere.hpp"

namespace krich::harness {

using Json = nlohmann::ordered_json;
using exactgeom::CoSphere;
using exactgeom::Flat;
using exactgeom::Sphere;

enum class Format { json, csv };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw invalid_input("unknown format '" + s + "' (expected json or csv)");
}

// --- point-set persistence ----------------------------------------------------
//
// File schema: {"dim": <int>, "points": [["p/q", ...], ...]} with every
// rational reduced and its denominator positive. Loading is strict; saving
// always emits the canonical form, so save-then-load is the identity.

inline PointSet pointset_from_json(const Json& j, const std::string& where) {
    detail::require(j.is_object(), where + ": top level must be an object");
    for (const auto& [key, value] : j.items())
        detail::require(key == "dim" || key == "points", where + ": unexpected key '" + key + "'");
    detail::require(j.contains("dim") && j["dim"].is_number_integer(),
                    where + ": missing integer field 'dim'");
    detail::require(j.contains("points") && j["points"].is_array(),
                    where + ": missing array field 'points'");
    PointSet ps;
    const long long dim = j["dim"].get<long long>();
    detail::require(dim >= 2, where + ": dim must be at least 2");
    ps.dim = static_cast<std::size_t>(dim);
    ps.points.reserve(j["points"].size());
    std::size_t row = 0;
    for (const Json& jp : j["points"]) {
        detail::require(jp.is_array() && jp.size() == ps.dim,
                        where + ": points[" + std::to_string(row) + "] must be an array of " +
                            std::to_string(ps.dim) + " rationals");
        Point p;
        p.reserve(ps.dim);
        std::size_t col = 0;
        for (const Json& jc : jp) {
            detail::require(jc.is_string(), where + ": points[" + std::to_string(row) + "][" +
                                                std::to_string(col) + "] must be a string");
            try {
                p.push_back(parse_rational(jc.get<std::string>()));
            } catch (const invalid_input& e) {
                throw invalid_input(where + ": points[" + std::to_string(row) + "][" +
                                    std::to_string(col) + "]: " + e.what());
            }
            ++col;
        }
        ps.points.push_back(std::move(p));
        ++row;
    }
    validate_pointset(ps);
    return ps;
}

inline Json pointset_to_json(const PointSet& ps) {
    Json j;
    j["dim"] = ps.dim;
    Json pts = Json::array();
    for (const Point& p : ps.points) {
        Json jp = Json::array();
        for (const Rational& x : p) jp.push_back(format_rational(x));
        pts.push_back(std::move(jp));
    }
    j["points"] = std::move(pts);
    return j;
}

inline std::string pointset_to_string(const PointSet& ps) {
    return pointset_to_json(ps).dump(2) + "\n";
}

inline PointSet load_pointset(const std::string& path) {
    std::ifstream in(path);
    detail::require(in.good(), "cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw invalid_input(path + ": " + e.what());
    }
    return pointset_from_json(j, path);
}

inline void save_pointset(const PointSet& ps, const std::string& path) {
    validate_pointset(ps);
    std::ofstream out(path);
    detail::require(out.good(), "cannot open '" + path + "' for writing");
    out << pointset_to_string(ps);
    detail::require(out.good(), "write to '" + path + "' failed");
}

// --- object serialization -----------------------------------------------------
//
// Exact values are "p/q" strings; any double in a report carries a _display
// suffix and never feeds back into a computation.

inline Json rational_json(const Rational& r) { return format_rational(r); }

inline Json flat_to_json(const Flat& f) {
    Json j;
    j["ambient"] = f.ambient;
    j["dim"] = f.dim();
    Json eqs = Json::array();
    for (const exactgeom::Row& row : f.eqs) {
        Json jr = Json::array();
        for (const Rational& x : row) jr.push_back(format_rational(x));
        eqs.push_back(std::move(jr));
    }
    j["equations"] = std::move(eqs);
    return j;
}

inline Json sphere_to_json(const Sphere& s) {
    Json j;
    j["ambient"] = s.center.size();
    Json c = Json::array();
    for (const Rational& x : s.center) c.push_back(format_rational(x));
    j["center"] = std::move(c);
    j["radius_sq"] = format_rational(s.radius_sq);
    j["radius_sq_display"] = to_display(s.radius_sq);
    return j;
}

inline Json cosphere_to_json(const CoSphere& s) {
    Json j;
    j["carrier"] = flat_to_json(s.carrier);
    Json c = Json::array();
    for (const Rational& x : s.center) c.push_back(format_rational(x));
    j["center"] = std::move(c);
    j["radius_sq"] = format_rational(s.radius_sq);
    j["radius_sq_display"] = to_display(s.radius_sq);
    j["lifted"] = flat_to_json(s.lifted);
    return j;
}

/// Compact single-token rendering for CSV cells: equation rows joined by
/// ';', entries by ' '. Never contains a comma.
inline std::string flat_to_csv_token(const Flat& f) {
    std::string out;
    for (std::size_t r = 0; r < f.eqs.size(); ++r) {
        if (r) out += ';';
        for (std::size_t c = 0; c < f.eqs[r].size(); ++c) {
            if (c) out += ' ';
            out += format_rational(f.eqs[r][c]);
        }
    }
    return out;
}

inline std::string sphere_to_csv_token(const Sphere& s) {
    std::string out = "center";
    for (const Rational& x : s.center) out += ' ' + format_rational(x);
    out += " radius_sq " + format_rational(s.radius_sq);
    return out;
}

inline std::string indices_to_csv_token(const std::vector<std::size_t>& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(idx[i]);
    }
    return out;
}

inline Json indices_to_json(const std::vector<std::size_t>& idx) {
    Json j = Json::array();
    for (std::size_t i : idx) j.push_back(i);
    return j;
}

}  // namespace krich::harness
