#pragma once

// File formats: fans and covers are line-oriented JSON documents with
// 1-based indices (converted to 0-based internally).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torictk/error.hpp"
#include "torictk/fan.hpp"
#include "torictk/resolution.hpp"

namespace torictk {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// FNV-1a over the raw bytes; stable content digest for reports.
inline std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream ss;
    ss << std::hex << h;
    return ss.str();
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("parse error: ") + e.what());
    }
}

inline Fan fan_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rays") ||
        !doc.contains("max_cones"))
        throw Error(ErrorKind::Parse, "fan file requires keys dim, rays, max_cones");
    int dim;
    std::vector<std::vector<Int>> rays;
    std::vector<RationalCone> cones;
    std::string name = doc.value("name", std::string());
    try {
        dim = doc.at("dim").get<int>();
        for (const auto& ray : doc.at("rays")) {
            std::vector<Int> v;
            for (const auto& x : ray) v.push_back(to_int(x.get<long long>()));
            rays.push_back(std::move(v));
        }
        for (const auto& cone : doc.at("max_cones")) {
            RationalCone c;
            for (const auto& x : cone) {
                long long k = x.get<long long>();
                if (k < 1) throw Error(ErrorKind::Parse, "cone indices are 1-based");
                c.ray_indices.push_back(static_cast<int>(k - 1));
            }
            cones.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("parse error: ") + e.what());
    }
    return Fan(dim, std::move(rays), std::move(cones), name);
}

// Parse and validate; structural violations abort with the full list.
inline Fan parse_fan_file(const std::string& path) {
    Fan fan = fan_from_json(parse_json(read_file(path)));
    ValidationReport report = validate_fan(fan);
    if (!report.ok) {
        std::string msg = "fan validation failed:";
        for (const auto& v : report.violations) msg += "\n  - " + v;
        throw Error(ErrorKind::Validation, msg);
    }
    return fan;
}

inline Json fan_to_json(const Fan& fan) {
    Json doc;
    doc["dim"] = fan.dim();
    Json rays = Json::array();
    for (const auto& ray : fan.rays()) {
        Json r = Json::array();
        for (const Int& x : ray) r.push_back(x.get_si());
        rays.push_back(r);
    }
    doc["rays"] = rays;
    Json cones = Json::array();
    for (const auto& c : fan.max_cones()) {
        Json indices = Json::array();
        for (int k : c.ray_indices) indices.push_back(k + 1);
        cones.push_back(indices);
    }
    doc["max_cones"] = cones;
    if (!fan.name().empty()) doc["name"] = fan.name();
    return doc;
}

inline FiniteCover cover_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("base_facets") || !doc.contains("points") ||
        !doc.contains("projection"))
        throw Error(ErrorKind::Parse, "cover file requires keys base_facets, points, projection");
    try {
        std::vector<std::vector<int>> facets;
        int base_vertices = 0;
        for (const auto& facet : doc.at("base_facets")) {
            std::vector<int> f;
            for (const auto& x : facet) {
                long long v = x.get<long long>();
                if (v < 1) throw Error(ErrorKind::Parse, "base vertices are 1-based");
                f.push_back(static_cast<int>(v - 1));
                base_vertices = std::max(base_vertices, static_cast<int>(v));
            }
            facets.push_back(std::move(f));
        }
        int points = doc.at("points").get<int>();
        if (points < 0) throw Error(ErrorKind::Parse, "points must be nonnegative");
        std::vector<int> projection;
        for (const auto& x : doc.at("projection")) {
            long long v = x.get<long long>();
            if (v < 1) throw Error(ErrorKind::Parse, "projection targets are 1-based");
            projection.push_back(static_cast<int>(v - 1));
        }
        if (static_cast<int>(projection.size()) != points)
            throw Error(ErrorKind::Parse, "projection length must equal points");
        FiniteCover cover{SimplicialComplex(base_vertices, facets), std::move(projection)};
        validate_cover(cover);
        return cover;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("parse error: ") + e.what());
    }
}

inline FiniteCover parse_cover_file(const std::string& path) {
    return cover_from_json(parse_json(read_file(path)));
}

}  // namespace torictk
