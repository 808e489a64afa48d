#pragma once

// Orchestration: run every analysis over a fan or cover and collect the
// results into one deterministic report (structured JSON plus a plain-text
// rendering). Module errors become report sections and flip the ok flag.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torictk/cox.hpp"
#include "torictk/error.hpp"
#include "torictk/fan.hpp"
#include "torictk/io.hpp"
#include "torictk/resolution.hpp"
#include "torictk/stability.hpp"
#include "torictk/stanley_reisner.hpp"

namespace torictk {

inline constexpr const char* kToolName = "torictk";
inline constexpr const char* kToolVersion = "0.1.0";

struct AnalyzeOptions {
    std::optional<std::vector<long long>> degrees;
    std::optional<long long> m;
    std::optional<std::vector<long long>> shift;
    bool allow_incomplete = false;
};

struct Report {
    Json doc;
    bool ok = true;
};

namespace detail {

inline Json index_set_json(const IndexSet& s) {
    Json arr = Json::array();
    for (int k : s) arr.push_back(k + 1);
    return arr;
}

inline Json group_json(const AbelianGroup& g) { return g.to_string(); }

inline Json homology_json(const HomologyGroups& h) {
    Json out = Json::object();
    for (const auto& [d, g] : h.groups) out[std::to_string(d)] = g.to_string();
    if (h.groups.empty()) out["all"] = "0";
    return out;
}

inline Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

inline Json basis_json(const std::vector<std::vector<Int>>& basis) {
    Json arr = Json::array();
    for (const auto& v : basis) {
        Json row = Json::array();
        for (const Int& x : v) row.push_back(x.get_str());
        arr.push_back(row);
    }
    return arr;
}

template <typename Fn>
inline void section(Report& report, const std::string& key, Fn&& fn) {
    try {
        report.doc[key] = fn();
    } catch (const Error& e) {
        Json err;
        err["error"] = e.what();
        report.doc[key] = err;
        report.ok = false;
    }
}

}  // namespace detail

inline Report analyze_fan(const Fan& fan, const std::string& digest, const AnalyzeOptions& opt) {
    Report report;
    report.doc["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    report.doc["input"] = Json{{"digest", digest}, {"name", fan.name()}};

    {
        Json rays;
        Json user = Json::array();
        for (const auto& ray : fan.rays()) {
            Json r = Json::array();
            for (const Int& x : ray) r.push_back(x.get_str());
            user.push_back(r);
        }
        rays["user_order"] = user;
        Json canon = Json::array();
        for (std::size_t k : fan.canonical_permutation()) canon.push_back(k + 1);
        rays["canonical_order"] = canon;
        report.doc["rays"] = rays;
    }

    ValidationReport validation = validate_fan(fan);
    {
        Json v;
        v["ok"] = validation.ok;
        v["violations"] = validation.violations;
        report.doc["validation"] = v;
    }
    if (!validation.ok) {
        report.ok = false;
        return report;
    }

    const std::size_t r = fan.ray_count();
    bool simplicial = is_simplicial(fan);
    SmoothnessReport smooth = is_smooth(fan);
    detail::section(report, "properties", [&] {
        Json p;
        p["simplicial"] = simplicial;
        p["smooth"] = smooth.smooth;
        p["smooth_per_cone"] = smooth.cone_smooth;
        if (simplicial)
            p["complete"] = is_complete(fan);
        else
            p["complete"] = "unsupported: non-simplicial completeness check";
        p["fundamental_group"] = fundamental_group(fan).to_string();
        return p;
    });

    std::optional<std::size_t> rmin;
    detail::section(report, "cox", [&] {
        CoxData cox = analyze_cox(fan);
        Json c;
        Json irr = Json::array();
        for (std::size_t i = 0; i < cox.irrelevant.size(); ++i) {
            Json entry;
            entry["cone"] = detail::index_set_json(fan.max_cones()[i].ray_indices);
            entry["monomial_support"] = detail::index_set_json(cox.irrelevant[i]);
            irr.push_back(entry);
        }
        c["irrelevant_monomials"] = irr;
        Json cols = Json::array();
        for (const auto& p : cox.collections) cols.push_back(detail::index_set_json(p.indices));
        c["primitive_collections"] = cols;
        {
            // same sets re-indexed through the canonical ray order
            auto perm = fan.canonical_permutation();
            std::vector<std::size_t> inverse(perm.size());
            for (std::size_t pos = 0; pos < perm.size(); ++pos) inverse[perm[pos]] = pos;
            Json canon = Json::array();
            for (const auto& p : cox.collections) {
                IndexSet mapped;
                for (int k : p.indices) mapped.push_back(static_cast<int>(inverse[static_cast<std::size_t>(k)]));
                std::sort(mapped.begin(), mapped.end());
                canon.push_back(detail::index_set_json(mapped));
            }
            c["primitive_collections_canonical"] = canon;
        }
        if (cox.rmin) {
            rmin = cox.rmin;
            c["r_min"] = *cox.rmin;
        } else {
            c["r_min"] = Json{{"error", "no primitive collection"}};
            report.ok = false;
        }
        Json z;
        z["verified"] = cox.zsigma_verified;
        Json comps = Json::array();
        for (const auto& p : cox.collections) comps.push_back(detail::index_set_json(p.indices));
        z["components"] = comps;
        if (cox.rmin)
            z["real_dimension"] = "2*(r - r_min) = 2*(" + std::to_string(r) + " - " +
                                  std::to_string(*cox.rmin) + ") = " +
                                  std::to_string(2 * (r - *cox.rmin));
        c["zsigma"] = z;
        if (cox.g) {
            Json g;
            g["structure"] = cox.g->structure.to_string();
            g["rank"] = cox.g->structure.rank;
            g["has_torsion"] = cox.g->has_torsion;
            g["parametrization"] = detail::matrix_json(cox.g->parametrization);
            c["gsigma"] = g;
        } else {
            c["gsigma"] = Json{{"error", "rays do not span"}};
            report.ok = false;
        }
        return c;
    });

    {
        detail::section(report, "stanley_reisner", [&] {
            Json s;
            SimplicialComplex k = k_sigma(fan);
            Json facets = Json::array();
            for (FaceMask f : k.facets()) {
                IndexSet verts;
                for (int v = 0; v < k.vertex_count(); ++v)
                    if (f & (FaceMask(1) << v)) verts.push_back(v);
                facets.push_back(detail::index_set_json(verts));
            }
            s["facets"] = facets;
            std::size_t q = q_sigma(fan);
            s["q_sigma"] = q;
            if (rmin)
                s["rmin_equals_q_plus_1"] =
                    (*rmin == q + 1 ? "r_min = q_sigma + 1 = " + std::to_string(q + 1)
                                    : "MISMATCH: r_min = " + std::to_string(*rmin) +
                                          ", q_sigma + 1 = " + std::to_string(q + 1));
            s["full_skeleton_check"] = full_skeleton_check(fan);
            return s;
        });

        detail::section(report, "connectivity", [&] {
            ConnectivityCertificate cert = certify_connectivity(fan, opt.allow_incomplete);
            Json c;
            c["bound"] = "2*(r_min - 1) = 2*(" + std::to_string(cert.rmin) + " - 1) = " +
                         std::to_string(cert.bound);
            c["ok"] = cert.ok;
            if (cert.first_nonzero_degree)
                c["first_nonzero_degree"] = *cert.first_nonzero_degree;
            c["moment_angle_homology"] = detail::homology_json(cert.homology);
            return c;
        });
    }

    detail::section(report, "admissible_degrees", [&] {
        Json d;
        d["kernel_basis"] = detail::basis_json(admissible_degrees(fan));
        return d;
    });

    if (opt.degrees) {
        detail::section(report, "stability", [&] {
            if (opt.degrees->size() != r)
                throw Error(ErrorKind::Domain, "--degrees length must equal the ray count");
            DegreeTuple d = make_degree_tuple(fan, *opt.degrees);
            Json s;
            s["degrees"] = *opt.degrees;
            s["admissible"] = d.admissible;
            if (!d.admissible) report.ok = false;
            if (opt.m && rmin) {
                const long long m = *opt.m;
                const long long rm = static_cast<long long>(*rmin);
                StabilityReport rep = build_stability_report(d, m, rm);
                s["m"] = m;
                if (!rep.valid_m_range)
                    s["warning"] = "m outside theorem range 2 <= m <= 2*(r_min - 1)";
                s["d_min"] = rep.d_min;
                s["N_D"] = Json{{"value", rep.n_d.get_str()},
                                {"formula", "sum_k C(m + d_k - 1, m)"}};
                s["stability_dimension"] =
                    Json{{"value", rep.stability_dim},
                         {"formula", "(2*r_min - m - 1)*d_min - 2 = (2*" + std::to_string(rm) +
                                         " - " + std::to_string(m) + " - 1)*" +
                                         std::to_string(rep.d_min) + " - 2 = " +
                                         std::to_string(rep.stability_dim)}};
                s["star_dimension"] =
                    Json{{"value", rep.star_dim},
                         {"formula", "(2*r_min - m - 1)*(floor((d_min + 1)/2) + 1) - 1 = " +
                                         std::to_string(rep.star_dim)}};
                if (d.d_min() >= 1) {
                    Json bundles = Json::array();
                    for (long long k = 1; k <= rep.d_min; ++k) {
                        Json row;
                        row["k"] = k;
                        row["bundle_rank"] =
                            bundle_rank(d, m, static_cast<long long>(r), k).get_str();
                        row["config_dimension"] =
                            config_space_dimension(m, static_cast<long long>(r), rm, k);
                        bundles.push_back(row);
                    }
                    s["strata"] = bundles;
                    Json tables;
                    const long long kmax = rep.d_min + 2;
                    const long long smax = (2 * rm - m) * (rep.d_min + 1);
                    for (ResolutionKind kind :
                         {ResolutionKind::Truncated, ResolutionKind::Veronese,
                          ResolutionKind::Vassiliev}) {
                        SupportTable t = e1_support(kind, d, m, rm);
                        tables[to_string(kind)] = t.render(kmax, smax);
                    }
                    if (opt.shift) {
                        SupportTable t = e1_support(ResolutionKind::TruncatedShifted, d, m, rm,
                                                    &*opt.shift);
                        tables[to_string(ResolutionKind::TruncatedShifted)] = t.render(kmax, smax);
                    }
                    s["e1_support"] = tables;
                    Json ats = Json::array();
                    for (long long t = 1; t * (t + 1) / 2 <= rep.d_min + 1; ++t) {
                        Json row;
                        row["t"] = t;
                        row["a_t"] = a_t_minimum(rep.d_min, rm, m, t);
                        ats.push_back(row);
                    }
                    s["a_t_minimum"] = ats;
                }
                if (opt.shift) {
                    Json sh;
                    DegreeTuple shifted = shift_degree(fan, d, *opt.shift);
                    sh["shift"] = *opt.shift;
                    sh["shifted_degrees"] = shifted.degrees;
                    sh["admissible"] = shifted.admissible;
                    sh["d_min"] = shifted.d_min();
                    s["shifted"] = sh;
                }
            }
            return s;
        });
    }
    return report;
}

inline Report resolve_cover(const FiniteCover& cover, const std::string& digest, int truncation) {
    Report report;
    report.doc["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    report.doc["input"] = Json{{"digest", digest}};
    {
        Json c;
        c["points"] = cover.total_points();
        c["base_vertices"] = cover.base.vertex_count();
        Json fib = Json::array();
        for (const auto& f : cover.fibres()) fib.push_back(f.size());
        c["fibre_sizes"] = fib;
        report.doc["cover"] = c;
    }
    detail::section(report, "resolution", [&] {
        SimplicialResolution res =
            truncation > 0 ? SimplicialResolution(cover, truncation) : build_nondegenerate(cover);
        Json out;
        out["truncation"] = truncation > 0 ? Json(truncation) : Json("none");
        out["total_vertices"] = res.complex().vertex_count();
        out["apexes"] = res.apex_count();
        Json levels = Json::array();
        long long euler_sum = 0;
        auto per_level = filtration_homology(res);
        for (std::size_t i = 0; i < per_level.size(); ++i) {
            Json row;
            row["level"] = i + 1;
            row["relative_homology"] = detail::homology_json(per_level[i]);
            euler_sum += per_level[i].euler_characteristic();
            levels.push_back(row);
        }
        out["filtration"] = levels;
        bool equiv = verify_resolution_equivalence(res);
        out["homology_matches_base"] = equiv;
        if (!equiv) report.ok = false;
        // unreduced Euler characteristics must agree level-sum vs spaces
        long long chi_res = res.complex().reduced_euler_characteristic() + 1;
        long long chi_base = cover.base.reduced_euler_characteristic() + 1;
        out["euler"] = Json{{"filtration_sum", euler_sum},
                            {"resolution", chi_res},
                            {"base", chi_base}};
        return out;
    });
    return report;
}

namespace detail {

inline void render_value(std::ostringstream& os, const Json& value, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (value.is_string()) {
        std::string s = value.get<std::string>();
        if (s.find('\n') == std::string::npos) {
            os << s << "\n";
        } else {
            os << "\n";
            std::istringstream lines(s);
            std::string line;
            while (std::getline(lines, line)) os << pad << "  " << line << "\n";
        }
    } else if (value.is_object()) {
        os << "\n";
        for (const auto& [k, v] : value.items()) {
            os << pad << "  " << k << ": ";
            render_value(os, v, indent + 2);
        }
    } else if (value.is_array()) {
        bool scalar = true;
        for (const auto& v : value)
            if (v.is_structured()) scalar = false;
        if (scalar) {
            os << value.dump() << "\n";
        } else {
            os << "\n";
            for (const auto& v : value) {
                os << pad << "  - ";
                render_value(os, v, indent + 4);
            }
        }
    } else {
        os << value.dump() << "\n";
    }
}

}  // namespace detail

// Human rendering of the structured report.
inline std::string render_text(const Report& report) {
    std::ostringstream os;
    const Json& d = report.doc;
    os << kToolName << " " << kToolVersion;
    if (d.contains("input")) {
        os << "  (input digest " << d["input"].value("digest", "");
        std::string name = d["input"].value("name", std::string());
        if (!name.empty()) os << ", " << name;
        os << ")";
    }
    os << "\n";
    for (const auto& [key, value] : d.items()) {
        if (key == "tool" || key == "input") continue;
        os << "\n== " << key << " ==\n";
        if (value.is_object()) {
            for (const auto& [k, v] : value.items()) {
                os << k << ": ";
                detail::render_value(os, v, 0);
            }
        } else {
            detail::render_value(os, value, 0);
        }
    }
    os << "\nstatus: " << (report.ok ? "ok" : "FAILED") << "\n";
    return os.str();
}

}  // namespace torictk
