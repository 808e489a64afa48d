#pragma once

// The Stanley-Reisner complex of a fan, the full-skeleton threshold, and the
// homological connectivity certificate for the coordinate-subspace
// complement (through its moment-angle model).

#include <cstdint>
#include <optional>
#include <vector>

#include "torictk/cox.hpp"
#include "torictk/error.hpp"
#include "torictk/fan.hpp"
#include "torictk/simplicial.hpp"

namespace torictk {

// Faces are the ray sets spanning a cone; for a validated simplicial fan the
// facets are exactly the maximal cone index sets.
inline SimplicialComplex k_sigma(const Fan& fan) {
    if (!is_simplicial(fan))
        throw Error(ErrorKind::Domain, "unsupported: Stanley-Reisner complex of a non-simplicial fan");
    std::vector<std::vector<int>> facets;
    facets.reserve(fan.max_cones().size());
    for (const auto& c : fan.max_cones()) facets.push_back(c.ray_indices);
    return SimplicialComplex(static_cast<int>(fan.ray_count()), facets);
}

// Largest s such that every s-subset of the vertices is a face, by direct
// enumeration (independent of the primitive-collection route).
inline std::size_t q_sigma(const Fan& fan) {
    detail::require_enumerable(fan);
    SimplicialComplex k = k_sigma(fan);
    const int r = static_cast<int>(fan.ray_count());
    const std::uint32_t full = (1u << r) - 1;
    std::size_t q = 0;
    for (int s = 1; s <= r; ++s) {
        bool all_faces = true;
        for (std::uint32_t sub = 0; sub <= full && all_faces; ++sub)
            if (popcount64(sub) == s && !k.is_face(sub)) all_faces = false;
        if (!all_faces) return q;
        q = static_cast<std::size_t>(s);
    }
    throw Error(ErrorKind::Domain, "all subsets are faces");
}

// Consistency between the threshold and the skeleton picture: the complex
// contains the full (q-1)-skeleton of the simplex, some q-set is a face, and
// some (q+1)-set is not.
inline bool full_skeleton_check(const Fan& fan) {
    detail::require_enumerable(fan);
    SimplicialComplex k = k_sigma(fan);
    const int r = static_cast<int>(fan.ray_count());
    std::size_t q;
    try {
        q = q_sigma(fan);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Domain) return false;  // full simplex
        throw;
    }
    const std::uint32_t full = (1u << r) - 1;
    bool some_q = false, some_q1_missing = false;
    for (std::uint32_t sub = 0; sub <= full; ++sub) {
        int c = popcount64(sub);
        if (c <= static_cast<int>(q)) {
            if (!k.is_face(sub)) return false;  // skeleton is not complete
            if (c == static_cast<int>(q)) some_q = true;
        } else if (c == static_cast<int>(q) + 1 && !k.is_face(sub)) {
            some_q1_missing = true;
        }
        if (sub == full) break;
    }
    return some_q && some_q1_missing;
}

struct ConnectivityCertificate {
    std::size_t rmin = 0;
    long bound = 0;  // 2(r_min - 1)
    bool ok = false;
    std::optional<int> first_nonzero_degree;
    HomologyGroups homology;  // moment-angle homology through the witness range
};

// Homological certificate that the moment-angle complex of the fan's
// Stanley-Reisner complex is 2(r_min - 1)-connected. Non-complete fans are
// accepted only behind allow_incomplete.
inline ConnectivityCertificate certify_connectivity(const Fan& fan, bool allow_incomplete = false) {
    if (!is_smooth(fan).smooth)
        throw Error(ErrorKind::Domain, "connectivity certificate requires a smooth fan");
    if (!allow_incomplete && !is_complete(fan))
        throw Error(ErrorKind::Domain,
                    "connectivity certificate requires a complete fan (or allow_incomplete)");
    ConnectivityCertificate cert;
    cert.rmin = r_min(fan);
    cert.bound = 2 * (static_cast<long>(cert.rmin) - 1);
    SimplicialComplex k = k_sigma(fan);
    // all possible degrees are <= r + dim K + 1
    int max_degree = static_cast<int>(fan.ray_count()) + static_cast<int>(fan.dim()) + 2;
    cert.homology = moment_angle_homology(k, max_degree);
    cert.first_nonzero_degree = cert.homology.first_nonzero_degree();
    cert.ok = cert.homology.trivial_through(static_cast<int>(cert.bound));
    return cert;
}

}  // namespace torictk
