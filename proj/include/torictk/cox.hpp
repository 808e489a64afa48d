#pragma once

// Homogeneous-coordinate layer: irrelevant monomials, primitive collections,
// the coordinate-subspace locus and its codimension, the torus G and degree
// admissibility.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "torictk/error.hpp"
#include "torictk/fan.hpp"
#include "torictk/lattice.hpp"

namespace torictk {

using IndexSet = std::vector<int>;  // sorted, 0-based

namespace detail {

constexpr std::size_t kSubsetEnumerationCap = 20;

inline std::vector<std::uint32_t> cone_masks(const Fan& fan) {
    std::vector<std::uint32_t> masks;
    masks.reserve(fan.max_cones().size());
    for (const auto& c : fan.max_cones()) {
        std::uint32_t m = 0;
        for (int k : c.ray_indices) m |= (1u << k);
        masks.push_back(m);
    }
    return masks;
}

inline bool subset_of_some(std::uint32_t s, const std::vector<std::uint32_t>& masks) {
    for (std::uint32_t m : masks)
        if ((s & ~m) == 0) return true;
    return false;
}

inline IndexSet mask_to_set(std::uint32_t m) {
    IndexSet out;
    for (int k = 0; m; ++k, m >>= 1)
        if (m & 1) out.push_back(k);
    return out;
}

inline void require_enumerable(const Fan& fan) {
    if (fan.ray_count() > kSubsetEnumerationCap)
        throw Error(ErrorKind::Budget, "subset enumeration cap exceeded (r > 20)");
}

}  // namespace detail

struct PrimitiveCollection {
    IndexSet indices;

    bool operator==(const PrimitiveCollection& rhs) const { return indices == rhs.indices; }
    bool operator<(const PrimitiveCollection& rhs) const { return indices < rhs.indices; }
};

// For every maximal cone sigma, the exponent support of its irrelevant
// monomial: the ray indices not generating sigma.
inline std::vector<IndexSet> irrelevant_monomials(const Fan& fan) {
    std::vector<IndexSet> out;
    out.reserve(fan.max_cones().size());
    for (const auto& c : fan.max_cones()) {
        IndexSet comp;
        std::size_t pos = 0;
        for (int k = 0; k < static_cast<int>(fan.ray_count()); ++k) {
            if (pos < c.ray_indices.size() && c.ray_indices[pos] == k)
                ++pos;
            else
                comp.push_back(k);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

// Inclusion-minimal ray sets lying in no cone, enumerated by cardinality:
// a set qualifies when it is a non-face and all its drop-one subsets are
// faces (the face property is downward closed).
inline std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
    detail::require_enumerable(fan);
    const int r = static_cast<int>(fan.ray_count());
    std::vector<std::uint32_t> masks = detail::cone_masks(fan);
    std::vector<PrimitiveCollection> out;
    const std::uint32_t full = r == 32 ? ~0u : ((1u << r) - 1);
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (detail::subset_of_some(s, masks)) continue;
        bool minimal = true;
        for (std::uint32_t bit = s; bit && minimal; bit &= bit - 1) {
            std::uint32_t lowest = bit & (~bit + 1);
            if (!detail::subset_of_some(s & ~lowest, masks)) minimal = false;
        }
        if (minimal) out.push_back({detail::mask_to_set(s)});
    }
    std::sort(out.begin(), out.end(), [](const PrimitiveCollection& a, const PrimitiveCollection& b) {
        if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
        return a.indices < b.indices;
    });
    return out;
}

inline std::size_t r_min(const Fan& fan) {
    auto cols = primitive_collections(fan);
    if (cols.empty()) throw Error(ErrorKind::Domain, "no primitive collection");
    std::size_t best = cols[0].indices.size();
    for (const auto& c : cols) best = std::min(best, c.indices.size());
    return best;
}

// Exhaustive {0,1}^r oracle for the decomposition of the irrelevant locus
// into coordinate subspaces: a pattern kills every irrelevant monomial
// exactly when its zero support contains a primitive collection.
inline bool verify_zsigma_decomposition(const Fan& fan) {
    detail::require_enumerable(fan);
    const int r = static_cast<int>(fan.ray_count());
    std::vector<std::uint32_t> cone_masks = detail::cone_masks(fan);
    std::vector<std::uint32_t> prim_masks;
    for (const auto& p : primitive_collections(fan)) {
        std::uint32_t m = 0;
        for (int k : p.indices) m |= (1u << k);
        prim_masks.push_back(m);
    }
    const std::uint32_t full = (r == 32) ? ~0u : ((1u << r) - 1);
    for (std::uint32_t nonzero = 0; nonzero <= full; ++nonzero) {
        std::uint32_t zero_support = full & ~nonzero;
        // monomial of cone sigma vanishes iff some zero coordinate lies
        // outside sigma; the pattern is in the locus iff all monomials vanish
        bool in_locus = true;
        for (std::uint32_t cm : cone_masks)
            if ((zero_support & ~cm) == 0) { in_locus = false; break; }
        bool covered = false;
        for (std::uint32_t pm : prim_masks)
            if ((pm & ~zero_support) == 0) { covered = true; break; }
        if (in_locus != covered) return false;
        if (nonzero == full) break;
    }
    return true;
}

struct GSigma {
    AbelianGroup structure;       // cokernel of the character map
    IntMatrix parametrization;    // r x (r - n), columns span the degree kernel
    bool has_torsion = false;
};

// The torus of coordinate scalings killed by all characters: structure from
// the cokernel of the transposed ray matrix, identity component parametrized
// by a kernel basis of the ray matrix.
inline GSigma gsigma(const Fan& fan) {
    IntMatrix n_mat = fan.ray_matrix();
    if (lattice_rank(n_mat) != static_cast<std::size_t>(fan.dim()))
        throw Error(ErrorKind::Domain, "rays do not span");
    GSigma g;
    g.structure = cokernel_structure(n_mat.transpose());
    g.has_torsion = !g.structure.torsion.empty();
    std::vector<std::vector<Int>> kernel = integer_kernel_basis(n_mat);
    g.parametrization = IntMatrix::from_columns(fan.ray_count(), kernel);
    return g;
}

// Sum d_k n_k = 0: the exact condition for the scalar tuple (l^d_1,...,l^d_r)
// to land in G for every scalar l.
inline bool degree_in_gsigma(const Fan& fan, const std::vector<Int>& degrees) {
    if (degrees.size() != fan.ray_count())
        throw Error(ErrorKind::Domain, "degree tuple length does not match ray count");
    std::vector<Int> img = fan.ray_matrix().apply(degrees);
    for (const Int& x : img)
        if (x != 0) return false;
    return true;
}

struct CoxData {
    std::vector<IndexSet> irrelevant;  // per maximal cone
    std::vector<PrimitiveCollection> collections;
    std::optional<std::size_t> rmin;   // empty when no primitive collection
    bool zsigma_verified = false;
    std::optional<GSigma> g;           // empty when rays do not span
};

inline CoxData analyze_cox(const Fan& fan) {
    CoxData data;
    data.irrelevant = irrelevant_monomials(fan);
    data.collections = primitive_collections(fan);
    if (!data.collections.empty()) {
        std::size_t best = data.collections[0].indices.size();
        for (const auto& c : data.collections) best = std::min(best, c.indices.size());
        data.rmin = best;
    }
    data.zsigma_verified = verify_zsigma_decomposition(fan);
    if (lattice_rank(fan.ray_matrix()) == static_cast<std::size_t>(fan.dim()))
        data.g = gsigma(fan);
    return data;
}

}  // namespace torictk
