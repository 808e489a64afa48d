#pragma once

// Finite models of simplicial resolutions of finite covers: the fibrewise
// simplex complex, skeletal filtrations, truncation by coning, per-level
// relative homology, and the moment-curve embedding witnessing general
// position.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "torictk/error.hpp"
#include "torictk/lattice.hpp"
#include "torictk/simplicial.hpp"

namespace torictk {

// A finite surjection onto the vertex set of a base complex; the fibre over
// an interior point of a base face is the union of its vertex fibres.
struct FiniteCover {
    SimplicialComplex base;       // base vertices 0..b-1, every vertex in a facet
    std::vector<int> projection;  // total point -> base vertex

    int total_points() const { return static_cast<int>(projection.size()); }

    std::vector<std::vector<int>> fibres() const {
        std::vector<std::vector<int>> f(static_cast<std::size_t>(base.vertex_count()));
        for (std::size_t p = 0; p < projection.size(); ++p)
            f[static_cast<std::size_t>(projection[p])].push_back(static_cast<int>(p));
        return f;
    }
};

inline void validate_cover(const FiniteCover& cover) {
    const int b = cover.base.vertex_count();
    if (b == 0) throw Error(ErrorKind::Validation, "cover: empty base");
    std::vector<bool> in_facet(static_cast<std::size_t>(b), false);
    for (FaceMask f : cover.base.facets())
        for (int v = 0; v < b; ++v)
            if (f & (FaceMask(1) << v)) in_facet[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v < b; ++v)
        if (!in_facet[static_cast<std::size_t>(v)])
            throw Error(ErrorKind::Validation, "cover: base vertex missing from every facet");
    std::vector<bool> hit(static_cast<std::size_t>(b), false);
    for (int target : cover.projection) {
        if (target < 0 || target >= b)
            throw Error(ErrorKind::Validation, "cover: projection target out of range");
        hit[static_cast<std::size_t>(target)] = true;
    }
    for (int v = 0; v < b; ++v)
        if (!hit[static_cast<std::size_t>(v)])
            throw Error(ErrorKind::Validation, "cover: projection not surjective");
}

class SimplicialResolution {
public:
    SimplicialResolution(FiniteCover cover, int truncation /* 0 = none */)
        : cover_(std::move(cover)), truncation_(truncation) {
        validate_cover(cover_);
        for (const auto& fibre : cover_.fibres())
            if (fibre.size() > 12) throw Error(ErrorKind::Budget, "fibre budget exceeded (max 12)");
        build();
    }

    const FiniteCover& cover() const { return cover_; }
    int truncation() const { return truncation_; }
    bool truncated() const { return truncation_ > 0; }
    int total_points() const { return cover_.total_points(); }
    int apex_count() const { return static_cast<int>(coned_faces_.size()); }

    // The resolution as a simplicial complex; apexes (if any) are the
    // vertices after the total points.
    const SimplicialComplex& complex() const { return complex_; }

    // Number of meaningful filtration levels; beyond it the filtration is
    // constant.
    int level_count() const { return level_count_; }

    // X_l; level 0 is void (no faces, not even the empty one, by way of
    // the relative-homology convention below).
    SimplicialComplex filtration_level(int level) const {
        if (level < 0) throw Error(ErrorKind::Domain, "filtration level must be nonnegative");
        if (!truncated()) {
            int cap = std::min(level, level_count_);
            return union_complex_.skeleton_by_count(cap);
        }
        if (level <= truncation_) return union_complex_.skeleton_by_count(level);
        return complex_;
    }

    // Exact integer moment-curve coordinates (t, t^2, ..., t^(2k-1)) of a
    // total point in the stage-k embedding.
    std::vector<Int> embedding_point(int point, int k) const {
        if (point < 0 || point >= total_points())
            throw Error(ErrorKind::Domain, "embedding: point out of range");
        if (k < 1) throw Error(ErrorKind::Domain, "embedding stage must be positive");
        Int t(point + 1);
        std::vector<Int> coords;
        Int power(1);
        for (int i = 0; i < 2 * k - 1; ++i) {
            power *= t;
            coords.push_back(power);
        }
        return coords;
    }

    // Base faces whose fibres were coned off, in the order matching apex ids.
    const std::vector<FaceMask>& coned_faces() const { return coned_faces_; }

private:
    void build() {
        const auto fibres = cover_.fibres();
        // fibre mask of a base face = union of its vertex fibres
        auto fibre_mask = [&](FaceMask base_face) {
            FaceMask m = 0;
            for (int v = 0; v < cover_.base.vertex_count(); ++v)
                if (base_face & (FaceMask(1) << v))
                    for (int p : fibres[static_cast<std::size_t>(v)]) m |= FaceMask(1) << p;
            return m;
        };

        const int total = total_points();
        std::vector<FaceMask> union_facets;
        int max_fibre = 0;
        for (FaceMask f : cover_.base.facets()) {
            FaceMask m = fibre_mask(f);
            union_facets.push_back(m);
            max_fibre = std::max(max_fibre, popcount64(m));
        }
        union_complex_ = SimplicialComplex(total, union_facets);

        if (!truncated()) {
            complex_ = union_complex_;
            level_count_ = std::max(max_fibre, 1);
            return;
        }

        const int k = truncation_;
        // faces of the base whose fibre exceeds the cut
        std::vector<FaceMask> coned;
        for (const auto& bucket : cover_.base.faces_by_count())
            for (FaceMask f : bucket)
                if (f != 0 && popcount64(fibre_mask(f)) > k) coned.push_back(f);
        std::sort(coned.begin(), coned.end(), [](FaceMask a, FaceMask b) {
            if (popcount64(a) != popcount64(b)) return popcount64(a) < popcount64(b);
            return a < b;
        });
        coned_faces_ = coned;
        if (total + static_cast<int>(coned.size()) > 63)
            throw Error(ErrorKind::Budget, "apex budget exceeded");

        std::vector<FaceMask> facets = union_complex_.skeleton_by_count(k).facets();
        // one apex per coned face; simplices follow chains in the coned
        // poset with fibre faces of the chain's minimal element
        std::map<FaceMask, int> apex_id;
        for (std::size_t i = 0; i < coned.size(); ++i)
            apex_id[coned[i]] = total + static_cast<int>(i);

        // depth-first over chains tau_1 subset tau_2 subset ...; each chain
        // contributes apexes(chain) + k-subsets of fibre(tau_1)
        std::vector<std::size_t> chain;
        auto emit = [&]() {
            FaceMask apexes = 0;
            for (std::size_t idx : chain) apexes |= FaceMask(1) << apex_id[coned[idx]];
            FaceMask fib = fibre_mask(coned[chain.front()]);
            std::vector<int> pts;
            for (int p = 0; p < total; ++p)
                if (fib & (FaceMask(1) << p)) pts.push_back(p);
            // all k-subsets of the minimal fibre
            std::vector<int> idx(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
            const int c = static_cast<int>(pts.size());
            for (;;) {
                FaceMask w = 0;
                for (int i : idx) w |= FaceMask(1) << pts[static_cast<std::size_t>(i)];
                facets.push_back(apexes | w);
                int i = k - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == c - k + i) --i;
                if (i < 0) break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            }
        };
        // chains are built upward: each next face strictly contains the last
        std::function<void(std::size_t)> extend = [&](std::size_t last) {
            emit();
            for (std::size_t next = 0; next < coned.size(); ++next) {
                if (next == last) continue;
                FaceMask a = coned[last], b = coned[next];
                if ((a & ~b) == 0 && a != b) {
                    chain.push_back(next);
                    extend(next);
                    chain.pop_back();
                }
            }
        };
        for (std::size_t i = 0; i < coned.size(); ++i) {
            chain = {i};
            extend(i);
        }

        complex_ = SimplicialComplex(total + static_cast<int>(coned.size()), facets);
        level_count_ = (k < max_fibre) ? k + 1 : max_fibre;
    }

    FiniteCover cover_;
    int truncation_;
    SimplicialComplex union_complex_;  // the untruncated fibrewise simplex complex
    SimplicialComplex complex_;
    std::vector<FaceMask> coned_faces_;
    int level_count_ = 1;
};

inline SimplicialResolution build_nondegenerate(FiniteCover cover) {
    return SimplicialResolution(std::move(cover), 0);
}

inline SimplicialResolution truncate(const SimplicialResolution& res, int k) {
    if (k < 1) throw Error(ErrorKind::Domain, "truncation level must be positive");
    return SimplicialResolution(res.cover(), k);
}

// Relative homology H(X, A) for a subcomplex A of X; A == nullptr means the
// void subspace, giving unreduced homology of X. The empty face never enters
// the relative chain complex.
inline HomologyGroups relative_homology(const SimplicialComplex& x, const SimplicialComplex* a) {
    auto faces = x.faces_by_count();
    std::vector<std::vector<FaceMask>> rel(faces.size());
    for (std::size_t c = 1; c < faces.size(); ++c) {
        if (a == nullptr) {
            rel[c] = faces[c];
        } else {
            for (FaceMask f : faces[c])
                if (!a->is_face(f)) rel[c].push_back(f);
        }
    }
    std::vector<std::size_t> ranks(faces.size() + 1, 0);
    std::vector<std::vector<Int>> torsions(faces.size() + 1);
    for (std::size_t c = 2; c <= faces.size(); ++c) {
        if (c >= faces.size() || rel[c].empty()) continue;
        IntMatrix b = detail::boundary_matrix(rel[c - 1], rel[c]);
        SmithDecomposition snf = smith_normal_form(b);
        ranks[c] = snf.rank();
        for (std::size_t i = 0; i < snf.rank(); ++i)
            if (snf.diag[i] > 1) torsions[c].push_back(snf.diag[i]);
    }
    HomologyGroups h;
    for (std::size_t c = 1; c < faces.size(); ++c) {
        AbelianGroup g;
        g.rank = static_cast<long>(rel[c].size() - ranks[c] - ranks[c + 1]);
        g.torsion = torsions[c + 1];
        h.set(static_cast<int>(c) - 1, std::move(g));
    }
    return h;
}

// Per-level relative homology H(X_l, X_{l-1}) of the skeletal filtration;
// entry i is level i+1.
inline std::vector<HomologyGroups> filtration_homology(const SimplicialResolution& res) {
    std::vector<HomologyGroups> out;
    SimplicialComplex prev;  // unused at level 1
    for (int level = 1; level <= res.level_count(); ++level) {
        SimplicialComplex cur = res.filtration_level(level);
        out.push_back(relative_homology(cur, level == 1 ? nullptr : &prev));
        prev = std::move(cur);
    }
    return out;
}

// Homological shadow of the resolution being an equivalence onto the base.
inline bool verify_resolution_equivalence(const SimplicialResolution& res) {
    return reduced_homology(res.complex()) == reduced_homology(res.cover().base);
}

}  // namespace torictk
