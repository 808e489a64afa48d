#pragma once

// Cones and fans over Z^n: structural validation, smoothness, simpliciality,
// the wall criterion for completeness, and fundamental groups.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "torictk/error.hpp"
#include "torictk/lattice.hpp"
#include "torictk/qlinalg.hpp"

namespace torictk {

// A cone is stored by indices into the owning fan's ray list; the zero cone
// has an empty index set.
struct RationalCone {
    std::vector<int> ray_indices;  // sorted, unique, 0-based

    std::size_t size() const { return ray_indices.size(); }
};

class Fan {
public:
    Fan(int ambient_dim, std::vector<std::vector<Int>> rays, std::vector<RationalCone> max_cones,
        std::string name = "")
        : dim_(ambient_dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)),
          name_(std::move(name)) {
        for (const auto& ray : rays_)
            if (static_cast<int>(ray.size()) != dim_)
                throw Error(ErrorKind::Validation, "fan: ray dimension mismatch");
        for (auto& c : max_cones_) {
            std::sort(c.ray_indices.begin(), c.ray_indices.end());
            c.ray_indices.erase(std::unique(c.ray_indices.begin(), c.ray_indices.end()),
                                c.ray_indices.end());
            for (int k : c.ray_indices)
                if (k < 0 || k >= static_cast<int>(rays_.size()))
                    throw Error(ErrorKind::Validation, "fan: cone ray index out of range");
        }
    }

    int dim() const { return dim_; }
    std::size_t ray_count() const { return rays_.size(); }
    const std::vector<std::vector<Int>>& rays() const { return rays_; }
    const std::vector<Int>& ray(std::size_t k) const { return rays_[k]; }
    const std::vector<RationalCone>& max_cones() const { return max_cones_; }
    const std::string& name() const { return name_; }

    // n x r matrix whose columns are the ray generators.
    IntMatrix ray_matrix() const { return IntMatrix::from_columns(dim_, rays_); }

    // n x s matrix of one cone's generators.
    IntMatrix cone_matrix(const RationalCone& c) const {
        std::vector<std::vector<Int>> gens;
        gens.reserve(c.size());
        for (int k : c.ray_indices) gens.push_back(rays_[k]);
        return IntMatrix::from_columns(dim_, gens);
    }

    // Permutation p with p[0], p[1], ... the ray indices in lexicographic
    // order of the ray vectors. Input order stays the operative indexing;
    // this gives a reproducible companion indexing for reports.
    std::vector<std::size_t> canonical_permutation() const {
        std::vector<std::size_t> perm(rays_.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return rays_[a] < rays_[b];
        });
        return perm;
    }

private:
    int dim_;
    std::vector<std::vector<Int>> rays_;
    std::vector<RationalCone> max_cones_;
    std::string name_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void flag(const std::string& v) {
        ok = false;
        violations.push_back(v);
    }
};

struct SmoothnessReport {
    bool smooth = true;
    std::vector<bool> cone_smooth;
};

namespace detail {

inline bool cone_is_simplicial(const Fan& fan, const RationalCone& c) {
    if (c.size() == 0) return true;
    return lattice_rank(fan.cone_matrix(c)) == c.size();
}

// Positive dependency among generators <=> the cone contains a line.
inline bool cone_contains_line(const Fan& fan, const RationalCone& c) {
    if (cone_is_simplicial(fan, c)) return false;
    IntMatrix g = fan.cone_matrix(c);
    std::vector<std::vector<Int>> ker = rational_kernel(g);
    IntMatrix b = IntMatrix::from_columns(c.size(), ker);
    return cone_nontrivial(b);
}

// Extreme rays of the intersection of two simplicial cones, as primitive
// integer vectors in Z^n. Empty list means the intersection is {0}.
inline std::vector<std::vector<Int>> simplicial_intersection_rays(const Fan& fan,
                                                                  const RationalCone& c1,
                                                                  const RationalCone& c2) {
    const std::size_t n = static_cast<std::size_t>(fan.dim());
    IntMatrix g1 = fan.cone_matrix(c1);
    IntMatrix g2 = fan.cone_matrix(c2);
    if (c1.size() == 0 || c2.size() == 0) return {};

    // span(g1) cap span(g2) from the kernel of [g1 | -g2]
    IntMatrix joint(n, c1.size() + c2.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c1.size(); ++j) joint.at(i, j) = g1.at(i, j);
        for (std::size_t j = 0; j < c2.size(); ++j) joint.at(i, c1.size() + j) = -g2.at(i, j);
    }
    std::vector<std::vector<Int>> span_vecs;
    for (const auto& v : rational_kernel(joint)) {
        std::vector<Int> alpha(v.begin(), v.begin() + c1.size());
        std::vector<Int> x = g1.apply(alpha);
        bool zero = true;
        for (const Int& e : x)
            if (e != 0) { zero = false; break; }
        if (!zero) span_vecs.push_back(primitive_vector(std::move(x)));
    }
    // reduce to an independent basis of the span intersection
    std::vector<std::vector<Int>> basis;
    for (const auto& x : span_vecs) {
        std::vector<std::vector<Int>> trial = basis;
        trial.push_back(x);
        IntMatrix t = IntMatrix::from_columns(n, trial);
        if (rational_rank(to_rational(t)) == trial.size()) basis = std::move(trial);
    }
    if (basis.empty()) return {};
    const std::size_t d = basis.size();
    IntMatrix b = IntMatrix::from_columns(n, basis);

    // constraints: coordinates of B t inside each simplicial cone
    QMatrix constraints;
    for (const IntMatrix* g : {&g1, &g2}) {
        for (std::size_t col = 0; col < d; ++col) {
            std::vector<Rat> rhs(n);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = Rat(b.at(i, col));
            auto sol = rational_solve(*g, rhs);
            if (!sol) throw Error(ErrorKind::Domain, "intersection: basis escapes span");
            if (col == 0) {
                for (std::size_t i = 0; i < g->cols(); ++i)
                    constraints.emplace_back(d, Rat(0));
            }
            std::size_t base = constraints.size() - g->cols();
            for (std::size_t i = 0; i < g->cols(); ++i) constraints[base + i][col] = (*sol)[i];
        }
    }
    // clear denominators row-wise (positive scaling keeps the cone)
    IntMatrix m(constraints.size(), d);
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        Int lcm(1);
        for (const Rat& x : constraints[i])
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        for (std::size_t j = 0; j < d; ++j) {
            Rat scaled = constraints[i][j] * Rat(lcm);
            m.at(i, j) = scaled.get_num();
        }
    }
    std::vector<std::vector<Int>> rays;
    for (const auto& t : extreme_rays(m)) {
        std::vector<Int> x(n, Int(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) x[i] += b.at(i, j) * t[j];
        rays.push_back(primitive_vector(std::move(x)));
    }
    return rays;
}

}  // namespace detail

inline ValidationReport validate_fan(const Fan& fan) {
    ValidationReport report;
    const std::size_t r = fan.ray_count();

    if (fan.dim() < 1) report.flag("ambient dimension must be positive");

    bool rays_ok = true;
    for (std::size_t k = 0; k < r; ++k) {
        Int g = vector_gcd(fan.ray(k));
        if (g == 0) {
            report.flag("zero ray at index " + std::to_string(k + 1));
            rays_ok = false;
        } else if (g != 1) {
            report.flag("non-primitive ray at index " + std::to_string(k + 1));
            rays_ok = false;
        }
    }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            if (fan.ray(a) == fan.ray(b)) {
                report.flag("duplicate rays at indices " + std::to_string(a + 1) + "," +
                            std::to_string(b + 1));
                rays_ok = false;
            }

    std::vector<bool> used(r, false);
    for (const auto& c : fan.max_cones())
        for (int k : c.ray_indices) used[k] = true;
    for (std::size_t k = 0; k < r; ++k)
        if (!used[k]) report.flag("ray " + std::to_string(k + 1) + " does not appear in any cone");

    const auto& cones = fan.max_cones();
    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            bool i_in_j = std::includes(cones[j].ray_indices.begin(), cones[j].ray_indices.end(),
                                        cones[i].ray_indices.begin(), cones[i].ray_indices.end());
            bool j_in_i = std::includes(cones[i].ray_indices.begin(), cones[i].ray_indices.end(),
                                        cones[j].ray_indices.begin(), cones[j].ray_indices.end());
            if (i_in_j || j_in_i)
                report.flag("maximal cones " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " are nested");
        }

    // geometric checks need structurally sound rays
    if (!rays_ok) return report;

    for (std::size_t i = 0; i < cones.size(); ++i)
        if (detail::cone_contains_line(fan, cones[i]))
            report.flag("cone " + std::to_string(i + 1) + " is not strongly convex");

    // pairwise intersections must be common faces; exact check on simplicial
    // pairs, non-simplicial cones are accepted structurally only
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (!detail::cone_is_simplicial(fan, cones[i])) continue;
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            if (!detail::cone_is_simplicial(fan, cones[j])) continue;
            std::set<int> common(cones[i].ray_indices.begin(), cones[i].ray_indices.end());
            std::set<int> other(cones[j].ray_indices.begin(), cones[j].ray_indices.end());
            bool bad = false;
            for (const auto& x : detail::simplicial_intersection_rays(fan, cones[i], cones[j])) {
                bool matched = false;
                for (std::size_t k = 0; k < r && !matched; ++k)
                    if (fan.ray(k) == x && common.count(static_cast<int>(k)) &&
                        other.count(static_cast<int>(k)))
                        matched = true;
                if (!matched) { bad = true; break; }
            }
            if (bad)
                report.flag("intersection of cones " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " is not a common face");
        }
    }
    return report;
}

inline bool is_simplicial(const Fan& fan) {
    for (const auto& c : fan.max_cones())
        if (!detail::cone_is_simplicial(fan, c)) return false;
    return true;
}

// A cone is smooth when its generators extend to a Z-basis: all Smith
// invariant factors equal 1.
inline SmoothnessReport is_smooth(const Fan& fan) {
    SmoothnessReport rep;
    for (const auto& c : fan.max_cones()) {
        bool ok = true;
        if (c.size() > 0) {
            SmithDecomposition snf = smith_normal_form(fan.cone_matrix(c));
            ok = snf.rank() == c.size();
            for (std::size_t i = 0; i < c.size() && ok; ++i) ok = snf.diag[i] == 1;
        }
        rep.cone_smooth.push_back(ok);
        if (!ok) rep.smooth = false;
    }
    return rep;
}

// Wall criterion: a pure full-dimensional simplicial fan is complete iff
// every wall bounds exactly two maximal cones and the dual graph is
// connected.
inline bool is_complete(const Fan& fan) {
    if (!is_simplicial(fan))
        throw Error(ErrorKind::Domain, "unsupported: non-simplicial completeness check");
    const auto& cones = fan.max_cones();
    if (cones.empty()) return false;
    const std::size_t n = static_cast<std::size_t>(fan.dim());
    for (const auto& c : cones)
        if (c.size() != n) return false;  // not pure full-dimensional

    std::map<std::vector<int>, std::vector<std::size_t>> walls;
    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t drop = 0; drop < n; ++drop) {
            std::vector<int> w = cones[i].ray_indices;
            w.erase(w.begin() + static_cast<long>(drop));
            walls[w].push_back(i);
        }
    for (const auto& [w, owners] : walls)
        if (owners.size() != 2) return false;

    // dual-graph connectivity through walls
    std::vector<int> comp(cones.size(), -1);
    std::vector<std::size_t> stack = {0};
    comp[0] = 0;
    while (!stack.empty()) {
        std::size_t c = stack.back();
        stack.pop_back();
        for (std::size_t drop = 0; drop < n; ++drop) {
            std::vector<int> w = cones[c].ray_indices;
            w.erase(w.begin() + static_cast<long>(drop));
            for (std::size_t o : walls[w])
                if (comp[o] < 0) {
                    comp[o] = 0;
                    stack.push_back(o);
                }
        }
    }
    for (int c : comp)
        if (c < 0) return false;
    return true;
}

namespace detail {

// Basis of span(G) cap Z^n, the saturation of the column lattice.
inline std::vector<std::vector<Int>> saturated_span_basis(const IntMatrix& g) {
    const std::size_t n = g.rows();
    if (g.cols() == 0) return {};
    std::vector<std::vector<Int>> perp = integer_kernel_basis(g.transpose());
    if (perp.empty()) {
        std::vector<std::vector<Int>> full;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> e(n, Int(0));
            e[i] = 1;
            full.push_back(e);
        }
        return full;
    }
    IntMatrix w(perp.size(), n);
    for (std::size_t i = 0; i < perp.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) w.at(i, j) = perp[i][j];
    return integer_kernel_basis(w);
}

}  // namespace detail

// pi_1 of the associated variety: Z^n modulo the subgroup generated by the
// lattice points of all cones, which per cone is the saturation of its
// generator span.
inline AbelianGroup fundamental_group(const Fan& fan) {
    const std::size_t n = static_cast<std::size_t>(fan.dim());
    std::vector<std::vector<Int>> cols;
    for (const auto& c : fan.max_cones()) {
        if (c.size() == 0) continue;
        for (auto& v : detail::saturated_span_basis(fan.cone_matrix(c))) cols.push_back(std::move(v));
    }
    return cokernel_structure(IntMatrix::from_columns(n, cols));
}

}  // namespace torictk
