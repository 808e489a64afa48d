#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library code paths they check.

#include <random>
#include <string>
#include <vector>

#include "torictk/fan.hpp"
#include "torictk/lattice.hpp"
#include "torictk/qlinalg.hpp"
#include "torictk/resolution.hpp"

namespace testutil {

using torictk::Fan;
using torictk::Int;
using torictk::IntMatrix;
using torictk::RationalCone;

inline std::string data_dir() { return TORICTK_DATA_DIR; }
inline std::string cli_path() { return TORICTK_CLI_PATH; }

inline Fan hirzebruch(int k) {
    return Fan(2,
               {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(k)}, {Int(0), Int(-1)}},
               {RationalCone{{0, 1}}, RationalCone{{1, 2}}, RationalCone{{2, 3}},
                RationalCone{{0, 3}}},
               "H(" + std::to_string(k) + ")");
}

inline Fan projective(int n) {
    std::vector<std::vector<Int>> rays;
    for (int j = 0; j < n; ++j) {
        std::vector<Int> e(static_cast<std::size_t>(n), Int(0));
        e[static_cast<std::size_t>(j)] = 1;
        rays.push_back(e);
    }
    rays.emplace_back(static_cast<std::size_t>(n), Int(-1));
    std::vector<RationalCone> cones;
    for (int skip = n; skip >= 0; --skip) {
        RationalCone c;
        for (int j = 0; j <= n; ++j)
            if (j != skip) c.ray_indices.push_back(j);
        cones.push_back(c);
    }
    return Fan(n, std::move(rays), std::move(cones), "P" + std::to_string(n));
}

// Exact membership oracle: x in Cone(generators of c)? Solves the system
// over Q and checks nonnegativity; independent of the wall-criterion and
// index-set paths in the library.
inline bool point_in_simplicial_cone(const Fan& fan, const RationalCone& c,
                                     const std::vector<Int>& x) {
    if (c.size() == 0) {
        for (const Int& e : x)
            if (e != 0) return false;
        return true;
    }
    IntMatrix g = fan.cone_matrix(c);
    std::vector<torictk::Rat> rhs;
    rhs.reserve(x.size());
    for (const Int& e : x) rhs.emplace_back(e);
    auto sol = torictk::rational_solve(g, rhs);
    if (!sol) return false;
    // rational_solve returns some solution; for independent generators it is
    // the only one, but verify the residual to be safe
    std::vector<torictk::Rat> img(x.size(), torictk::Rat(0));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) img[i] += torictk::Rat(g.at(i, j)) * (*sol)[j];
    for (std::size_t i = 0; i < x.size(); ++i)
        if (img[i] != torictk::Rat(x[i])) return false;
    for (const auto& a : *sol)
        if (a < 0) return false;
    return true;
}

inline bool point_in_some_cone(const Fan& fan, const std::vector<Int>& x) {
    for (const auto& c : fan.max_cones())
        if (point_in_simplicial_cone(fan, c, x)) return true;
    return false;
}

// Complete smooth 2-D fans: cyclic primitive sequences with consecutive
// determinant one, grown from P^2 or a Hirzebruch fan by random corner
// insertions v_i + v_{i+1} (each insertion preserves the determinant
// condition).
inline Fan random_complete_smooth_2d(std::mt19937& rng, int target_rays) {
    std::vector<std::vector<long long>> v;
    if (rng() % 2 == 0) {
        v = {{1, 0}, {0, 1}, {-1, -1}};
    } else {
        long long k = static_cast<long long>(rng() % 3);
        v = {{1, 0}, {0, 1}, {-1, k}, {0, -1}};
    }
    while (static_cast<int>(v.size()) < target_rays) {
        std::size_t i = rng() % v.size();
        std::size_t j = (i + 1) % v.size();
        std::vector<long long> s = {v[i][0] + v[j][0], v[i][1] + v[j][1]};
        v.insert(v.begin() + static_cast<long>(j), s);
    }
    std::vector<std::vector<Int>> rays;
    for (const auto& w : v) rays.push_back({torictk::to_int(w[0]), torictk::to_int(w[1])});
    std::vector<RationalCone> cones;
    for (std::size_t i = 0; i < v.size(); ++i)
        cones.push_back(RationalCone{{static_cast<int>(i), static_cast<int>((i + 1) % v.size())}});
    return Fan(2, std::move(rays), std::move(cones), "random2d");
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, long long max_abs) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_int_distribution<long long> entry(-max_abs, max_abs);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = torictk::to_int(entry(rng));
    return m;
}

// Random finite covers: bases are small complexes (mostly graphs with the
// occasional triangle), fibre sizes 1..5, with per-facet fibre totals kept
// small enough for exact homology to stay fast.
inline torictk::FiniteCover random_cover(std::mt19937& rng) {
    int b = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<int>> facets;
    for (int v = 0; v < b; ++v)
        facets.push_back({v});  // every vertex present; edges may subsume
    for (int v = 0; v < b; ++v)
        for (int w = v + 1; w < b; ++w)
            if (rng() % 3 == 0) facets.push_back({v, w});
    if (b >= 3 && rng() % 2 == 0) {
        int v = static_cast<int>(rng() % b);
        int w = (v + 1) % b;
        int u = (v + 2) % b;
        facets.push_back({std::min({v, w, u}), std::max({v, w, u}),
                          v + w + u - std::min({v, w, u}) - std::max({v, w, u})});
    }
    torictk::SimplicialComplex base(b, facets);
    for (;;) {
        std::vector<int> sizes(static_cast<std::size_t>(b));
        for (int v = 0; v < b; ++v) sizes[static_cast<std::size_t>(v)] = 1 + static_cast<int>(rng() % 5);
        bool ok = true;
        for (torictk::FaceMask f : base.facets()) {
            int sum = 0;
            for (int v = 0; v < b; ++v)
                if (f & (torictk::FaceMask(1) << v)) sum += sizes[static_cast<std::size_t>(v)];
            if (sum > 8) ok = false;
        }
        if (!ok) continue;
        std::vector<int> projection;
        for (int v = 0; v < b; ++v)
            for (int i = 0; i < sizes[static_cast<std::size_t>(v)]; ++i) projection.push_back(v);
        return torictk::FiniteCover{base, projection};
    }
}

// Independent SNF oracle: the k-th determinantal divisor (gcd of all k x k
// minors); the invariant factors are their successive quotients.
inline std::vector<Int> determinantal_divisors(const IntMatrix& a) {
    const std::size_t n = std::min(a.rows(), a.cols());
    std::vector<Int> divisors;
    for (std::size_t k = 1; k <= n; ++k) {
        Int g(0);
        std::vector<std::size_t> ri(k), ci(k);
        for (std::size_t i = 0; i < k; ++i) ri[i] = i;
        bool more_rows = true;
        while (more_rows) {
            for (std::size_t i = 0; i < k; ++i) ci[i] = i;
            bool more_cols = true;
            while (more_cols) {
                IntMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = a.at(ri[i], ci[j]);
                Int d = torictk::determinant(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
                // advance column combination
                std::size_t i = k;
                more_cols = false;
                while (i-- > 0) {
                    if (ci[i] + (k - i) < a.cols()) {
                        ++ci[i];
                        for (std::size_t j2 = i + 1; j2 < k; ++j2) ci[j2] = ci[j2 - 1] + 1;
                        more_cols = true;
                        break;
                    }
                }
            }
            std::size_t i = k;
            more_rows = false;
            while (i-- > 0) {
                if (ri[i] + (k - i) < a.rows()) {
                    ++ri[i];
                    for (std::size_t j2 = i + 1; j2 < k; ++j2) ri[j2] = ri[j2 - 1] + 1;
                    more_rows = true;
                    break;
                }
            }
        }
        divisors.push_back(g);
    }
    return divisors;
}

}  // namespace testutil
