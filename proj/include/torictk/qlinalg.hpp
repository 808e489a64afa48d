#pragma once

// Exact rational elimination helpers backing the cone geometry: kernels,
// linear solves, and extreme rays of pointed cones {t : M t >= 0}.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "torictk/error.hpp"
#include "torictk/lattice.hpp"

namespace torictk {

using Rat = mpq_class;
using QMatrix = std::vector<std::vector<Rat>>;

inline QMatrix to_rational(const IntMatrix& a) {
    QMatrix q(a.rows(), std::vector<Rat>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) q[i][j] = Rat(a.at(i, j));
    return q;
}

// Row-reduce in place; returns pivot column per pivot row.
inline std::vector<std::size_t> row_reduce(QMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rational_rank(QMatrix m) { return row_reduce(m).size(); }

// Kernel basis of an integer matrix over Q, cleared to primitive integer
// vectors. (For the saturated kernel *lattice* use integer_kernel_basis.)
inline std::vector<std::vector<Int>> rational_kernel(const IntMatrix& a) {
    QMatrix m = to_rational(a);
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Int>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        Int lcm(1);
        for (const Rat& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<Int> w(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            Rat scaled = v[j] * Rat(lcm);
            w[j] = scaled.get_num();
        }
        basis.push_back(primitive_vector(std::move(w)));
    }
    return basis;
}

// Any rational solution of A x = b, or nullopt if inconsistent.
inline std::optional<std::vector<Rat>> rational_solve(const IntMatrix& a,
                                                      const std::vector<Rat>& b) {
    if (b.size() != a.rows()) throw Error(ErrorKind::Domain, "rational_solve: bad rhs length");
    const std::size_t cols = a.cols();
    QMatrix m(a.rows(), std::vector<Rat>(cols + 1));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = Rat(a.at(i, j));
        m[i][cols] = b[i];
    }
    std::vector<std::size_t> pivots = row_reduce(m);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
    return x;
}

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + (k - i) < n + 0) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Extreme rays of the pointed cone C = {t in R^d : M t >= 0}, as primitive
// integer vectors. Requires {t : M t = 0} = {0}; candidates come from rank
// d-1 kernels of (d-1)-row subsets, extremality is re-verified on the full
// active set.
inline std::vector<std::vector<Int>> extreme_rays(const IntMatrix& m) {
    const std::size_t d = m.cols(), s = m.rows();
    std::vector<std::vector<Int>> rays;
    if (d == 0) return rays;
    if (d == 1) {
        // C is {0}, a half line, or would be all of R (excluded by pointedness).
        for (int dir : {1, -1}) {
            bool ok = true;
            for (std::size_t i = 0; i < s; ++i)
                if (dir * m.at(i, 0) < 0) { ok = false; break; }
            if (ok) rays.push_back({Int(dir)});
        }
        if (rays.size() == 2) throw Error(ErrorKind::Domain, "extreme_rays: cone not pointed");
        return rays;
    }
    if (s + 1 < d) throw Error(ErrorKind::Domain, "extreme_rays: cone not pointed");

    std::set<std::vector<Int>> seen;
    std::vector<std::size_t> idx(d - 1);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do {
        IntMatrix sub(idx.size(), d);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) sub.at(i, j) = m.at(idx[i], j);
        std::vector<std::vector<Int>> ker = rational_kernel(sub);
        if (ker.size() != 1) continue;
        std::vector<Int> t = ker[0];
        // orient into the cone
        int feasible = 0;  // +1 for t, -1 for -t, 0 undecided
        bool infeasible = false;
        std::vector<int> signs(s, 0);
        for (std::size_t i = 0; i < s; ++i) {
            Int val(0);
            for (std::size_t j = 0; j < d; ++j) val += m.at(i, j) * t[j];
            signs[i] = sgn(val);
            if (signs[i] > 0) {
                if (feasible < 0) { infeasible = true; break; }
                feasible = 1;
            } else if (signs[i] < 0) {
                if (feasible > 0) { infeasible = true; break; }
                feasible = -1;
            }
        }
        if (infeasible) continue;
        if (feasible == 0) throw Error(ErrorKind::Domain, "extreme_rays: cone not pointed");
        if (feasible < 0)
            for (Int& x : t) x = -x;
        // extremality: active rows span a hyperplane
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < s; ++i)
            if (signs[i] == 0) active.push_back(i);
        IntMatrix act(active.size(), d);
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = 0; j < d; ++j) act.at(i, j) = m.at(active[i], j);
        if (rational_rank(to_rational(act)) != d - 1) continue;
        std::vector<Int> key = primitive_vector(t);
        if (seen.insert(key).second) rays.push_back(key);
    } while (detail::next_combination(idx, s));
    return rays;
}

// Does {t : M t >= 0} contain a nonzero point? (M must have trivial kernel.)
inline bool cone_nontrivial(const IntMatrix& m) { return !extreme_rays(m).empty(); }

}  // namespace torictk
