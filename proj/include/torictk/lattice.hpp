#pragma once

// Exact integer linear algebra: Smith normal form, saturated kernels,
// cokernel structure, determinants. Everything is over arbitrary-precision
// integers; no floating point enters this header.

#include <gmpxx.h>

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torictk/error.hpp"

namespace torictk {

using Int = mpz_class;

// mpz_class has no long long constructor; on this ABI long is 64-bit.
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Int(0)) {}

    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw Error(ErrorKind::Domain, "IntMatrix: entry count does not match shape");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    // Columns are the given vectors; all must share one length.
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
        IntMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw Error(ErrorKind::Domain, "IntMatrix::from_columns: ragged input");
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& rhs) const {
        if (cols_ != rhs.rows_)
            throw Error(ErrorKind::Domain, "IntMatrix: shape mismatch in product");
        IntMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
            }
        return out;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != cols_)
            throw Error(ErrorKind::Domain, "IntMatrix: shape mismatch in apply");
        std::vector<Int> out(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    bool is_zero() const {
        for (const Int& e : entries_)
            if (e != 0) return false;
        return true;
    }

    bool operator==(const IntMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
    }
    bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i == 0 ? "[" : " ");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).get_str();
            os << "]" << (i + 1 == rows_ ? "]" : "\n");
        }
        if (rows_ == 0) os << "[]";
        return os.str();
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

// A finitely generated abelian group: Z^rank + sum of Z/d for d in torsion,
// torsion in divisibility order with every d > 1.
struct AbelianGroup {
    long rank = 0;
    std::vector<Int> torsion;

    bool trivial() const { return rank == 0 && torsion.empty(); }

    bool operator==(const AbelianGroup& rhs) const {
        return rank == rhs.rank && torsion == rhs.torsion;
    }
    bool operator!=(const AbelianGroup& rhs) const { return !(*this == rhs); }

    std::string to_string() const {
        if (trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (rank > 0) {
            os << "Z";
            if (rank > 1) os << "^" << rank;
            first = false;
        }
        for (const Int& d : torsion) {
            if (!first) os << " + ";
            os << "Z/" << d.get_str();
            first = false;
        }
        return os.str();
    }
};

// U * A * V = diag. U, V unimodular; diag has the divisibility chain with
// zeros trailing and length min(rows, cols).
struct SmithDecomposition {
    IntMatrix left;
    IntMatrix right;
    std::vector<Int> diag;

    std::size_t rank() const {
        std::size_t r = 0;
        while (r < diag.size() && diag[r] != 0) ++r;
        return r;
    }

    IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const {
        IntMatrix d(rows, cols);
        for (std::size_t i = 0; i < diag.size(); ++i) d.at(i, i) = diag[i];
        return d;
    }
};

namespace detail {

inline void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += q * m.at(src, j);
}

inline void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += q * m.at(i, src);
}

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

inline void negate_row(IntMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = -m.at(i, j);
}

}  // namespace detail

// Smallest-nonzero-magnitude pivot with full row/column reduction; the
// divisibility fix-up folds offending entries back into the pivot row, so
// each diagonal entry divides everything that remains.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    IntMatrix s = a;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    const std::size_t steps = rows < cols ? rows : cols;

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // pick the smallest nonzero |entry| in the trailing block; a
            // unit entry is already optimal
            std::size_t pi = t, pj = t;
            bool found = false;
            Int best;
            for (std::size_t i = t; i < rows && !(found && best == 1); ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (s.at(i, j) == 0) continue;
                    Int mag = abs(s.at(i, j));
                    if (!found || mag < best) {
                        found = true;
                        best = mag;
                        pi = i;
                        pj = j;
                        if (best == 1) break;
                    }
                }
            if (!found) goto done;  // trailing block is zero

            detail::swap_rows(s, t, pi);
            detail::swap_rows(u, t, pi);
            detail::swap_cols(s, t, pj);
            detail::swap_cols(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = -(s.at(i, t) / s.at(t, t));
                detail::add_row(s, i, t, q);
                detail::add_row(u, i, t, q);
                if (s.at(i, t) != 0) clean = false;  // remainder became the smaller pivot
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = -(s.at(t, j) / s.at(t, t));
                detail::add_col(s, j, t, q);
                detail::add_col(v, j, t, q);
                if (s.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide the whole trailing block
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        detail::add_row(s, t, i, Int(1));
                        detail::add_row(u, t, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (s.at(t, t) < 0) {
            detail::negate_row(s, t);
            detail::negate_row(u, t);
        }
    }
done:
    SmithDecomposition out;
    out.diag.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) out.diag[i] = s.at(i, i);
    out.left = std::move(u);
    out.right = std::move(v);
    return out;
}

inline std::size_t lattice_rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

// Basis of the saturated kernel lattice {v in Z^cols : A v = 0}, read off the
// change-of-basis matrix V (never by clearing rational denominators).
inline std::vector<std::vector<Int>> integer_kernel_basis(const IntMatrix& a) {
    SmithDecomposition snf = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = snf.rank(); j < a.cols(); ++j) basis.push_back(snf.right.column(j));
    return basis;
}

// Structure of Z^rows / (column span of A).
inline AbelianGroup cokernel_structure(const IntMatrix& a) {
    SmithDecomposition snf = smith_normal_form(a);
    AbelianGroup g;
    g.rank = static_cast<long>(a.rows() - snf.rank());
    for (std::size_t i = 0; i < snf.rank(); ++i)
        if (snf.diag[i] > 1) g.torsion.push_back(snf.diag[i]);
    return g;
}

// Bareiss fraction-free elimination; exact signed determinant.
inline Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::Domain, "determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return Int(1);
    IntMatrix m = a;
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return Int(0);
            detail::swap_rows(m, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev;  // exact by Bareiss
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

inline bool is_unimodular(const IntMatrix& a) {
    if (a.rows() != a.cols()) return false;
    Int d = determinant(a);
    return d == 1 || d == -1;
}

// Does v lie in the lattice spanned by the columns of basis? Solves the
// system over Q by fraction-free elimination and checks integrality.
inline bool lattice_contains(const IntMatrix& basis, const std::vector<Int>& v) {
    if (v.size() != basis.rows()) throw Error(ErrorKind::Domain, "lattice_contains: bad vector length");
    // Solve via SNF: x = V * D^-1 * (U b) must be integral.
    SmithDecomposition snf = smith_normal_form(basis);
    std::vector<Int> ub = snf.left.apply(v);
    const std::size_t r = snf.rank();
    std::vector<Int> y(basis.cols(), Int(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < r) {
            if (ub[i] % snf.diag[i] != 0) return false;
            y[i] = ub[i] / snf.diag[i];
        } else if (ub[i] != 0) {
            return false;  // v outside the column span
        }
    }
    return true;  // x = V y is the integral solution
}

// Two integer column families span the same lattice.
inline bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) return false;
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (!lattice_contains(a, b.column(j))) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (!lattice_contains(b, a.column(j))) return false;
    return true;
}

inline Int vector_gcd(const std::vector<Int>& v) {
    Int g(0);
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

// Divide out the content; direction is preserved.
inline std::vector<Int> primitive_vector(std::vector<Int> v) {
    Int g = vector_gcd(v);
    if (g == 0) return v;
    for (Int& x : v) x /= g;
    return v;
}

}  // namespace torictk
