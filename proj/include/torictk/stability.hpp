#pragma once

// Degree tuples and the closed-form numerology attached to them: stability
// dimensions, polynomial-space dimensions, affine bundle ranks,
// configuration-space dimensions, spectral-sequence support tables, and the
// step-set minimum behind the stabilization bound.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torictk/cox.hpp"
#include "torictk/error.hpp"
#include "torictk/fan.hpp"
#include "torictk/lattice.hpp"

namespace torictk {

struct DegreeTuple {
    std::vector<long long> degrees;
    bool admissible = false;  // sum d_k n_k = 0 against the associated fan

    long long d_min() const {
        if (degrees.empty()) throw Error(ErrorKind::Domain, "empty degree tuple");
        return *std::min_element(degrees.begin(), degrees.end());
    }

    bool all_positive() const {
        for (long long d : degrees)
            if (d < 1) return false;
        return true;
    }
};

inline DegreeTuple make_degree_tuple(const Fan& fan, std::vector<long long> degrees) {
    DegreeTuple t;
    t.degrees = std::move(degrees);
    std::vector<Int> d;
    d.reserve(t.degrees.size());
    for (long long x : t.degrees) d.push_back(to_int(x));
    t.admissible = degree_in_gsigma(fan, d);
    return t;
}

// Basis of the saturated lattice {D : sum d_k n_k = 0}.
inline std::vector<std::vector<Int>> admissible_degrees(const Fan& fan) {
    return integer_kernel_basis(fan.ray_matrix());
}

inline bool m_in_theorem_range(long long m, long long rmin) {
    return 2 <= m && m <= 2 * (rmin - 1);
}

struct StabilityValue {
    long long value = 0;
    bool m_in_range = true;  // warning flag only; the number is always produced
};

// (2 r_min - m - 1) d_min - 2
inline StabilityValue stability_dimension(const DegreeTuple& d, long long m, long long rmin) {
    return {(2 * rmin - m - 1) * d.d_min() - 2, m_in_theorem_range(m, rmin)};
}

// (2 r_min - m - 1) (floor((d_min + 1) / 2) + 1) - 1
inline StabilityValue star_dimension(const DegreeTuple& d, long long m, long long rmin) {
    long long half = (d.d_min() + 1) / 2;
    return {(2 * rmin - m - 1) * (half + 1) - 1, m_in_theorem_range(m, rmin)};
}

inline Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || n < k) return Int(0);
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

// Complex dimension of the product of polynomial slices: sum of
// C(m + d_k - 1, m); degrees below 1 contribute nothing (their section
// spaces vanish).
inline Int ambient_dimension(const DegreeTuple& d, long long m) {
    Int total(0);
    for (long long dk : d.degrees) total += binomial(m + dk - 1, m);
    return total;
}

// Rank of the affine bundle over the k-th configuration stratum:
// 2 N_D - 2 k r + k - 1, defined for 1 <= k <= d_min.
inline Int bundle_rank(const DegreeTuple& d, long long m, long long r, long long k) {
    if (k < 1 || k > d.d_min()) throw Error(ErrorKind::Domain, "k out of bundle range");
    return 2 * ambient_dimension(d, m) - to_int(2 * k * r) + to_int(k - 1);
}

// (m + 2r - 2 r_min) k
inline long long config_space_dimension(long long m, long long r, long long rmin, long long k) {
    if (k < 1) throw Error(ErrorKind::Domain, "configuration stratum index must be positive");
    return (m + 2 * r - 2 * rmin) * k;
}

struct StabilityReport {
    std::vector<long long> degrees;
    long long d_min = 0;
    long long m = 0;
    long long r_min = 0;
    long long stability_dim = 0;       // (2 r_min - m - 1) d_min - 2
    long long star_dim = 0;            // (2 r_min - m - 1)(floor((d_min+1)/2)+1) - 1
    Int n_d;                           // ambient complex dimension
    bool valid_m_range = true;
};

inline StabilityReport build_stability_report(const DegreeTuple& d, long long m, long long rmin) {
    StabilityReport rep;
    rep.degrees = d.degrees;
    rep.d_min = d.d_min();
    rep.m = m;
    rep.r_min = rmin;
    rep.stability_dim = stability_dimension(d, m, rmin).value;
    rep.star_dim = star_dimension(d, m, rmin).value;
    rep.n_d = ambient_dimension(d, m);
    rep.valid_m_range = m_in_theorem_range(m, rmin);
    return rep;
}

enum class ResolutionKind { Truncated, TruncatedShifted, Veronese, Vassiliev };

inline std::string to_string(ResolutionKind k) {
    switch (k) {
        case ResolutionKind::Truncated: return "truncated";
        case ResolutionKind::TruncatedShifted: return "truncated_shifted";
        case ResolutionKind::Veronese: return "veronese";
        case ResolutionKind::Vassiliev: return "vassiliev";
    }
    return "?";
}

// Vanishing table for the first page of a resolution spectral sequence.
// Cells are only ever marked "provably zero" or "possibly nonzero"; nothing
// here claims nonvanishing. For the truncated kinds the boundary column
// k = d_min + 1 (the cone stratum) vanishes through s = (2 r_min - m) d_min - 1,
// one degree above the last identified column; everything at k >= d_min + 2
// is empty outright.
struct SupportTable {
    ResolutionKind kind = ResolutionKind::Truncated;
    long long d_min = 0;
    long long r_min = 0;
    long long m = 0;
    Int exceptional_s;        // k = 0 column survives only at s = 2N - 1 (truncated kinds)
    long long identified_k_max = 0;  // columns identified with configuration cohomology; <0 means all k >= 1

    bool provably_zero(long long k, const Int& s) const {
        const long long slope = 2 * r_min - m;
        switch (kind) {
            case ResolutionKind::Truncated:
            case ResolutionKind::TruncatedShifted:
                if (k < 0 || k >= d_min + 2) return true;
                if (k == 0) return s != exceptional_s;
                if (k <= d_min) return s <= to_int(slope * k - 1);
                return s <= to_int(slope * d_min - 1);  // k == d_min + 1
            case ResolutionKind::Veronese:
            case ResolutionKind::Vassiliev:
                return k < 0 || s < 0 || s <= to_int(slope * k - 1);
        }
        return false;
    }

    bool provably_zero(long long k, long long s) const { return provably_zero(k, to_int(s)); }

    // Plain-text grid, s from top (high) to bottom, k left to right.
    std::string render(long long k_max, long long s_max) const {
        std::ostringstream os;
        for (long long s = s_max; s >= 0; --s) {
            os << (s < 10 ? " " : "") << s << " |";
            for (long long k = 0; k <= k_max; ++k) os << ' ' << (provably_zero(k, s) ? '0' : '?');
            os << '\n';
        }
        os << "s/k ";
        for (long long k = 0; k <= k_max; ++k) os << (k < 10 ? " " : "") << k;
        os << '\n';
        return os.str();
    }
};

// shift must accompany the shifted kind: the truncation threshold stays at
// d_min of the base tuple while the exceptional column moves to the shifted
// ambient dimension.
inline SupportTable e1_support(ResolutionKind kind, const DegreeTuple& d, long long m,
                               long long rmin,
                               const std::vector<long long>* shift = nullptr) {
    if (d.d_min() < 1) throw Error(ErrorKind::Domain, "support table requires d_min >= 1");
    SupportTable t;
    t.kind = kind;
    t.d_min = d.d_min();
    t.r_min = rmin;
    t.m = m;
    switch (kind) {
        case ResolutionKind::Truncated:
            t.exceptional_s = 2 * ambient_dimension(d, m) - 1;
            t.identified_k_max = t.d_min;
            break;
        case ResolutionKind::TruncatedShifted: {
            if (shift == nullptr)
                throw Error(ErrorKind::Domain, "shifted support table requires a shift tuple");
            if (shift->size() != d.degrees.size())
                throw Error(ErrorKind::Domain, "shift tuple length mismatch");
            DegreeTuple shifted;
            for (std::size_t i = 0; i < d.degrees.size(); ++i)
                shifted.degrees.push_back(d.degrees[i] + (*shift)[i]);
            t.exceptional_s = 2 * ambient_dimension(shifted, m) - 1;
            t.identified_k_max = t.d_min;
            break;
        }
        case ResolutionKind::Veronese:
            t.identified_k_max = (t.d_min + 1) / 2;
            break;
        case ResolutionKind::Vassiliev:
            t.identified_k_max = -1;  // every positive column
            break;
    }
    return t;
}

// Minimum of s - k over the step set: strictly increasing positive
// l_1 < ... < l_t with k = d_min + 1 - sum l_j >= 0 and minimal admissible
// s = slope * d_min - sum (l_j - 1). Honest enumeration; the closed form is
// asserted by the tests, not assumed here.
inline long long a_t_minimum(long long d_min, long long r_min, long long m, long long t) {
    if (t < 1) throw Error(ErrorKind::Domain, "step count must be positive");
    const long long slope = 2 * r_min - m;
    std::optional<long long> best;
    std::vector<long long> ls(static_cast<std::size_t>(t));
    // depth-first over strictly increasing tuples with bounded sum
    struct Rec {
        long long d_min, slope, t;
        std::vector<long long>* ls;
        std::optional<long long>* best;
        void go(long long pos, long long prev, long long sum) {
            if (pos == t) {
                long long k = d_min + 1 - sum;
                long long s = slope * d_min - (sum - t);
                long long val = s - k;
                if (!*best || val < **best) *best = val;
                return;
            }
            for (long long l = prev + 1; sum + l <= d_min + 1; ++l) {
                long long remaining = t - pos - 1;
                // the tail needs l+1, ..., l+remaining
                long long tail = remaining * l + remaining * (remaining + 1) / 2;
                if (sum + l + tail > d_min + 1) break;
                (*ls)[static_cast<std::size_t>(pos)] = l;
                go(pos + 1, l, sum + l);
            }
        }
    } rec{d_min, slope, t, &ls, &best};
    rec.go(0, 0, 0);
    if (!best) throw Error(ErrorKind::Domain, "A_t empty");
    return *best;
}

// Componentwise positive admissible shift D + a; strictly raises d_min.
inline DegreeTuple shift_degree(const Fan& fan, const DegreeTuple& d,
                                const std::vector<long long>& a) {
    if (a.size() != d.degrees.size())
        throw Error(ErrorKind::Domain, "shift tuple length mismatch");
    for (long long ak : a)
        if (ak < 1) throw Error(ErrorKind::Domain, "shift not positive");
    std::vector<Int> a_int;
    a_int.reserve(a.size());
    for (long long x : a) a_int.push_back(to_int(x));
    if (!degree_in_gsigma(fan, a_int)) throw Error(ErrorKind::Domain, "shift not admissible");
    std::vector<long long> out(d.degrees);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i];
    return make_degree_tuple(fan, std::move(out));
}

}  // namespace torictk
