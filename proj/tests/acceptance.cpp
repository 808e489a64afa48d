// Acceptance suite: one line per criterion, exact values, pinned time
// budgets. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "torictk/cox.hpp"
#include "torictk/io.hpp"
#include "torictk/report.hpp"
#include "torictk/resolution.hpp"
#include "torictk/stability.hpp"
#include "torictk/stanley_reisner.hpp"

using namespace torictk;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

const std::vector<std::string> kCorpus = {
    "p1.fan",  "p2.fan",  "p3.fan",  "p4.fan",          "hirzebruch_k0.fan",
    "hirzebruch_k1.fan", "hirzebruch_k2.fan", "hirzebruch_k3.fan", "p1xp1.fan"};

std::vector<Fan> corpus_fans() {
    std::vector<Fan> fans;
    for (const auto& name : kCorpus)
        fans.push_back(parse_fan_file(std::string(TORICTK_DATA_DIR) + "/" + name));
    return fans;
}

// ---- criterion bodies -----------------------------------------------------

void criterion_hirzebruch() {
    for (int k = 0; k <= 3; ++k) {
        auto start = std::chrono::steady_clock::now();
        Fan fan = parse_fan_file(std::string(TORICTK_DATA_DIR) + "/hirzebruch_k" +
                                 std::to_string(k) + ".fan");
        check(validate_fan(fan).ok, "H(k) must validate");
        auto cols = primitive_collections(fan);
        check(cols.size() == 2 && cols[0].indices == IndexSet{0, 2} &&
                  cols[1].indices == IndexSet{1, 3},
              "H(" + std::to_string(k) + ") primitive collections must be {1,3},{2,4}");
        check(r_min(fan) == 2, "H(k) r_min must be 2");

        GSigma g = gsigma(fan);
        IntMatrix expected(4, 2);
        expected.at(0, 0) = 1;
        expected.at(1, 1) = 1;
        expected.at(2, 0) = 1;
        expected.at(3, 0) = k;
        expected.at(3, 1) = 1;
        check(g.structure.rank == 2 && g.structure.torsion.empty(),
              "G must be a rank-2 torus");
        check(same_lattice(g.parametrization, expected),
              "G parametrization must be column-equivalent to (u1,u2,u1,u1^k u2)");
        check(same_lattice(IntMatrix::from_columns(4, admissible_degrees(fan)), expected),
              "degree kernel must be spanned by (1,0,1,k),(0,1,0,1)");

        for (long long d1 = 1; d1 <= 5; ++d1)
            for (long long d2 = 1; d2 <= 5; ++d2) {
                DegreeTuple d = make_degree_tuple(fan, {d1, d2, d1, d2 + k * d1});
                check(d.admissible, "sweep tuple must be admissible");
                check(stability_dimension(d, 2, 2).value == std::min(d1, d2) - 2,
                      "stability dimension must be min{d1,d2} - 2");
            }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        check(ms < 1000, "H(" + std::to_string(k) + ") exceeded 1 s");
    }
}

void criterion_projective() {
    for (int n = 1; n <= 4; ++n) {
        auto start = std::chrono::steady_clock::now();
        Fan fan = parse_fan_file(std::string(TORICTK_DATA_DIR) + "/p" + std::to_string(n) +
                                 ".fan");
        check(fan.ray_count() == static_cast<std::size_t>(n) + 1, "P^n must have n+1 rays");
        check(r_min(fan) == static_cast<std::size_t>(n) + 1, "P^n must have r_min = n+1");
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        check(ms < 1000, "P^n exceeded 1 s");
    }
}

void criterion_rmin_q() {
    auto start = std::chrono::steady_clock::now();
    for (const Fan& fan : corpus_fans()) check(r_min(fan) == q_sigma(fan) + 1, "corpus fan");
    std::mt19937 rng(160914);
    for (int trial = 0; trial < 200; ++trial) {
        Fan fan = testutil::random_complete_smooth_2d(rng, 3 + static_cast<int>(rng() % 8));
        check(validate_fan(fan).ok, "random fan must validate");
        check(r_min(fan) == q_sigma(fan) + 1,
              "random fan " + std::to_string(trial) + " violates r_min = q + 1");
    }
    auto s = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() -
                                                              start)
                 .count();
    check(s < 30, "criterion exceeded 30 s");
}

void criterion_connectivity() {
    auto start = std::chrono::steady_clock::now();
    for (const Fan& fan : corpus_fans()) {
        if (fan.ray_count() > 12) continue;
        ConnectivityCertificate cert = certify_connectivity(fan);
        check(cert.ok, fan.name() + ": moment-angle homology must vanish through 2(r_min-1)");
    }
    HomologyGroups square = moment_angle_homology(
        SimplicialComplex(4, std::vector<std::vector<int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 8);
    check(square.at(3).rank == 2 && square.at(3).torsion.empty(), "4-cycle degree 3 rank 2");
    check(square.at(6).rank == 1 && square.at(6).torsion.empty(), "4-cycle degree 6 rank 1");
    check(square.groups.size() == 2, "4-cycle must have no other homology");
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::vector<int>> facets;
        for (int skip = 0; skip <= n; ++skip) {
            std::vector<int> f;
            for (int v = 0; v <= n; ++v)
                if (v != skip) f.push_back(v);
            facets.push_back(f);
        }
        HomologyGroups h = moment_angle_homology(SimplicialComplex(n + 1, facets), 2 * n + 2);
        check(h.groups.size() == 1 && h.at(2 * n + 1).rank == 1 &&
                  h.at(2 * n + 1).torsion.empty(),
              "boundary of simplex n=" + std::to_string(n) + " must give S^(2n+1)");
    }
    auto s = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() -
                                                              start)
                 .count();
    check(s < 60, "criterion exceeded 60 s");
}

void criterion_zsigma() {
    auto start = std::chrono::steady_clock::now();
    for (const Fan& fan : corpus_fans()) {
        check(fan.ray_count() <= 12, "corpus fan ray budget");
        check(verify_zsigma_decomposition(fan), fan.name() + ": pattern oracle must pass");
    }
    auto s = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() -
                                                              start)
                 .count();
    check(s < 10, "criterion exceeded 10 s");
}

void criterion_bookkeeping() {
    int triples = 0;
    for (long long rmin = 2; rmin <= 4; ++rmin)
        for (long long m = 2; m <= 2 * (rmin - 1); ++m)
            for (long long dmin = 1; dmin <= 4 && triples < 24; ++dmin) {
                ++triples;
                const long long r = rmin + 1;
                DegreeTuple d;
                d.degrees.assign(static_cast<std::size_t>(r), dmin);
                SupportTable t = e1_support(ResolutionKind::Truncated, d, m, rmin);
                Int exceptional = 2 * ambient_dimension(d, m) - 1;
                for (long long k = -2; k <= dmin + 3; ++k)
                    for (long long s = -2; s <= (2 * rmin - m) * (dmin + 1) + 3; ++s) {
                        bool expected;
                        if (k < 0 || k >= dmin + 2)
                            expected = true;
                        else if (k == 0)
                            expected = to_int(s) != exceptional;
                        else if (k <= dmin)
                            expected = s <= (2 * rmin - m) * k - 1;
                        else
                            expected = s <= (2 * rmin - m) * dmin - 1;
                        check(t.provably_zero(k, s) == expected,
                              "support cell mismatch at (k,s)");
                    }
                Int nd = ambient_dimension(d, m);
                for (long long k = 1; k <= dmin; ++k) {
                    Int lhs =
                        bundle_rank(d, m, r, k) + to_int(config_space_dimension(m, r, rmin, k));
                    check(lhs == 2 * nd - to_int((2 * rmin - m - 1) * k + 1),
                          "stratum dimension identity");
                }
            }
    check(triples >= 20, "need at least 20 parameter triples");
}

void criterion_at() {
    auto start = std::chrono::steady_clock::now();
    for (long long dmin = 1; dmin <= 8; ++dmin)
        for (long long rmin = 2; rmin <= 6; ++rmin)
            for (long long m = 2; m <= 2 * (rmin - 1); ++m) {
                long long d0 = (2 * rmin - m - 1) * dmin - 2;
                for (long long t = 1; t * (t + 1) / 2 <= dmin + 1; ++t)
                    check(a_t_minimum(dmin, rmin, m, t) == d0 + t + 1,
                          "a(t) must equal D0 + t + 1");
            }
    auto s = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() -
                                                              start)
                 .count();
    check(s < 60, "criterion exceeded 60 s");
}

void criterion_resolutions() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(86420);
    for (int trial = 0; trial < 100; ++trial) {
        FiniteCover cover = testutil::random_cover(rng);
        SimplicialResolution res = build_nondegenerate(cover);
        HomologyGroups base = reduced_homology(cover.base);
        check(reduced_homology(res.complex()) == base,
              "trial " + std::to_string(trial) + ": non-degenerate resolution");
        long long chi = res.complex().reduced_euler_characteristic();
        long long sum = 0;
        for (const auto& h : filtration_homology(res)) sum += h.euler_characteristic();
        check(sum == chi + 1, "trial " + std::to_string(trial) + ": euler sum");
        for (int k = 1; k <= res.level_count(); ++k) {
            SimplicialResolution cut = truncate(res, k);
            check(reduced_homology(cut.complex()) == base,
                  "trial " + std::to_string(trial) + ": truncation at " + std::to_string(k));
            long long cut_sum = 0;
            for (const auto& h : filtration_homology(cut)) cut_sum += h.euler_characteristic();
            check(cut_sum == cut.complex().reduced_euler_characteristic() + 1,
                  "trial " + std::to_string(trial) + ": truncated euler sum");
        }
    }
    auto s = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() -
                                                              start)
                 .count();
    check(s < 120, "criterion exceeded 120 s");
}

void criterion_lattice() {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 500; ++trial) {
        IntMatrix a = testutil::random_matrix(rng, 6, 5);
        SmithDecomposition snf = smith_normal_form(a);
        check(snf.left * a * snf.right == snf.diagonal_matrix(a.rows(), a.cols()),
              "UAV must be the invariant diagonal");
        Int du = determinant(snf.left), dv = determinant(snf.right);
        check((du == 1 || du == -1) && (dv == 1 || dv == -1), "U, V must be unimodular");
        for (std::size_t i = 0; i + 1 < snf.diag.size(); ++i)
            if (snf.diag[i + 1] != 0)
                check(snf.diag[i] != 0 && snf.diag[i + 1] % snf.diag[i] == 0,
                      "divisibility chain");

        auto basis = integer_kernel_basis(a);
        IntMatrix basis_matrix =
            basis.empty() ? IntMatrix(a.cols(), 0) : IntMatrix::from_columns(a.cols(), basis);
        for (const auto& v : basis) {
            std::vector<Int> img = a.apply(v);
            for (const Int& x : img) check(x == 0, "kernel vector must be annihilated");
        }
        // incremental odometer over {-4..4}^cols with running row sums
        const std::size_t cols = a.cols(), rows = a.rows();
        std::vector<long long> entry(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) entry[i * cols + j] = a.at(i, j).get_si();
        std::vector<long long> v(cols, -4), acc(rows, 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) acc[i] += entry[i * cols + j] * v[j];
        for (;;) {
            bool zero = true;
            for (std::size_t i = 0; i < rows; ++i)
                if (acc[i] != 0) { zero = false; break; }
            bool nonzero_v = false;
            for (long long x : v)
                if (x != 0) { nonzero_v = true; break; }
            if (zero && nonzero_v) {
                std::vector<Int> vi;
                vi.reserve(cols);
                for (long long x : v) vi.push_back(to_int(x));
                check(lattice_contains(basis_matrix, vi),
                      "brute-force kernel vector must lie in the basis lattice");
                std::vector<std::vector<Int>> stacked = basis;
                stacked.push_back(vi);
                check(lattice_rank(IntMatrix::from_columns(cols, stacked)) == basis.size(),
                      "stacking must not raise the kernel rank");
            }
            std::size_t pos = 0;
            while (pos < cols && v[pos] == 4) {
                for (std::size_t i = 0; i < rows; ++i) acc[i] -= entry[i * cols + pos] * 8;
                v[pos++] = -4;
            }
            if (pos == cols) break;
            ++v[pos];
            for (std::size_t i = 0; i < rows; ++i) acc[i] += entry[i * cols + pos];
        }
    }
}

struct Criterion {
    int id;
    std::string label;
    std::function<void()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "Hirzebruch exactness (collections, r_min, G, degree kernel, stability dim)",
         criterion_hirzebruch},
        {2, "projective-space exactness (r, r_min) = (n+1, n+1)", criterion_projective},
        {3, "r_min = q_sigma + 1 on corpus and 200 random complete smooth 2-D fans",
         criterion_rmin_q},
        {4, "moment-angle connectivity through 2(r_min - 1), plus pinned sphere tables",
         criterion_connectivity},
        {5, "irrelevant-locus decomposition over all {0,1}^r patterns", criterion_zsigma},
        {6, "spectral-sequence support tables and stratum dimension identity",
         criterion_bookkeeping},
        {7, "step-set minimum a(t) = D0 + t + 1 across the feasible sweep", criterion_at},
        {8, "resolution homology equals base homology on 100 random covers, all truncations",
         criterion_resolutions},
        {9, "Smith certificates and kernel saturation on 500 random matrices",
         criterion_lattice},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS", detail;
        try {
            c.run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("[%s] criterion %d: %s (%lld ms)%s%s\n", verdict.c_str(), c.id,
                    c.label.c_str(), static_cast<long long>(ms), detail.empty() ? "" : " -- ",
                    detail.c_str());
        std::fflush(stdout);
    }
    if (failures == 0) std::printf("all %zu criteria passed\n", criteria.size());
    return failures;
}
