#include <catch2/catch.hpp>

#include <random>
#include <set>

#include "helpers.hpp"
#include "torictk/cox.hpp"

using namespace torictk;
using testutil::hirzebruch;
using testutil::projective;
using testutil::random_complete_smooth_2d;

namespace {

// Brute-force oracle for minimal non-faces, written directly against the
// cone index sets.
std::set<std::vector<int>> brute_minimal_nonfaces(const Fan& fan) {
    const int r = static_cast<int>(fan.ray_count());
    auto contained_in_some_cone = [&](const std::vector<int>& s) {
        for (const auto& c : fan.max_cones()) {
            bool inside = true;
            for (int k : s)
                if (!std::binary_search(c.ray_indices.begin(), c.ray_indices.end(), k)) {
                    inside = false;
                    break;
                }
            if (inside) return true;
        }
        return s.empty();
    };
    std::set<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        std::vector<int> s;
        for (int k = 0; k < r; ++k)
            if (mask & (1u << k)) s.push_back(k);
        if (contained_in_some_cone(s)) continue;
        bool minimal = true;
        for (std::size_t drop = 0; drop < s.size() && minimal; ++drop) {
            std::vector<int> sub = s;
            sub.erase(sub.begin() + static_cast<long>(drop));
            if (!contained_in_some_cone(sub)) minimal = false;
        }
        if (minimal) out.insert(s);
    }
    return out;
}

}  // namespace

TEST_CASE("irrelevant monomials") {
    Fan h = hirzebruch(1);
    auto irr = irrelevant_monomials(h);
    REQUIRE(irr.size() == 4);
    REQUIRE(irr[0] == IndexSet{2, 3});  // sigma = Cone(n1, n2) -> z3 z4
    Fan p2 = projective(2);
    auto irr2 = irrelevant_monomials(p2);
    REQUIRE(irr2[0] == IndexSet{2});  // complement of {1,2}
    // a cone using every ray has monomial 1
    Fan quadrant(2, {{Int(1), Int(0)}, {Int(0), Int(1)}}, {RationalCone{{0, 1}}});
    REQUIRE(irrelevant_monomials(quadrant)[0].empty());
}

TEST_CASE("primitive collections on pinned examples") {
    SECTION("Hirzebruch: {1,3} and {2,4}") {
        for (int k = 0; k <= 3; ++k) {
            auto cols = primitive_collections(hirzebruch(k));
            REQUIRE(cols.size() == 2);
            REQUIRE(cols[0].indices == IndexSet{0, 2});
            REQUIRE(cols[1].indices == IndexSet{1, 3});
        }
    }
    SECTION("projective spaces: the full ray set") {
        for (int n = 1; n <= 4; ++n) {
            auto cols = primitive_collections(projective(n));
            REQUIRE(cols.size() == 1);
            REQUIRE(static_cast<int>(cols[0].indices.size()) == n + 1);
        }
    }
    SECTION("two opposite rays with no joining cone") {
        Fan fan(2, {{Int(1), Int(0)}, {Int(-1), Int(0)}},
                {RationalCone{{0}}, RationalCone{{1}}});
        auto cols = primitive_collections(fan);
        REQUIRE(cols.size() == 1);
        REQUIRE(cols[0].indices == IndexSet{0, 1});
    }
    SECTION("brute-force minimal non-face oracle agrees") {
        std::vector<Fan> fans = {hirzebruch(0), hirzebruch(2), projective(2), projective(3),
                                 projective(4)};
        std::mt19937 rng(31337);
        for (int t = 0; t < 10; ++t) fans.push_back(random_complete_smooth_2d(rng, 4 + t % 6));
        for (const Fan& fan : fans) {
            auto expected = brute_minimal_nonfaces(fan);
            auto got = primitive_collections(fan);
            REQUIRE(got.size() == expected.size());
            for (const auto& p : got) REQUIRE(expected.count(p.indices) == 1);
        }
    }
    SECTION("minimality holds exhaustively") {
        for (int k = 0; k <= 3; ++k) {
            Fan fan = hirzebruch(k);
            for (const auto& p : primitive_collections(fan)) {
                auto in_cone = [&](const IndexSet& s) {
                    for (const auto& c : fan.max_cones())
                        if (std::includes(c.ray_indices.begin(), c.ray_indices.end(), s.begin(),
                                          s.end()))
                            return true;
                    return false;
                };
                REQUIRE_FALSE(in_cone(p.indices));
                for (std::size_t drop = 0; drop < p.indices.size(); ++drop) {
                    IndexSet sub = p.indices;
                    sub.erase(sub.begin() + static_cast<long>(drop));
                    REQUIRE(in_cone(sub));
                }
            }
        }
    }
}

TEST_CASE("r_min") {
    for (int k = 0; k <= 3; ++k) REQUIRE(r_min(hirzebruch(k)) == 2);
    for (int n = 1; n <= 4; ++n) REQUIRE(r_min(projective(n)) == static_cast<std::size_t>(n) + 1);
    // affine fan: the coordinate quadrant has no primitive collection
    Fan quadrant(2, {{Int(1), Int(0)}, {Int(0), Int(1)}}, {RationalCone{{0, 1}}});
    REQUIRE_THROWS_WITH(r_min(quadrant), "no primitive collection");
}

TEST_CASE("coordinate-subspace locus decomposition") {
    for (int k = 0; k <= 3; ++k) REQUIRE(verify_zsigma_decomposition(hirzebruch(k)));
    for (int n = 1; n <= 4; ++n) REQUIRE(verify_zsigma_decomposition(projective(n)));
    std::mt19937 rng(1845);
    for (int trial = 0; trial < 40; ++trial)
        REQUIRE(verify_zsigma_decomposition(
            random_complete_smooth_2d(rng, 3 + static_cast<int>(rng() % 8))));
}

TEST_CASE("gsigma") {
    SECTION("Hirzebruch parametrization matches the scaling torus") {
        for (long long k = 0; k <= 3; ++k) {
            GSigma g = gsigma(hirzebruch(static_cast<int>(k)));
            REQUIRE(g.structure.rank == 2);
            REQUIRE(g.structure.torsion.empty());
            REQUIRE_FALSE(g.has_torsion);
            REQUIRE(g.parametrization.cols() == 2);
            IntMatrix expected(4, 2);
            // (mu1, mu2) -> (mu1, mu2, mu1, mu1^k mu2)
            expected.at(0, 0) = 1;
            expected.at(1, 1) = 1;
            expected.at(2, 0) = 1;
            expected.at(3, 0) = to_int(k);
            expected.at(3, 1) = 1;
            REQUIRE(same_lattice(g.parametrization, expected));
        }
    }
    SECTION("projective spaces scale diagonally") {
        for (int n = 1; n <= 4; ++n) {
            GSigma g = gsigma(projective(n));
            REQUIRE(g.structure.rank == 1);
            REQUIRE(g.parametrization.cols() == 1);
            IntMatrix diag(static_cast<std::size_t>(n) + 1, 1);
            for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) diag.at(i, 0) = 1;
            REQUIRE(same_lattice(g.parametrization, diag));
        }
    }
    SECTION("free rank r - n on random smooth complete fans") {
        std::mt19937 rng(8899);
        for (int trial = 0; trial < 20; ++trial) {
            Fan fan = random_complete_smooth_2d(rng, 3 + static_cast<int>(rng() % 8));
            GSigma g = gsigma(fan);
            REQUIRE(g.structure.rank == static_cast<long>(fan.ray_count()) - 2);
            REQUIRE(g.structure.torsion.empty());
            // parametrization columns annihilate the ray matrix
            IntMatrix prod = fan.ray_matrix() * g.parametrization;
            REQUIRE(prod.is_zero());
            REQUIRE(lattice_rank(g.parametrization) == fan.ray_count() - 2);
        }
    }
    SECTION("non-spanning rays are rejected") {
        Fan fan(2, {{Int(1), Int(0)}, {Int(-1), Int(0)}},
                {RationalCone{{0}}, RationalCone{{1}}});
        REQUIRE_THROWS_WITH(gsigma(fan), "rays do not span");
    }
}

TEST_CASE("degree admissibility") {
    Fan h2 = hirzebruch(2);
    SECTION("Hirzebruch lattice condition") {
        for (long long d1 = -2; d1 <= 2; ++d1)
            for (long long d2 = -2; d2 <= 2; ++d2) {
                std::vector<Int> d = {to_int(d1), to_int(d2), to_int(d1), to_int(d2 + 2 * d1)};
                REQUIRE(degree_in_gsigma(h2, d));
            }
        REQUIRE_FALSE(degree_in_gsigma(h2, {Int(1), Int(0), Int(0), Int(0)}));
    }
    SECTION("P^2 diagonal degrees") {
        REQUIRE(degree_in_gsigma(projective(2), {Int(1), Int(1), Int(1)}));
        REQUIRE_FALSE(degree_in_gsigma(projective(2), {Int(1), Int(1), Int(0)}));
    }
    SECTION("admissible tuples are closed under integer combinations") {
        std::mt19937 rng(404);
        std::uniform_int_distribution<long long> coeff(-3, 3);
        auto basis = integer_kernel_basis(h2.ray_matrix());
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Int> combo(4, Int(0));
            for (const auto& b : basis) {
                Int c = to_int(coeff(rng));
                for (std::size_t i = 0; i < 4; ++i) combo[i] += c * b[i];
            }
            REQUIRE(degree_in_gsigma(h2, combo));
        }
    }
}

TEST_CASE("cox aggregate") {
    CoxData data = analyze_cox(hirzebruch(1));
    REQUIRE(data.rmin.has_value());
    REQUIRE(*data.rmin == 2);
    REQUIRE(data.zsigma_verified);
    REQUIRE(data.g.has_value());
    REQUIRE(data.collections.size() == 2);
    REQUIRE(data.irrelevant.size() == 4);
}
