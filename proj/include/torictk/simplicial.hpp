#pragma once

// Finite simplicial complexes with exact reduced integer homology (Smith
// normal form on boundary matrices) and moment-angle homology through the
// full-subcomplex decomposition.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "torictk/error.hpp"
#include "torictk/lattice.hpp"

namespace torictk {

using FaceMask = std::uint64_t;

inline int popcount64(FaceMask m) { return __builtin_popcountll(m); }

// Faces are stored implicitly: a complex is its maximal faces. The empty
// face is always a member, so a complex with no facets is the empty complex
// (reduced homology Z in degree -1), not the void one.
class SimplicialComplex {
public:
    SimplicialComplex() : vertex_count_(0) {}

    SimplicialComplex(int vertex_count, std::vector<FaceMask> facets)
        : vertex_count_(vertex_count) {
        if (vertex_count < 0 || vertex_count > 63)
            throw Error(ErrorKind::Budget, "vertex budget exceeded (max 63)");
        canonicalize(std::move(facets));
    }

    SimplicialComplex(int vertex_count, const std::vector<std::vector<int>>& facets)
        : vertex_count_(vertex_count) {
        if (vertex_count < 0 || vertex_count > 63)
            throw Error(ErrorKind::Budget, "vertex budget exceeded (max 63)");
        std::vector<FaceMask> masks;
        masks.reserve(facets.size());
        for (const auto& f : facets) {
            FaceMask m = 0;
            for (int v : f) {
                if (v < 0 || v >= vertex_count)
                    throw Error(ErrorKind::Validation, "facet vertex out of range");
                m |= (FaceMask(1) << v);
            }
            masks.push_back(m);
        }
        canonicalize(std::move(masks));
    }

    int vertex_count() const { return vertex_count_; }
    const std::vector<FaceMask>& facets() const { return facets_; }
    bool empty() const { return facets_.empty(); }

    bool is_face(FaceMask s) const {
        for (FaceMask f : facets_)
            if ((s & ~f) == 0) return true;
        return s == 0;
    }

    // All faces grouped by vertex count; index c lists the c-vertex faces
    // (c = 0 is the empty face).
    std::vector<std::vector<FaceMask>> faces_by_count() const {
        long long budget = 0;
        for (FaceMask f : facets_) budget += 1LL << popcount64(f);
        if (budget > (1LL << 22))
            throw Error(ErrorKind::Budget, "face enumeration budget exceeded");
        std::set<FaceMask> all;
        all.insert(0);
        for (FaceMask f : facets_) {
            FaceMask sub = f;
            for (;;) {
                all.insert(sub);
                if (sub == 0) break;
                sub = (sub - 1) & f;
            }
        }
        int maxc = 0;
        for (FaceMask f : facets_) maxc = std::max(maxc, popcount64(f));
        std::vector<std::vector<FaceMask>> out(static_cast<std::size_t>(maxc) + 1);
        for (FaceMask s : all) out[static_cast<std::size_t>(popcount64(s))].push_back(s);
        return out;  // each bucket sorted (std::set order)
    }

    // Full subcomplex on the vertex subset J.
    SimplicialComplex full_subcomplex(FaceMask j) const {
        std::vector<FaceMask> restricted;
        restricted.reserve(facets_.size());
        for (FaceMask f : facets_)
            if ((f & j) != 0) restricted.push_back(f & j);
        return SimplicialComplex(vertex_count_, std::move(restricted));
    }

    // Faces with at most max_vertices vertices.
    SimplicialComplex skeleton_by_count(int max_vertices) const {
        std::vector<FaceMask> out;
        for (FaceMask f : facets_) {
            int c = popcount64(f);
            if (c <= max_vertices) {
                out.push_back(f);
                continue;
            }
            // all max_vertices-subsets of f
            std::vector<int> verts;
            for (int v = 0; v < 64; ++v)
                if (f & (FaceMask(1) << v)) verts.push_back(v);
            std::vector<int> idx(static_cast<std::size_t>(max_vertices));
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
            for (;;) {
                FaceMask m = 0;
                for (int i : idx) m |= FaceMask(1) << verts[static_cast<std::size_t>(i)];
                out.push_back(m);
                int k = static_cast<int>(idx.size());
                int i = k - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == c - k + i) --i;
                if (i < 0) break;
                ++idx[static_cast<std::size_t>(i)];
                for (int j2 = i + 1; j2 < k; ++j2)
                    idx[static_cast<std::size_t>(j2)] = idx[static_cast<std::size_t>(j2 - 1)] + 1;
            }
        }
        return SimplicialComplex(vertex_count_, std::move(out));
    }

    // Alternating face count including the empty face (degree -1).
    long long reduced_euler_characteristic() const {
        auto faces = faces_by_count();
        long long chi = 0;
        for (std::size_t c = 0; c < faces.size(); ++c) {
            long long sign = (c % 2 == 0) ? -1 : 1;  // dim = c - 1
            chi += sign * static_cast<long long>(faces[c].size());
        }
        return chi;
    }

    bool operator==(const SimplicialComplex& rhs) const {
        return vertex_count_ == rhs.vertex_count_ && facets_ == rhs.facets_;
    }

private:
    void canonicalize(std::vector<FaceMask> facets) {
        std::sort(facets.begin(), facets.end());
        facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
        std::vector<FaceMask> keep;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            if (facets[i] == 0) continue;  // empty face is implicit
            bool nested = false;
            for (std::size_t j = 0; j < facets.size() && !nested; ++j)
                if (i != j && (facets[i] & ~facets[j]) == 0) nested = true;
            if (!nested) keep.push_back(facets[i]);
        }
        std::sort(keep.begin(), keep.end());
        facets_ = std::move(keep);
    }

    int vertex_count_;
    std::vector<FaceMask> facets_;
};

// Graded abelian group; only nontrivial degrees are stored. Degree -1 is
// meaningful (reduced homology of the empty complex).
struct HomologyGroups {
    std::map<int, AbelianGroup> groups;

    AbelianGroup at(int degree) const {
        auto it = groups.find(degree);
        return it == groups.end() ? AbelianGroup{} : it->second;
    }

    void set(int degree, AbelianGroup g) {
        if (!g.trivial()) groups[degree] = std::move(g);
    }

    bool trivial() const { return groups.empty(); }

    bool trivial_through(int degree) const {
        for (const auto& [d, g] : groups)
            if (d <= degree) return false;
        return true;
    }

    std::optional<int> first_nonzero_degree() const {
        if (groups.empty()) return std::nullopt;
        return groups.begin()->first;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (const auto& [d, g] : groups) chi += (d % 2 == 0 ? 1 : -1) * g.rank;
        return chi;
    }

    bool operator==(const HomologyGroups& rhs) const { return groups == rhs.groups; }
    bool operator!=(const HomologyGroups& rhs) const { return !(*this == rhs); }

    std::string to_string() const {
        if (groups.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, g] : groups) {
            if (!first) os << ", ";
            os << "H_" << d << " = " << g.to_string();
            first = false;
        }
        return os.str();
    }
};

namespace detail {

// Merge invariant factors of a direct sum back into a divisibility chain via
// prime-power buckets.
inline std::vector<Int> normalize_invariant_factors(std::vector<Int> factors) {
    std::map<Int, std::vector<int>> primes;  // prime -> exponents, one per factor
    for (Int f : factors) {
        if (f <= 1) continue;
        for (Int p(2); p * p <= f;) {
            if (f % p == 0) {
                int e = 0;
                while (f % p == 0) {
                    f /= p;
                    ++e;
                }
                primes[p].push_back(e);
            }
            p += (p == 2) ? 1 : 2;
        }
        if (f > 1) primes[f].push_back(1);
    }
    std::size_t chains = 0;
    for (auto& [p, exps] : primes) {
        std::sort(exps.begin(), exps.end(), std::greater<int>());
        chains = std::max(chains, exps.size());
    }
    std::vector<Int> out(chains, Int(1));
    for (auto& [p, exps] : primes)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            Int pe(1);
            for (int e = 0; e < exps[i]; ++e) pe *= p;
            out[i] *= pe;  // out[0] collects the largest powers
        }
    std::reverse(out.begin(), out.end());  // divisibility order, largest last
    return out;
}

// Signed boundary matrix; faces absent from `lower` are quotiented away
// (relative chain complexes pass a filtered face list).
inline IntMatrix boundary_matrix(const std::vector<FaceMask>& lower,
                                 const std::vector<FaceMask>& upper) {
    IntMatrix b(lower.size(), upper.size());
    for (std::size_t j = 0; j < upper.size(); ++j) {
        FaceMask f = upper[j];
        int position = 0;
        for (FaceMask bits = f; bits; bits &= bits - 1, ++position) {
            FaceMask lowest = bits & (~bits + 1);
            FaceMask face = f & ~lowest;
            auto it = std::lower_bound(lower.begin(), lower.end(), face);
            if (it == lower.end() || *it != face) continue;
            std::size_t i = static_cast<std::size_t>(it - lower.begin());
            b.at(i, j) = (position % 2 == 0) ? 1 : -1;
        }
    }
    return b;
}

}  // namespace detail

// Exact reduced integer homology. Degrees run from -1 (empty complex
// convention) to dim K.
inline HomologyGroups reduced_homology(const SimplicialComplex& k) {
    auto faces = k.faces_by_count();
    const std::size_t levels = faces.size();  // counts 0..maxc
    // snf[c] decomposes boundary C_c -> C_{c-1}; index 0 unused (zero map).
    std::vector<std::size_t> ranks(levels + 1, 0);
    std::vector<std::vector<Int>> torsions(levels + 1);
    for (std::size_t c = 1; c < levels; ++c) {
        IntMatrix b = detail::boundary_matrix(faces[c - 1], faces[c]);
        SmithDecomposition snf = smith_normal_form(b);
        ranks[c] = snf.rank();
        for (std::size_t i = 0; i < snf.rank(); ++i)
            if (snf.diag[i] > 1) torsions[c].push_back(snf.diag[i]);
    }
    HomologyGroups h;
    for (std::size_t c = 0; c < levels; ++c) {
        AbelianGroup g;
        g.rank = static_cast<long>(faces[c].size() - ranks[c] - ranks[c + 1]);
        g.torsion = torsions[c + 1];
        h.set(static_cast<int>(c) - 1, std::move(g));
    }
    return h;
}

// Reduced homology of the moment-angle complex of K through max_degree, by
// the full-subcomplex decomposition: degree i collects H_{i-|J|-1}(K_J) over
// nonempty vertex subsets J. Subsets with no face contribute through the
// degree -1 convention.
inline HomologyGroups moment_angle_homology(const SimplicialComplex& k, int max_degree) {
    const int r = k.vertex_count();
    if (r > 14) throw Error(ErrorKind::Budget, "vertex budget exceeded (moment-angle cap is 14)");
    std::map<int, long> rank_acc;
    std::map<int, std::vector<Int>> torsion_acc;
    std::map<FaceMask, HomologyGroups> memo;
    const FaceMask full = (r == 0) ? 0 : ((FaceMask(1) << r) - 1);
    for (FaceMask j = 1; j <= full && full != 0; ++j) {
        auto it = memo.find(j);
        if (it == memo.end()) it = memo.emplace(j, reduced_homology(k.full_subcomplex(j))).first;
        const int shift = popcount64(j) + 1;
        for (const auto& [d, g] : it->second.groups) {
            int degree = d + shift;
            if (degree > max_degree) continue;
            rank_acc[degree] += g.rank;
            for (const Int& t : g.torsion) torsion_acc[degree].push_back(t);
        }
    }
    HomologyGroups h;
    std::set<int> degrees;
    for (const auto& [d, v] : rank_acc) degrees.insert(d);
    for (const auto& [d, v] : torsion_acc) degrees.insert(d);
    for (int d : degrees) {
        AbelianGroup g;
        g.rank = rank_acc.count(d) ? rank_acc[d] : 0;
        if (torsion_acc.count(d)) g.torsion = detail::normalize_invariant_factors(torsion_acc[d]);
        h.set(d, std::move(g));
    }
    return h;
}

}  // namespace torictk
