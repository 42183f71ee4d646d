#pragma once

// Minimal bundles with a prescribed Chern number over closed oriented surfaces.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bundle.hpp"
#include "complex.hpp"
#include "homology.hpp"

namespace cbundle {

struct SurfaceOrientationData {
    FundamentalClass fundamental;
    int positive = 0;
    int negative = 0;

    int triangles() const { return positive + negative; }
    /// Largest |c| realizable over the surface.
    int chern_bound() const { return triangles() / 2; }
};

/// Any triangulated closed oriented surface has as many positive as negative
/// triangles, since the all-ones 2-cochain is the coboundary of the all-ones
/// 1-cochain.
inline SurfaceOrientationData parity_check(const SemiSimplicialSet& T, const FundamentalClass& fm) {
    require(int(fm.coefficients.size()) == T.count(2), ErrorKind::Malformed,
            "fundamental class does not match the surface");
    SurfaceOrientationData d{fm, fm.positive(), fm.negative()};
    require(d.positive == d.negative, ErrorKind::Internal,
            "surface has " + std::to_string(d.positive) + " positive and " + std::to_string(d.negative) +
                " negative triangles");
    return d;
}

/// Binary cochain pairing to c with the fundamental class: |c| ones on the
/// triangles whose sign matches c. Lowest ids first unless a shuffle seed is given.
inline IntCochain cocycle_for_chern(const SemiSimplicialSet& T, const FundamentalClass& fm, long c,
                                    std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
    auto data = parity_check(T, fm);
    require(std::labs(c) <= data.chern_bound(), ErrorKind::BoundExceeded,
            "|c| = " + std::to_string(std::labs(c)) + " exceeds half the triangle count (" +
                std::to_string(data.chern_bound()) + ")");
    IntCochain u = IntCochain::zero(T, 2);
    const int want = c >= 0 ? 1 : -1;
    std::vector<int> slots;
    for (int t = 0; t < T.count(2); ++t)
        if (fm.sign(t) == want)
            slots.push_back(t);
    if (shuffle_seed) {
        std::mt19937_64 rng(*shuffle_seed);
        std::shuffle(slots.begin(), slots.end(), rng);
    }
    for (long n = 0; n < std::labs(c); ++n)
        u.values[std::size_t(slots[std::size_t(n)])] = 1;
    return u;
}

inline MinimalBundle build_surface_bundle(const SemiSimplicialSet& T, const FundamentalClass& fm, long c,
                                          std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
    return minimal_from_cocycle(T, cocycle_for_chern(T, fm, c, shuffle_seed));
}

/// Integer homology of the total space of the circle bundle with Chern
/// number c over the closed oriented surface of genus g (Gysin sequence):
/// H0 = Z, H1 = Z^{2g} + Z/|c| (Z^{2g+1} when c = 0), H2 = Z^{2g} (+Z when c = 0), H3 = Z.
inline HomologyGroups expected_circle_bundle_homology(int genus, long c) {
    HomologyGroups H;
    H.groups.resize(4);
    H.groups[0].betti = 1;
    H.groups[1].betti = 2 * genus + (c == 0 ? 1 : 0);
    if (std::labs(c) > 1)
        H.groups[1].torsion.push_back(Integer(std::labs(c)));
    H.groups[2].betti = 2 * genus + (c == 0 ? 1 : 0);
    H.groups[3].betti = 1;
    return H;
}

/// Genus of a closed oriented surface from its Euler characteristic.
inline int surface_genus(const SemiSimplicialSet& T) { return int((2 - euler_characteristic(T)) / 2); }

} // namespace cbundle
