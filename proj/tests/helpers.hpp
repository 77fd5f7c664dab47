#pragma once

// Shared oracles and generators for the test suites. Everything here is
// built from first principles (explicit loops over group elements and
// structure constants), independent of the library construction paths it
// is used to cross-check.

#include <random>
#include <vector>

#include "pentagon/legmap.hpp"
#include "pentagon/linalg.hpp"

namespace testutil {

using namespace pentagon;

inline const FieldSpec Q = FieldSpec::rationals();

/// Phi for the group algebra k[Z/n] as a trivial Hopf module:
/// Phi(e_g (x) e_h) = e_g (x) e_{g+h}, a permutation matrix.
template <class K>
LegMap<K> phi_cyclic(FieldSpec f, Index n) {
    Space m("M", n);
    LegMap<K> phi(f, {m, m}, {m, m});
    for (Index g = 0; g < n; ++g)
        for (Index h = 0; h < n; ++h) phi.at(g * n + (g + h) % n, g * n + h) = k_one<K>(f);
    return phi;
}

template <class K>
LegMap<K> phi_c2(FieldSpec f = Q) { return phi_cyclic<K>(f, 2); }

template <class K>
LegMap<K> random_matrix(FieldSpec f, const Legs& cod, const Legs& dom, std::mt19937_64& rng,
                        long long lo = -3, long long hi = 3) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return LegMap<K>::build(f, cod, dom, [&](Index, Index) { return k_int<K>(d(rng), f); });
}

template <class K>
LegMap<K> random_invertible(FieldSpec f, const Space& s, std::mt19937_64& rng) {
    for (;;) {
        auto m = random_matrix<K>(f, {s}, {s}, rng,
                                  f.kind == FieldSpec::Kind::prime ? 0 : -3,
                                  f.kind == FieldSpec::Kind::prime ? static_cast<long long>(f.p) - 1 : 3);
        if (is_invertible(m)) return m;
    }
}

/// Flip one entry: add 1 to position (r, c).
template <class K>
LegMap<K> corrupted(const LegMap<K>& m, Index r, Index c) {
    LegMap<K> x = m;
    x.at(r, c) = x.at(r, c) + k_one<K>(m.field());
    return x;
}

}  // namespace testutil
