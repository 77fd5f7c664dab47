#pragma once

#include <string>
#include <vector>

#include "pentagon/hopf.hpp"
#include "pentagon/legmap.hpp"
#include "pentagon/linalg.hpp"
#include "pentagon/pentagon.hpp"

namespace pentagon {

/// Module (X, psi) over a pentagon solution (M, Phi):
/// Phi12 Psi13 Psi23 = Psi23 Phi12 on M (x) M (x) X.
template <class K>
struct PhiModule {
    PentagonSolution<K> base;
    Space X;
    LegMap<K> psi;  // M (x) X -> M (x) X
    bool verified = false;
};

template <class K>
CheckReport check_phi_module(const PentagonSolution<K>& base, const LegMap<K>& psi) {
    if (!base.verified) throw UsageError("check_phi_module needs a verified base solution");
    detail::require_two_legs(psi, "psi");
    if (psi.domain()[0].dim != base.M.dim || psi.rows() != psi.cols())
        throw UsageError("psi must act on M (x) X");
    if (!is_invertible(psi)) throw MathError("Singular", "psi is not invertible");

    const Space m = base.M, x = psi.domain()[1];
    Legs mmx{m, m, x};
    std::vector<LegStep<K>> lhs{{&psi, {1, 2}}, {&psi, {0, 2}}, {&base.phi, {0, 1}}};
    std::vector<LegStep<K>> rhs{{&base.phi, {0, 1}}, {&psi, {1, 2}}};
    CheckReport rep("phi-module");
    rep.record("module-equation", chain_residual_nonzeros(mmx, lhs, rhs, psi.field()));
    return rep;
}

template <class K>
PhiModule<K> make_phi_module(const PentagonSolution<K>& base, const LegMap<K>& psi) {
    return {base, psi.domain()[1], psi, check_phi_module(base, psi).pass};
}

/// Morphism check: psi' (I (x) f) = (I (x) f) psi for f : X -> X'.
template <class K>
CheckReport check_phi_morphism(const PhiModule<K>& a, const PhiModule<K>& b, const LegMap<K>& f) {
    if (!(a.base.phi == b.base.phi)) throw UsageError("morphism between modules over different bases");
    const auto id_m = LegMap<K>::identity(f.field(), {a.base.M});
    CheckReport rep("phi-morphism");
    rep.record("intertwines", (b.psi * kron(id_m, f) - kron(id_m, f) * a.psi).nonzero_count());
    return rep;
}

/// Tensor product (X (x) X', Psi12 Psi'13), re-verified.
template <class K>
PhiModule<K> tensor_phi_modules(const PhiModule<K>& a, const PhiModule<K>& b) {
    if (!(a.base.phi == b.base.phi)) throw UsageError("tensor of modules over different bases");
    if (!a.verified || !b.verified) throw UsageError("tensor_phi_modules needs verified modules");
    const FieldSpec f = a.psi.field();
    Legs mxx{a.base.M, a.X, b.X};
    auto p12 = embed_legs(a.psi, {0, 1}, mxx);
    auto p13 = embed_legs(b.psi, {0, 2}, mxx);
    const Space xx(a.X.label + "x" + b.X.label, a.X.dim * b.X.dim);
    auto psi = (p12 * p13).reshaped({a.base.M, xx}, {a.base.M, xx});
    return make_phi_module(a.base, psi);
}

/// H-module X -> (M, Phi_M)-module via Psi(m (x) x) = m_(0) (x) m_(1) x.
template <class K>
PhiModule<K> module_from_hopf(const HopfModule<K>& hm, const Space& x, const LegMap<K>& rho_x) {
    detail::require_certified(hm);
    const FieldSpec f = hm.hopf.field();
    const auto& h = hm.hopf;
    const auto id_x = LegMap<K>::identity(f, {x});
    const auto id_h = LegMap<K>::identity(f, {h.H});
    CheckReport act("action");
    act.record("action-associativity",
               (rho_x * kron(h.mu, id_x) - rho_x * kron(id_h, rho_x)).nonzero_count());
    act.record("action-unit", (rho_x * kron(h.unit, id_x) - id_x).nonzero_count());
    if (!act.pass) throw MathError("ActionLawViolation", "rho_X is not a module action");

    const auto id_m = LegMap<K>::identity(f, {hm.M});
    auto psi = kron(id_m, rho_x) * kron(hm.coaction, id_x);
    return make_phi_module(phi_from_hopf_module(hm), psi);
}

}  // namespace pentagon
