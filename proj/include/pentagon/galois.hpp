#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pentagon/hopf.hpp"
#include "pentagon/legmap.hpp"
#include "pentagon/linalg.hpp"
#include "pentagon/pentagon.hpp"

namespace pentagon {

/// Right H-module coalgebra L.
template <class K>
struct ModuleCoalgebra {
    HopfAlgebra<K> hopf;
    Space L;
    LegMap<K> delta_L;   // L -> L (x) L
    LegMap<K> counit_L;  // L -> k
    LegMap<K> mu_L;      // L (x) H -> L
};

/// Comodule V over L paired with a Hopf module M through pi : L (x) M -> V,
/// optionally with the inverse-providing pairing nu : L (x) V -> M.
template <class K>
struct PairedComoduleData {
    ModuleCoalgebra<K> mc;
    HopfModule<K> hm;
    Space V;
    LegMap<K> delta_V;  // V -> V (x) L
    LegMap<K> pi;       // L (x) M -> V
    std::optional<LegMap<K>> nu;
};

template <class K>
CheckReport check_module_coalgebra(const ModuleCoalgebra<K>& mc) {
    const FieldSpec f = mc.hopf.field();
    const auto& h = mc.hopf;
    const auto id_l = LegMap<K>::identity(f, {mc.L});
    const auto id_h = LegMap<K>::identity(f, {h.H});

    CheckReport rep("module-coalgebra");
    rep.record("coassociativity",
               (kron(mc.delta_L, id_l) * mc.delta_L - kron(id_l, mc.delta_L) * mc.delta_L)
                   .nonzero_count());
    rep.record("counit",
               (kron(mc.counit_L, id_l) * mc.delta_L - id_l).nonzero_count() +
                   (kron(id_l, mc.counit_L) * mc.delta_L - id_l).nonzero_count());
    rep.record("action",
               (mc.mu_L * kron(mc.mu_L, id_h) - mc.mu_L * kron(id_l, h.mu)).nonzero_count());
    // Delta_L is H-linear for the componentwise action of H (x) H
    auto shuffled = permute_output_legs(kron(mc.delta_L, h.delta), {0, 2, 1, 3});
    rep.record("compatibility",
               (mc.delta_L * mc.mu_L - kron(mc.mu_L, mc.mu_L) * shuffled).nonzero_count());
    return rep;
}

template <class K>
CheckReport check_paired_data(const PairedComoduleData<K>& pd) {
    const FieldSpec f = pd.mc.hopf.field();
    const auto& mc = pd.mc;
    const auto& hm = pd.hm;
    const auto id_l = LegMap<K>::identity(f, {mc.L});
    const auto id_m = LegMap<K>::identity(f, {hm.M});
    const auto id_v = LegMap<K>::identity(f, {pd.V});

    CheckReport rep("paired-data");
    rep.record("comodule",
               (kron(pd.delta_V, id_l) * pd.delta_V - kron(id_v, mc.delta_L) * pd.delta_V)
                   .nonzero_count());
    rep.record("pairing-balance",
               (pd.pi * kron(mc.mu_L, id_m) - pd.pi * kron(id_l, hm.action)).nonzero_count());
    auto shuffled = permute_output_legs(kron(mc.delta_L, hm.coaction), {0, 2, 1, 3});
    rep.record("pairing-colinearity",
               (pd.delta_V * pd.pi - kron(pd.pi, mc.mu_L) * shuffled).nonzero_count());
    if (pd.nu) {
        rep.record("nu-left",
                   (pd.nu.value() * kron(id_l, pd.pi) * kron(mc.delta_L, id_m) -
                    kron(mc.counit_L, id_m)).nonzero_count());
        rep.record("nu-right",
                   (pd.pi * kron(id_l, pd.nu.value()) * kron(mc.delta_L, id_v) -
                    kron(mc.counit_L, id_v)).nonzero_count());
    }
    return rep;
}

/// F_V = (I (x) pi)(Delta_V (x) I) : V (x) M -> V (x) V, paired with the
/// Hopf-module pentagon solution. With nu present the formulaic inverse is
/// verified; without it the matrix inverse must exist.
template <class K>
MPESolution<K> build_FV(const PairedComoduleData<K>& pd) {
    check_module_coalgebra(pd.mc).require("module-coalgebra axioms");
    detail::require_certified(pd.hm);
    check_paired_data(pd).require("pairing axioms");
    const FieldSpec f = pd.mc.hopf.field();
    const auto id_m = LegMap<K>::identity(f, {pd.hm.M});
    const auto id_v = LegMap<K>::identity(f, {pd.V});

    auto fv = kron(id_v, pd.pi) * kron(pd.delta_V, id_m);
    auto phi = phi_from_hopf_module(pd.hm);
    if (pd.nu) {
        auto finv = kron(id_v, pd.nu.value()) * kron(pd.delta_V, id_v);
        if (!(finv * fv).is_identity() || !(fv * finv).is_identity())
            throw MathError("SingularFV", "nu does not invert F_V");
    } else if (!is_invertible(fv)) {
        throw MathError("SingularFV", "F_V is singular and no nu was supplied");
    }
    return verify_mpe(fv, phi.phi);
}

/// F_L = (I (x) mu_L)(Delta_L (x) I) : L (x) H -> L (x) L.
template <class K>
LegMap<K> galois_map(const ModuleCoalgebra<K>& mc) {
    const FieldSpec f = mc.hopf.field();
    const auto id_l = LegMap<K>::identity(f, {mc.L});
    const auto id_h = LegMap<K>::identity(f, {mc.hopf.H});
    return kron(id_l, mc.mu_L) * kron(mc.delta_L, id_h);
}

/// Galois condition: F_L is an isomorphism (exact rank test).
template <class K>
CheckReport galois_check(const ModuleCoalgebra<K>& mc) {
    check_module_coalgebra(mc).require("module-coalgebra axioms");
    auto fl = galois_map(mc);
    const Index r = rank(fl);
    CheckReport rep("galois");
    rep.record("invertible", (fl.rows() - r) + (fl.cols() - r));
    return rep;
}

/// The Galois MPE solution (F_L, Phi_H) for a Galois module coalgebra.
template <class K>
MPESolution<K> galois_mpe(const ModuleCoalgebra<K>& mc) {
    if (!galois_check(mc).pass)
        throw MathError("NotGalois", "the Galois map L (x) H -> L (x) L is not invertible");
    auto phi_h = phi_from_hopf_module(trivial_module(mc.hopf));
    return verify_mpe(galois_map(mc), phi_h.phi);
}

// --- group-set coalgebras: the builtin section-4 corpus -----------------------------

using ActionTable = std::vector<std::vector<Index>>;  // act[x][g] in X

/// k[X] for a right G-set X: grouplike comultiplication, action by
/// permutation of points.
template <class K>
ModuleCoalgebra<K> group_set_coalgebra(FieldSpec f, const CayleyTable& group,
                                       const ActionTable& act, const std::string& label = "L") {
    const GroupData g = validate_group(group);
    const Index nx = static_cast<Index>(act.size());
    if (nx == 0) throw UsageError("empty G-set");
    for (const auto& row : act) {
        if (static_cast<Index>(row.size()) != g.n) throw UsageError("action table shape mismatch");
        for (Index v : row)
            if (v < 0 || v >= nx) throw UsageError("action table entry out of range");
    }
    for (Index x = 0; x < nx; ++x) {
        if (act[static_cast<std::size_t>(x)][static_cast<std::size_t>(g.identity)] != x)
            throw UsageError("identity does not act trivially");
        for (Index a = 0; a < g.n; ++a)
            for (Index b = 0; b < g.n; ++b) {
                const Index xa = act[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
                const Index lhs = act[static_cast<std::size_t>(xa)][static_cast<std::size_t>(b)];
                const Index ab = group[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (lhs != act[static_cast<std::size_t>(x)][static_cast<std::size_t>(ab)])
                    throw UsageError("not a right group action");
            }
    }

    auto hopf = group_algebra<K>(f, group);
    const Space l(label, nx);
    ModuleCoalgebra<K> mc{hopf, l, LegMap<K>(f, {l, l}, {l}), LegMap<K>(f, {}, {l}),
                          LegMap<K>(f, {l}, {l, hopf.H})};
    for (Index x = 0; x < nx; ++x) {
        mc.delta_L.at(x * nx + x, x) = k_one<K>(f);
        mc.counit_L.at(0, x) = k_one<K>(f);
        for (Index a = 0; a < g.n; ++a)
            mc.mu_L.at(act[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)], x * g.n + a) =
                k_one<K>(f);
    }
    return mc;
}

/// The torsor: G acting on itself by right multiplication.
template <class K>
ModuleCoalgebra<K> torsor_coalgebra(FieldSpec f, const CayleyTable& group,
                                    const std::string& label = "L") {
    return group_set_coalgebra<K>(f, group, group, label);
}

inline bool action_is_free_transitive(const CayleyTable& group, const ActionTable& act) {
    const Index ng = static_cast<Index>(group.size());
    const Index nx = static_cast<Index>(act.size());
    if (nx != ng) return false;
    const GroupData g = validate_group(group);
    for (Index x = 0; x < nx; ++x)
        for (Index a = 0; a < ng; ++a)
            if (a != g.identity && act[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] == x)
                return false;
    std::vector<bool> orbit(static_cast<std::size_t>(nx), false);
    for (Index a = 0; a < ng; ++a) orbit[static_cast<std::size_t>(act[0][static_cast<std::size_t>(a)])] = true;
    for (bool b : orbit)
        if (!b) return false;
    return true;
}

/// Every right action of the group on {0..nx-1}: all antihomomorphisms
/// G -> Sym(X), enumerated by brute force over generator images.
inline std::vector<ActionTable> all_group_actions(const CayleyTable& group, Index nx) {
    const GroupData g = validate_group(group);
    const Index n = g.n;
    // all permutations of X
    std::vector<std::vector<Index>> perms;
    std::vector<Index> p(static_cast<std::size_t>(nx));
    for (Index i = 0; i < nx; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::vector<ActionTable> out;
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    const std::size_t np = perms.size();
    // assignment f[g] with f[identity] = id, iterate over the rest
    for (;;) {
        std::vector<std::size_t> f(static_cast<std::size_t>(n));
        f[static_cast<std::size_t>(g.identity)] = 0;  // perms[0] is the identity
        bool carry_done = false;
        for (Index a = 0; a < n; ++a)
            if (a != g.identity) f[static_cast<std::size_t>(a)] = choice[static_cast<std::size_t>(a)];
        bool ok = true;
        for (Index a = 0; a < n && ok; ++a)
            for (Index b = 0; b < n && ok; ++b) {
                // right action: f(ab) = f(b) o f(a)
                const auto& fa = perms[f[static_cast<std::size_t>(a)]];
                const auto& fb = perms[f[static_cast<std::size_t>(b)]];
                const auto& fab = perms[f[static_cast<std::size_t>(
                    group[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])]];
                for (Index x = 0; x < nx; ++x)
                    if (fab[static_cast<std::size_t>(x)] !=
                        fb[static_cast<std::size_t>(fa[static_cast<std::size_t>(x)])]) {
                        ok = false;
                        break;
                    }
            }
        if (ok) {
            ActionTable act(static_cast<std::size_t>(nx), std::vector<Index>(static_cast<std::size_t>(n)));
            for (Index x = 0; x < nx; ++x)
                for (Index a = 0; a < n; ++a)
                    act[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] =
                        perms[f[static_cast<std::size_t>(a)]][static_cast<std::size_t>(x)];
            out.push_back(std::move(act));
        }
        // advance the mixed-radix counter over non-identity slots
        Index pos = 0;
        for (; pos < n; ++pos) {
            if (pos == g.identity) continue;
            if (++choice[static_cast<std::size_t>(pos)] < np) break;
            choice[static_cast<std::size_t>(pos)] = 0;
        }
        if (pos == n) { carry_done = true; }
        if (carry_done) break;
    }
    return out;
}

}  // namespace pentagon
