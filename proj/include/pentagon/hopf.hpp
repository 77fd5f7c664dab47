#pragma once

#include <array>
#include <string>
#include <vector>

#include "pentagon/legmap.hpp"
#include "pentagon/linalg.hpp"
#include "pentagon/pentagon.hpp"
#include "pentagon/report.hpp"

namespace pentagon {

/// Finite-dimensional Hopf algebra as raw structure tensors.
/// mu : H (x) H -> H, unit : k -> H, delta : H -> H (x) H,
/// counit : H -> k, antipode : H -> H.
template <class K>
struct HopfAlgebra {
    Space H;
    LegMap<K> mu, unit, delta, counit, antipode;

    const FieldSpec& field() const { return mu.field(); }
};

/// Left module / right comodule over a Hopf algebra.
template <class K>
struct HopfModule {
    HopfAlgebra<K> hopf;
    Space M;
    LegMap<K> action;    // H (x) M -> M
    LegMap<K> coaction;  // M -> M (x) H
};

template <class K>
CheckReport check_hopf_axioms(const HopfAlgebra<K>& h) {
    const FieldSpec f = h.field();
    const auto id = LegMap<K>::identity(f, {h.H});
    const auto scalar_id = LegMap<K>::identity(f, Legs{});

    CheckReport rep("hopf-axioms");
    rep.record("associativity",
               (h.mu * kron(h.mu, id) - h.mu * kron(id, h.mu)).nonzero_count());
    rep.record("unit-left", (h.mu * kron(h.unit, id) - id).nonzero_count());
    rep.record("unit-right", (h.mu * kron(id, h.unit) - id).nonzero_count());
    rep.record("coassociativity",
               (kron(h.delta, id) * h.delta - kron(id, h.delta) * h.delta).nonzero_count());
    rep.record("counit-left", (kron(h.counit, id) * h.delta - id).nonzero_count());
    rep.record("counit-right", (kron(id, h.counit) * h.delta - id).nonzero_count());
    rep.record("delta-multiplicative",
               (h.delta * h.mu -
                kron(h.mu, h.mu) * permute_output_legs(kron(h.delta, h.delta), {0, 2, 1, 3}))
                   .nonzero_count());
    rep.record("delta-unit", (h.delta * h.unit - kron(h.unit, h.unit)).nonzero_count());
    rep.record("counit-multiplicative",
               (h.counit * h.mu - kron(h.counit, h.counit)).nonzero_count());
    rep.record("counit-unit", (h.counit * h.unit - scalar_id).nonzero_count());
    const auto unit_counit = h.unit * h.counit;
    rep.record("antipode-left",
               (h.mu * kron(h.antipode, id) * h.delta - unit_counit).nonzero_count());
    rep.record("antipode-right",
               (h.mu * kron(id, h.antipode) * h.delta - unit_counit).nonzero_count());
    return rep;
}

template <class K>
CheckReport check_hopf_module(const HopfModule<K>& hm) {
    const FieldSpec f = hm.hopf.field();
    const auto& h = hm.hopf;
    const auto id_h = LegMap<K>::identity(f, {h.H});
    const auto id_m = LegMap<K>::identity(f, {hm.M});

    CheckReport rep("hopf-module");
    rep.record("module-associativity",
               (hm.action * kron(h.mu, id_m) - hm.action * kron(id_h, hm.action)).nonzero_count());
    rep.record("module-unit", (hm.action * kron(h.unit, id_m) - id_m).nonzero_count());
    rep.record("comodule-coassociativity",
               (kron(hm.coaction, id_h) * hm.coaction - kron(id_m, h.delta) * hm.coaction)
                   .nonzero_count());
    rep.record("comodule-counit", (kron(id_m, h.counit) * hm.coaction - id_m).nonzero_count());
    // Delta_M(h m) = Delta_H(h) Delta_M(m), the H (x) H action acting
    // componentwise with mu on the H leg
    auto shuffled = permute_output_legs(kron(h.delta, hm.coaction), {0, 2, 1, 3});
    rep.record("h-linearity",
               (hm.coaction * hm.action - kron(hm.action, h.mu) * shuffled).nonzero_count());
    return rep;
}

namespace detail {

template <class K>
void require_certified(const HopfModule<K>& hm) {
    check_hopf_axioms(hm.hopf).require("Hopf axioms");
    check_hopf_module(hm).require("Hopf module axioms");
}

}  // namespace detail

/// Phi_M = (I (x) mu)(Delta (x) I), the pentagon solution of a Hopf module.
template <class K>
PentagonSolution<K> phi_from_hopf_module(const HopfModule<K>& hm) {
    detail::require_certified(hm);
    const FieldSpec f = hm.hopf.field();
    const auto id_m = LegMap<K>::identity(f, {hm.M});
    auto phi = kron(id_m, hm.action) * kron(hm.coaction, id_m);
    return verify_pentagon(phi);
}

/// Phi_M^-1(m (x) n) = m_(0) (x) S(m_(1)) n, verified as a two-sided inverse.
template <class K>
LegMap<K> phi_inverse_via_antipode(const HopfModule<K>& hm) {
    detail::require_certified(hm);
    const FieldSpec f = hm.hopf.field();
    const auto id_m = LegMap<K>::identity(f, {hm.M});
    auto antipode_action = hm.action * kron(hm.hopf.antipode, id_m);  // H (x) M -> M
    auto psi = kron(id_m, antipode_action) * kron(hm.coaction, id_m);
    auto phi = kron(id_m, hm.action) * kron(hm.coaction, id_m);
    if (!(psi * phi).is_identity() || !(phi * psi).is_identity())
        throw MathError("Internal", "antipode inverse formula failed to invert Phi_M");
    return psi;
}

/// Coinvariants M_H = { m : Delta_M(m) = m (x) 1 }, RREF-canonical.
template <class K>
std::vector<Vec<K>> coinvariants(const HopfModule<K>& hm) {
    const FieldSpec f = hm.hopf.field();
    const auto id_m = LegMap<K>::identity(f, {hm.M});
    return kernel_basis(hm.coaction - kron(id_m, hm.hopf.unit));
}

template <class K>
struct FundamentalIso {
    Space MH;
    LegMap<K> inclusion;  // M_H -> M
    LegMap<K> theta;      // H (x) M_H -> M, h (x) m -> h m
    LegMap<K> theta_inv;  // m -> m_(2) (x) S^-1(m_(1)) m_(0), in M_H coordinates
    CheckReport cert;
};

/// Fundamental theorem of Hopf modules: theta is an isomorphism of Hopf
/// modules, with the inverse built from the S^-1 formula and verified.
template <class K>
FundamentalIso<K> fundamental_iso(const HopfModule<K>& hm) {
    detail::require_certified(hm);
    const FieldSpec f = hm.hopf.field();
    const auto& h = hm.hopf;
    auto cb = coinvariants(hm);
    const Index mh_dim = static_cast<Index>(cb.size());
    if (mh_dim == 0 || h.H.dim * mh_dim != hm.M.dim)
        throw MathError("DimensionMismatch",
                        "dim H * dim M_H = " + std::to_string(h.H.dim * mh_dim) +
                            " differs from dim M = " + std::to_string(hm.M.dim));

    const Space mh("MH", mh_dim);
    LegMap<K> inclusion(f, {hm.M}, {mh});
    for (Index j = 0; j < mh_dim; ++j)
        for (Index i = 0; i < hm.M.dim; ++i)
            inclusion.at(i, j) = cb[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];

    const auto id_h = LegMap<K>::identity(f, {h.H});
    const auto id_m = LegMap<K>::identity(f, {hm.M});
    auto theta = hm.action * kron(id_h, inclusion);

    LegMap<K> s_inv(f, {h.H}, {h.H});
    try {
        s_inv = inverse(h.antipode);
    } catch (const MathError&) {
        throw MathError("AntipodeNotInvertible", "antipode is singular");
    }

    // m -> m_(0) (x) m_(1) (x) m_(2) -> m_(2) (x) S^-1(m_(1)) m_(0)
    auto expand = kron(hm.coaction, id_h) * hm.coaction;             // M -> M H H
    auto rev = permute_legs<K>(f, {2, 1, 0}, {hm.M, h.H, h.H});      // -> H H M
    auto s_mid = embed_legs(s_inv, {1}, rev.codomain());             // S^-1 on middle leg
    auto act = kron(id_h, hm.action);                                // H H M -> H M
    auto tau = act * s_mid * rev * expand;                           // M -> H M

    // project the M component onto coinvariant coordinates via the RREF pivots
    LegMap<K> coord(f, {mh}, {hm.M});
    for (Index j = 0; j < mh_dim; ++j) {
        Index pivot = -1;
        for (Index i = 0; i < hm.M.dim; ++i)
            if (!k_is_zero(cb[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])) {
                pivot = i;
                break;
            }
        coord.at(j, pivot) = k_one<K>(f);
    }
    auto theta_inv = kron(id_h, coord) * tau;

    CheckReport rep("fundamental-iso");
    rep.record("left-inverse", (theta * theta_inv - id_m).nonzero_count());
    rep.record("right-inverse",
               (theta_inv * theta - LegMap<K>::identity(f, {h.H, mh})).nonzero_count());
    const auto id_mh = LegMap<K>::identity(f, {mh});
    rep.record("h-linear",
               (theta * kron(h.mu, id_mh) - hm.action * kron(id_h, theta)).nonzero_count());
    auto t23 = permute_legs<K>(f, {0, 2, 1}, {h.H, h.H, mh});
    rep.record("colinear",
               (hm.coaction * theta - kron(theta, id_h) * t23 * kron(h.delta, id_mh))
                   .nonzero_count());
    return {mh, inclusion, theta, theta_inv, rep};
}

// --- builtin corpus ---------------------------------------------------------------

using CayleyTable = std::vector<std::vector<Index>>;

inline CayleyTable cyclic_table(Index n) {
    CayleyTable t(static_cast<std::size_t>(n), std::vector<Index>(static_cast<std::size_t>(n)));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return t;
}

/// S3 with elements the permutations of {0,1,2} in lexicographic one-line
/// order; table[g][h] = g after h.
inline CayleyTable s3_table() {
    const std::vector<std::array<Index, 3>> perms{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [&](const std::array<Index, 3>& p) -> Index {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<Index>(i);
        return -1;
    };
    CayleyTable t(6, std::vector<Index>(6));
    for (std::size_t g = 0; g < 6; ++g)
        for (std::size_t h = 0; h < 6; ++h) {
            std::array<Index, 3> c{};
            for (Index x = 0; x < 3; ++x)
                c[static_cast<std::size_t>(x)] =
                    perms[g][static_cast<std::size_t>(perms[h][static_cast<std::size_t>(x)])];
            t[g][h] = find(c);
        }
    return t;
}

inline CayleyTable klein_table() {
    return {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
}

struct GroupData {
    Index n = 0;
    Index identity = -1;
    std::vector<Index> inverse;
};

inline GroupData validate_group(const CayleyTable& t) {
    const Index n = static_cast<Index>(t.size());
    if (n == 0) throw UsageError("NotAGroup: empty Cayley table");
    for (const auto& row : t) {
        if (static_cast<Index>(row.size()) != n) throw UsageError("NotAGroup: table is not square");
        for (Index v : row)
            if (v < 0 || v >= n) throw UsageError("NotAGroup: entry out of range");
    }
    GroupData g;
    g.n = n;
    for (Index e = 0; e < n; ++e) {
        bool ok = true;
        for (Index x = 0; x < n && ok; ++x)
            ok = t[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)] == x &&
                 t[static_cast<std::size_t>(x)][static_cast<std::size_t>(e)] == x;
        if (ok) { g.identity = e; break; }
    }
    if (g.identity < 0) throw UsageError("NotAGroup: no identity element");
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index c = 0; c < n; ++c) {
                auto ab = t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                auto bc = t[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
                if (t[static_cast<std::size_t>(ab)][static_cast<std::size_t>(c)] !=
                    t[static_cast<std::size_t>(a)][static_cast<std::size_t>(bc)])
                    throw UsageError("NotAGroup: multiplication is not associative");
            }
    g.inverse.assign(static_cast<std::size_t>(n), -1);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b)
            if (t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == g.identity &&
                t[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] == g.identity)
                g.inverse[static_cast<std::size_t>(a)] = b;
        if (g.inverse[static_cast<std::size_t>(a)] < 0)
            throw UsageError("NotAGroup: missing inverse");
    }
    return g;
}

/// Group algebra k[G]: basis e_g, grouplike comultiplication.
template <class K>
HopfAlgebra<K> group_algebra(FieldSpec f, const CayleyTable& t, const std::string& label = "H") {
    const GroupData g = validate_group(t);
    const Index n = g.n;
    const Space h(label, n);
    HopfAlgebra<K> a{h,
                     LegMap<K>(f, {h}, {h, h}),
                     LegMap<K>(f, {h}, {}),
                     LegMap<K>(f, {h, h}, {h}),
                     LegMap<K>(f, {}, {h}),
                     LegMap<K>(f, {h}, {h})};
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            a.mu.at(t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)], x * n + y) = k_one<K>(f);
    a.unit.at(g.identity, 0) = k_one<K>(f);
    for (Index x = 0; x < n; ++x) {
        a.delta.at(x * n + x, x) = k_one<K>(f);
        a.counit.at(0, x) = k_one<K>(f);
        a.antipode.at(g.inverse[static_cast<std::size_t>(x)], x) = k_one<K>(f);
    }
    return a;
}

/// Dual k[G]^*: basis of point idempotents, pointwise product,
/// convolution comultiplication.
template <class K>
HopfAlgebra<K> dual_group_algebra(FieldSpec f, const CayleyTable& t, const std::string& label = "H") {
    const GroupData g = validate_group(t);
    const Index n = g.n;
    const Space h(label, n);
    HopfAlgebra<K> a{h,
                     LegMap<K>(f, {h}, {h, h}),
                     LegMap<K>(f, {h}, {}),
                     LegMap<K>(f, {h, h}, {h}),
                     LegMap<K>(f, {}, {h}),
                     LegMap<K>(f, {h}, {h})};
    for (Index x = 0; x < n; ++x) {
        a.mu.at(x, x * n + x) = k_one<K>(f);
        a.unit.at(x, 0) = k_one<K>(f);
        a.antipode.at(g.inverse[static_cast<std::size_t>(x)], x) = k_one<K>(f);
    }
    a.counit.at(0, g.identity) = k_one<K>(f);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            a.delta.at(x * n + y, t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) = k_one<K>(f);
    return a;
}

/// Sweedler's 4-dimensional Hopf algebra on the basis (1, g, x, gx).
/// Degenerates in characteristic 2.
template <class K>
HopfAlgebra<K> sweedler4(FieldSpec f, const std::string& label = "H") {
    if (f.kind == FieldSpec::Kind::prime && f.p == 2)
        throw UsageError("CharTwoUnsupported: Sweedler's algebra needs characteristic != 2");
    const Space h(label, 4);
    HopfAlgebra<K> a{h,
                     LegMap<K>(f, {h}, {h, h}),
                     LegMap<K>(f, {h}, {}),
                     LegMap<K>(f, {h, h}, {h}),
                     LegMap<K>(f, {}, {h}),
                     LegMap<K>(f, {h}, {h})};
    const K one = k_one<K>(f), minus = k_int<K>(-1, f);
    // rows: product targets; 0:1, 1:g, 2:x, 3:gx
    const Index table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, -1, -1}, {3, 2, -1, -1}};
    const int sign[4][4] = {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, -1, 0, 0}, {1, -1, 0, 0}};
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j)
            if (sign[i][j] != 0)
                a.mu.at(table[i][j], i * 4 + j) = sign[i][j] > 0 ? one : minus;
    a.unit.at(0, 0) = one;
    a.delta.at(0 * 4 + 0, 0) = one;                                // 1 -> 1 (x) 1
    a.delta.at(1 * 4 + 1, 1) = one;                                // g -> g (x) g
    a.delta.at(2 * 4 + 0, 2) = one; a.delta.at(1 * 4 + 2, 2) = one; // x -> x (x) 1 + g (x) x
    a.delta.at(3 * 4 + 1, 3) = one; a.delta.at(0 * 4 + 3, 3) = one; // gx -> gx (x) g + 1 (x) gx
    a.counit.at(0, 0) = one;
    a.counit.at(0, 1) = one;
    a.antipode.at(0, 0) = one;
    a.antipode.at(1, 1) = one;
    a.antipode.at(3, 2) = minus;  // S(x) = -gx
    a.antipode.at(2, 3) = one;    // S(gx) = x
    return a;
}

/// H as a module and comodule over itself.
template <class K>
HopfModule<K> trivial_module(const HopfAlgebra<K>& h, const std::string& label = "M") {
    const Space m(label, h.H.dim);
    return {h, m, h.mu.reshaped({m}, {h.H, m}), h.delta.reshaped({m, h.H}, {m})};
}

/// H (x) k^d with action and coaction through the left factor.
template <class K>
HopfModule<K> multiplicity_module(const HopfAlgebra<K>& h, Index d, const std::string& label = "M") {
    if (d < 1) throw UsageError("multiplicity must be >= 1");
    const FieldSpec f = h.field();
    const Space w("W", d);
    const Space m(label, h.H.dim * d);
    const auto id_w = LegMap<K>::identity(f, {w});
    auto action = kron(h.mu, id_w).reshaped({m}, {h.H, m});
    auto t23 = permute_legs<K>(f, {0, 2, 1}, {h.H, h.H, w});
    auto coaction = (t23 * kron(h.delta, id_w)).reshaped({m, h.H}, {m});
    return {h, m, action, coaction};
}

}  // namespace pentagon
