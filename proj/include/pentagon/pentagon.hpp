#pragma once

#include <string>
#include <vector>

#include "pentagon/legmap.hpp"
#include "pentagon/linalg.hpp"
#include "pentagon/report.hpp"

namespace pentagon {

/// Invertible solution of Phi12 Phi13 Phi23 = Phi23 Phi12 on M (x) M.
template <class K>
struct PentagonSolution {
    Space M;
    LegMap<K> phi;
    bool verified = false;
};

/// Pair (F, Phi) with F : V (x) M -> V (x) V satisfying F12 F13 Phi23 = F23 F12.
template <class K>
struct MPESolution {
    Space V;
    Space M;
    LegMap<K> F;
    LegMap<K> phi;
    bool verified = false;
};

/// Linear map End(V) -> End(V) (x) End(V), stored on the dim(V)^2 space.
/// Coordinates are matrix-unit coordinates, row index major.
template <class K>
struct CoproductMap {
    Space V;
    LegMap<K> delta;  // domain [End(V)], codomain [End(V), End(V)]
};

namespace detail {

inline Space end_space(const Space& v) { return Space("End(" + v.label + ")", v.dim * v.dim); }

template <class K>
void require_two_legs(const LegMap<K>& m, const char* what) {
    if (m.domain().size() != 2 || m.codomain().size() != 2)
        throw UsageError(std::string(what) + " must have two legs on each side");
}

/// End(V (x) V) matrix -> coordinate vector in the E_ij (x) E_kl basis.
template <class K>
Vec<K> op2_coords(const LegMap<K>& x, Index n) {
    Vec<K> v(static_cast<std::size_t>(n) * n * n * n, k_zero<K>(x.field()));
    for (Index r1 = 0; r1 < n; ++r1)
        for (Index r2 = 0; r2 < n; ++r2)
            for (Index c1 = 0; c1 < n; ++c1)
                for (Index c2 = 0; c2 < n; ++c2)
                    v[static_cast<std::size_t>(((r1 * n + c1) * n + r2) * n + c2)] =
                        x.at(r1 * n + r2, c1 * n + c2);
    return v;
}

/// Inverse of op2_coords.
template <class K>
LegMap<K> coords_op2(const Vec<K>& v, const FieldSpec& f, const Space& vv) {
    const Index n = vv.dim;
    LegMap<K> x(f, {vv, vv}, {vv, vv});
    for (Index r1 = 0; r1 < n; ++r1)
        for (Index r2 = 0; r2 < n; ++r2)
            for (Index c1 = 0; c1 < n; ++c1)
                for (Index c2 = 0; c2 < n; ++c2)
                    x.at(r1 * n + r2, c1 * n + c2) =
                        v[static_cast<std::size_t>(((r1 * n + c1) * n + r2) * n + c2)];
    return x;
}

}  // namespace detail

/// Exact pentagon check. Throws on malformed or singular input; a nonzero
/// residual is reported, not thrown.
template <class K>
CheckReport check_pentagon(const LegMap<K>& phi) {
    detail::require_two_legs(phi, "pentagon operator");
    const Index d = phi.domain()[0].dim;
    if (phi.domain()[1].dim != d || phi.rows() != phi.cols() || phi.rows() != d * d)
        throw UsageError("pentagon operator must act on M (x) M");
    if (!is_invertible(phi)) throw MathError("Singular", "pentagon operator is not invertible");

    const Space m = phi.domain()[0];
    Legs m3{m, m, m};
    std::vector<LegStep<K>> lhs{{&phi, {1, 2}}, {&phi, {0, 2}}, {&phi, {0, 1}}};
    std::vector<LegStep<K>> rhs{{&phi, {0, 1}}, {&phi, {1, 2}}};
    CheckReport rep("pentagon");
    rep.record("pentagon", chain_residual_nonzeros(m3, lhs, rhs, phi.field()));
    return rep;
}

/// Exact modified pentagon check for F : V (x) M -> V (x) V, Phi on M (x) M.
template <class K>
CheckReport check_mpe(const LegMap<K>& f, const LegMap<K>& phi) {
    detail::require_two_legs(f, "F");
    detail::require_two_legs(phi, "Phi");
    const Index nv = f.domain()[0].dim, nm = f.domain()[1].dim;
    if (f.codomain()[0].dim != nv || f.codomain()[1].dim != nv)
        throw UsageError("F must map V (x) M to V (x) V");
    if (phi.domain()[0].dim != nm || phi.domain()[1].dim != nm || phi.rows() != phi.cols())
        throw UsageError("Phi must act on M (x) M");
    if (!is_invertible(f)) throw MathError("Singular", "F is not invertible");
    if (!is_invertible(phi)) throw MathError("Singular", "Phi is not invertible");

    const Space v = f.domain()[0], m = f.domain()[1];
    Legs vmm{v, m, m};
    std::vector<LegStep<K>> lhs{{&phi, {1, 2}}, {&f, {0, 2}}, {&f, {0, 1}}};
    std::vector<LegStep<K>> rhs{{&f, {0, 1}}, {&f, {1, 2}}};
    CheckReport rep("modified-pentagon");
    rep.record("modified-pentagon", chain_residual_nonzeros(vmm, lhs, rhs, f.field()));
    return rep;
}

template <class K>
PentagonSolution<K> verify_pentagon(const LegMap<K>& phi) {
    return {phi.domain()[0], phi, check_pentagon(phi).pass};
}

template <class K>
MPESolution<K> verify_mpe(const LegMap<K>& f, const LegMap<K>& phi) {
    return {f.domain()[0], f.domain()[1], f, phi, check_mpe(f, phi).pass};
}

/// Recover Phi from the congruence F12 F13 = F23 F12 mod (1 (x) Aut(M^2)):
/// computes C = F13^-1 F12^-1 F23 F12, reads the candidate from the
/// (0,0) V-block and verifies C = I_V (x) Phi entrywise.
template <class K>
LegMap<K> extract_phi(const LegMap<K>& f) {
    detail::require_two_legs(f, "F");
    const Space v = f.domain()[0], m = f.domain()[1];
    if (f.codomain()[0].dim != v.dim || f.codomain()[1].dim != v.dim)
        throw UsageError("F must map V (x) M to V (x) V");
    if (!is_invertible(f)) throw MathError("Singular", "F is not invertible");
    const LegMap<K> finv = inverse(f);

    Legs vmm{v, m, m};
    auto f12 = embed_legs(f, {0, 1}, vmm);                       // V M M -> V V M
    auto f23 = embed_legs(f, {1, 2}, f12.codomain());            // V V M -> V V V
    auto f12_inv = embed_legs(finv, {0, 1}, f23.codomain());     // V V V -> V M V
    auto f13_inv = embed_legs(finv, {0, 2}, f12_inv.codomain()); // V M V -> V M M
    auto c = f13_inv * f12_inv * f23 * f12;

    LegMap<K> phi = slice(c, 0, 0, 0, 0).reshaped({m, m}, {m, m});
    auto expected = kron(LegMap<K>::identity(f.field(), {v}), phi);
    if (!(c == expected))
        throw MathError("NotCongruent",
                        "F12 F13 F23^-1 F12^-1 does not lie in 1 (x) End(M (x) M)");
    return phi;
}

/// Delta_F(x) = F (x (x) 1) F^-1 as a map End(V) -> End(V) (x) End(V),
/// built by conjugating the matrix-unit basis. No congruence requirement.
template <class K>
CoproductMap<K> conjugation_coproduct(const LegMap<K>& f) {
    detail::require_two_legs(f, "F");
    const Space v = f.domain()[0], m = f.domain()[1];
    if (!is_invertible(f)) throw MathError("Singular", "F is not invertible");
    const LegMap<K> finv = inverse(f);
    const Index n = v.dim;
    const Space ev = detail::end_space(v);
    LegMap<K> delta(f.field(), {ev, ev}, {ev});
    const LegMap<K> id_m = LegMap<K>::identity(f.field(), {m});
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            LegMap<K> e(f.field(), {v}, {v});
            e.at(i, j) = k_one<K>(f.field());
            auto d = f * kron(e, id_m) * finv;  // End(V (x) V)
            auto coords = detail::op2_coords(d, n);
            for (std::size_t r = 0; r < coords.size(); ++r)
                delta.at(static_cast<Index>(r), i * n + j) = coords[r];
        }
    return {v, delta};
}

/// Certify that delta is a coassociative unital algebra homomorphism,
/// checking everything on the matrix-unit basis of End(V).
template <class K>
CheckReport check_coproduct(const CoproductMap<K>& cm) {
    const Index n = cm.V.dim;
    const Index n2 = n * n;
    const FieldSpec f = cm.delta.field();
    CheckReport rep("coproduct");

    auto column_op = [&](Index i, Index j) {
        Vec<K> col(static_cast<std::size_t>(n2 * n2), k_zero<K>(f));
        for (Index r = 0; r < n2 * n2; ++r) col[static_cast<std::size_t>(r)] = cm.delta.at(r, i * n + j);
        return detail::coords_op2(col, f, Space{"VV", n});
    };

    // unital: Delta(I) = I (x) I
    {
        Vec<K> vec_id(static_cast<std::size_t>(n2), k_zero<K>(f));
        for (Index i = 0; i < n; ++i) vec_id[static_cast<std::size_t>(i * n + i)] = k_one<K>(f);
        auto d = cm.delta.apply(vec_id);
        auto big = detail::coords_op2(d, f, Space{"VV", n});
        Index bad = (big - LegMap<K>::identity(f, big.domain())).nonzero_count();
        rep.record("unit", bad);
    }

    // multiplicative on matrix units: Delta(E_ij) Delta(E_kl) = d_jk Delta(E_il)
    {
        Index bad = 0;
        std::vector<LegMap<K>> d(static_cast<std::size_t>(n2), LegMap<K>());
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) d[static_cast<std::size_t>(i * n + j)] = column_op(i, j);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k)
                    for (Index l = 0; l < n; ++l) {
                        auto prod = d[static_cast<std::size_t>(i * n + j)] *
                                    d[static_cast<std::size_t>(k * n + l)];
                        if (j == k) prod = prod - d[static_cast<std::size_t>(i * n + l)];
                        bad += prod.nonzero_count();
                    }
        rep.record("multiplicative", bad);
    }

    // coassociativity in coordinates, columnwise
    {
        Index bad = 0;
        for (Index col = 0; col < n2; ++col) {
            SparseVec<K> lhs, rhs;
            for (Index ab = 0; ab < n2 * n2; ++ab) {
                const K& c = cm.delta.at(ab, col);
                if (k_is_zero(c)) continue;
                const Index a = ab / n2, b = ab % n2;
                for (Index uv = 0; uv < n2 * n2; ++uv) {
                    const K& da = cm.delta.at(uv, a);
                    if (!k_is_zero(da)) {
                        const Index key = uv * n2 + b;  // (u, v, b)
                        auto it = lhs.find(key);
                        if (it == lhs.end()) lhs.emplace(key, c * da);
                        else it->second = it->second + c * da;
                    }
                    const K& db = cm.delta.at(uv, b);
                    if (!k_is_zero(db)) {
                        const Index key = a * n2 * n2 + uv;  // (a, u, v)
                        auto it = rhs.find(key);
                        if (it == rhs.end()) rhs.emplace(key, c * db);
                        else it->second = it->second + c * db;
                    }
                }
            }
            for (const auto& [k2, x] : lhs) {
                auto it = rhs.find(k2);
                if (it == rhs.end() ? !k_is_zero(x) : !(x == it->second)) ++bad;
            }
            for (const auto& [k2, x] : rhs)
                if (!lhs.count(k2) && !k_is_zero(x)) ++bad;
        }
        rep.record("coassociativity", bad);
    }
    return rep;
}

/// Classification direction: the coproduct carried by a congruence solution.
/// Requires the congruence to hold (extract_phi succeeds), then certifies.
template <class K>
CoproductMap<K> coproduct_from_solution(const LegMap<K>& f) {
    extract_phi(f);  // throws NotCongruent / Singular when F is not of bialgebra type
    CoproductMap<K> cm = conjugation_coproduct(f);
    check_coproduct(cm).require("coproduct certificates");
    return cm;
}

/// Inverse direction of the classification: build (V, M, F, Phi) whose
/// conjugation coproduct reproduces delta.
template <class K>
MPESolution<K> solution_from_coproduct(const CoproductMap<K>& cm) {
    const Index n = cm.V.dim;
    const Index n2 = n * n;
    const FieldSpec f = cm.delta.field();

    auto rep = check_coproduct(cm);
    for (const auto& viol : rep.violations) {
        if (viol.axiom == "coassociativity")
            throw MathError("NotCoassociative", "coproduct is not coassociative");
        throw MathError("NotUnitalHom", "coproduct is not a unital algebra homomorphism");
    }

    // intertwiners T : V -> V (x) V with Delta(x) T = T x for all x
    std::vector<LegMap<K>> dmat;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            Vec<K> col(static_cast<std::size_t>(n2 * n2));
            for (Index r = 0; r < n2 * n2; ++r) col[static_cast<std::size_t>(r)] = cm.delta.at(r, i * n + j);
            dmat.push_back(detail::coords_op2(col, f, Space{"VV", n}));
        }
    LegMap<K> sys(f, {Space{"eq", n2 * n2 * n}}, {Space{"T", n2 * n}});
    Index row = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const auto& d = dmat[static_cast<std::size_t>(i * n + j)];
            for (Index u = 0; u < n2; ++u)
                for (Index s = 0; s < n; ++s) {
                    for (Index u2 = 0; u2 < n2; ++u2)
                        if (!k_is_zero(d.at(u, u2)))
                            sys.at(row, u2 * n + s) = sys.at(row, u2 * n + s) + d.at(u, u2);
                    if (j == s) sys.at(row, u * n + i) = sys.at(row, u * n + i) - k_one<K>(f);
                    ++row;
                }
        }
    auto tbasis = kernel_basis(sys);
    const Index mdim = static_cast<Index>(tbasis.size());
    if (mdim == 0 || n * mdim != n2)
        throw MathError("EvaluationSingular",
                        "intertwiner space has dimension " + std::to_string(mdim) +
                            ", expected " + std::to_string(n));

    const Space m("M", mdim);
    LegMap<K> fmap(f, {cm.V, cm.V}, {cm.V, m});
    for (Index u = 0; u < n2; ++u)
        for (Index s = 0; s < n; ++s)
            for (Index j = 0; j < mdim; ++j)
                fmap.at(u, s * mdim + j) = tbasis[static_cast<std::size_t>(j)][static_cast<std::size_t>(u * n + s)];
    if (!is_invertible(fmap))
        throw MathError("EvaluationSingular", "evaluation map V (x) M -> V (x) V is singular");

    auto back = conjugation_coproduct(fmap);
    if (!(back.delta == cm.delta))
        throw MathError("Internal", "reconstructed coproduct differs from input");
    auto phi = extract_phi(fmap);
    return verify_mpe(fmap, phi);
}

/// (F, Phi) -> (t F, t Phi^-1 t), re-verified.
template <class K>
MPESolution<K> flip_solution(const MPESolution<K>& s) {
    if (!s.verified) throw UsageError("flip_solution needs a verified solution");
    auto tv = flip_map<K>(s.F.field(), s.V, s.V);
    auto tm = flip_map<K>(s.F.field(), s.M, s.M);
    auto f2 = tv * s.F;
    auto phi2 = tm * inverse(s.phi) * tm;
    return verify_mpe(f2, phi2);
}

/// Pentagon solution Phi -> MPE solution (Phi^-1 t, Phi) with V = M.
template <class K>
MPESolution<K> op_solution(const PentagonSolution<K>& p) {
    if (!p.verified) throw UsageError("op_solution needs a verified solution");
    auto t = flip_map<K>(p.phi.field(), p.M, p.M);
    return verify_mpe(inverse(p.phi) * t, p.phi);
}

/// Tensor product of solutions: (t23 (F (x) F') t23, t23 (Phi (x) Phi') t23)
/// on (V (x) V', M (x) M'), legs fused.
template <class K>
MPESolution<K> tensor_solutions(const MPESolution<K>& a, const MPESolution<K>& b) {
    if (!a.verified || !b.verified) throw UsageError("tensor_solutions needs verified solutions");
    if (a.F.field() != b.F.field()) throw UsageError("tensor_solutions field mismatch");
    const FieldSpec f = a.F.field();
    const Space v(a.V.label + "x" + b.V.label, a.V.dim * b.V.dim);
    const Space m(a.M.label + "x" + b.M.label, a.M.dim * b.M.dim);

    auto middle_swap = [&](const LegMap<K>& x, const LegMap<K>& y, const Legs& fused_dom,
                           const Legs& fused_cod) {
        Legs dom{x.domain()[0], y.domain()[0], x.domain()[1], y.domain()[1]};
        auto t_in = permute_legs<K>(f, {0, 2, 1, 3}, dom);
        auto prod = kron(x, y) * t_in;
        auto t_out = permute_legs<K>(f, {0, 2, 1, 3}, prod.codomain());
        return (t_out * prod).reshaped(fused_cod, fused_dom);
    };
    auto f2 = middle_swap(a.F, b.F, {v, m}, {v, v});
    auto phi2 = middle_swap(a.phi, b.phi, {m, m}, {m, m});
    return verify_mpe(f2, phi2);
}

/// Multiplicity: Phi -> t23 (Phi (x) I_{d^2}) t23 on M (x) k^d, legs fused.
template <class K>
PentagonSolution<K> multiplicity(const PentagonSolution<K>& p, Index d) {
    if (!p.verified) throw UsageError("multiplicity needs a verified solution");
    if (d < 1) throw UsageError("multiplicity dimension must be >= 1");
    const FieldSpec f = p.phi.field();
    const Space w("W", d);
    const Space m2(p.M.label + "*" + std::to_string(d), p.M.dim * d);
    Legs dom{p.M, w, p.M, w};
    auto t_in = permute_legs<K>(f, {0, 2, 1, 3}, dom);
    auto prod = kron(p.phi, LegMap<K>::identity(f, {w, w})) * t_in;
    auto t_out = permute_legs<K>(f, {0, 2, 1, 3}, prod.codomain());
    auto phi2 = (t_out * prod).reshaped({m2, m2}, {m2, m2});
    return verify_pentagon(phi2);
}

/// Transport verification: (f (x) f) F = F' (f (x) g) and (g (x) g) Phi = Phi' (g (x) g).
template <class K>
CheckReport check_equivalence(const MPESolution<K>& s, const MPESolution<K>& s2,
                              const LegMap<K>& f, const LegMap<K>& g) {
    if (!is_invertible(f)) throw MathError("Singular", "f is not invertible");
    if (!is_invertible(g)) throw MathError("Singular", "g is not invertible");
    CheckReport rep("equivalence");
    rep.record("transport-F", (kron(f, f) * s.F - s2.F * kron(f, g)).nonzero_count());
    rep.record("transport-phi", (kron(g, g) * s.phi - s2.phi * kron(g, g)).nonzero_count());
    return rep;
}

}  // namespace pentagon
