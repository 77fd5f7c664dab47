#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pentagon/galois.hpp"
#include "pentagon/reconstruct.hpp"

using namespace pentagon;
using testutil::Q;

namespace {

const FieldSpec F5 = FieldSpec::primefield(5);

template <class K>
PentagonSolution<K> conjugated(const PentagonSolution<K>& p, const LegMap<K>& g) {
    auto gg = kron(g, g);
    return verify_pentagon(gg * p.phi * inverse(gg));
}

}  // namespace

TEST_CASE("lambda and rho images of PhiC2 are the frozen two-dimensional spans") {
    auto p = verify_pentagon(testutil::phi_c2<Rational>());
    auto lr = lambda_rho_images(p);
    CHECK(lr.cert.pass);
    REQUIRE(lr.lambda_basis.dim() == 2);
    REQUIRE(lr.rho_basis.dim() == 2);

    Space m("M", 2);
    auto id = LegMap<Rational>::identity(Q, {m});
    LegMap<Rational> la(Q, {m}, {m});
    la.at(0, 1) = Rational(1);
    la.at(1, 0) = Rational(1);
    CHECK(lr.lambda_basis.elems[0] == id);
    CHECK(lr.lambda_basis.elems[1] == la);

    LegMap<Rational> e00(Q, {m}, {m}), e11(Q, {m}, {m});
    e00.at(0, 0) = Rational(1);
    e11.at(1, 1) = Rational(1);
    CHECK(lr.rho_basis.elems[0] == e00);
    CHECK(lr.rho_basis.elems[1] == e11);

    CHECK(is_invertible(lr.pairing));
}

TEST_CASE("solving rho(omega) = I for PhiC2 gives a counit functional") {
    // the system's columns are the flattened rho-slices
    auto phi = testutil::phi_c2<Rational>();
    Space m = phi.domain()[0];
    Space endm("EndM", 4);
    LegMap<Rational> sys(Q, {endm}, {endm});
    for (Index k = 0; k < 2; ++k)
        for (Index l = 0; l < 2; ++l) {
            auto s = slice(phi, 1, 1, k, l);
            auto v = flatten(s);
            for (std::size_t r = 0; r < v.size(); ++r)
                sys.at(static_cast<Index>(r), k * 2 + l) = v[r];
        }
    auto id = LegMap<Rational>::identity(Q, {m});
    auto omega = solve_linear(sys, flatten(id));
    REQUIRE(omega.has_value());
    Functional<Rational> w{{m}, {m}, *omega};
    // rho(omega) = I forces omega(L_e) = omega(L_a) = 1
    LegMap<Rational> la(Q, {m}, {m});
    la.at(0, 1) = Rational(1);
    la.at(1, 0) = Rational(1);
    CHECK(w.eval(id) == Rational(1));
    CHECK(w.eval(la) == Rational(1));
}

TEST_CASE("lambda image of the identity solution is the scalars") {
    for (Index n : {1, 3, 5}) {
        Space m("M", n);
        auto p = verify_pentagon(LegMap<Rational>::identity(Q, {m, m}));
        auto lr = lambda_rho_images(p);
        CHECK(lr.lambda_basis.dim() == 1);
        CHECK(lr.rho_basis.dim() == 1);
        CHECK(lr.lambda_basis.elems[0] == LegMap<Rational>::identity(Q, {m}));
        CHECK(lr.pairing.rows() == 1);
        CHECK(!k_is_zero(lr.pairing.at(0, 0)));
    }
}

TEST_CASE("multiplicity does not grow the reconstructed algebra") {
    auto p = verify_pentagon(testutil::phi_c2<Rational>());
    auto p2 = multiplicity(p, 2);
    auto lr = lambda_rho_images(p2);
    CHECK(lr.lambda_basis.dim() == 2);
    CHECK(lr.rho_basis.dim() == 2);
}

TEST_CASE("reconstructed Hopf algebra of PhiC2 is the group algebra of Z/2") {
    auto p = verify_pentagon(testutil::phi_c2<Rational>());
    auto rep = reconstruct_hopf(p);
    CHECK(rep.pass);
    CHECK(rep.dim_H() == 2);
    CHECK(rep.dim_coinv() == 1);

    // RREF basis is {I, L_a} = {e, a}, so the structure constants coincide
    // with the group algebra tables
    auto ga = group_algebra<Rational>(Q, cyclic_table(2));
    CHECK(rep.hopf.mu == ga.mu);
    CHECK(rep.hopf.unit == ga.unit);
    CHECK(rep.hopf.delta == ga.delta);
    CHECK(rep.hopf.counit == ga.counit);
    CHECK(rep.hopf.antipode == ga.antipode);
    CHECK(check_hopf_axioms(rep.hopf).pass);
}

TEST_CASE("reconstruction of the identity solution is the ground field") {
    Space m("M", 3);
    auto rep = reconstruct_hopf(verify_pentagon(LegMap<Rational>::identity(Q, {m, m})));
    CHECK(rep.pass);
    CHECK(rep.dim_H() == 1);
    CHECK(rep.dim_coinv() == 3);
    CHECK(rep.hopf.mu.at(0, 0) == Rational(1));
}

TEST_CASE("Sweedler reconstruction has an order-4 antipode") {
    auto hm = trivial_module(sweedler4<Rational>(Q));
    auto p = phi_from_hopf_module(hm);
    auto rep = reconstruct_hopf(p);
    CHECK(rep.pass);
    CHECK(rep.dim_H() == 4);
    CHECK(rep.dim_coinv() == 1);
    CHECK(check_hopf_axioms(rep.hopf).pass);
    auto s2 = rep.hopf.antipode * rep.hopf.antipode;
    CHECK(!s2.is_identity());
    CHECK((s2 * s2).is_identity());
}

TEST_CASE("coinvariants from the fixed-vector characterization") {
    Space m("M", 5);
    auto pid = verify_pentagon(LegMap<Rational>::identity(Q, {m, m}));
    CHECK(coinvariants_phi(pid).size() == 5);

    auto p = verify_pentagon(testutil::phi_c2<Rational>());
    auto cb = coinvariants_phi(p);
    REQUIRE(cb.size() == 1);
    CHECK(cb[0][0] == Rational(1));
    CHECK(cb[0][1] == Rational(0));

    CHECK(coinvariants_phi(multiplicity(p, 3)).size() == 3);
}

TEST_CASE("roundtrip: PhiC2, identity, multiples of Sweedler") {
    auto p = verify_pentagon(testutil::phi_c2<Rational>());
    auto rep = reconstruct_hopf(p);
    auto rt = roundtrip(rep);
    CHECK(rt.pass);
    CHECK(rep.dim_H() == 2);
    CHECK(rep.dim_coinv() == 1);

    Space m("M", 5);
    CHECK(roundtrip(verify_pentagon(LegMap<Rational>::identity(Q, {m, m}))).pass);

    auto psw = phi_from_hopf_module(trivial_module(sweedler4<Rational>(Q)));
    auto psw2 = multiplicity(psw, 2);
    auto rep2 = reconstruct_hopf(psw2);
    CHECK(rep2.dim_H() == 4);
    CHECK(rep2.dim_coinv() == 2);
    CHECK(roundtrip(rep2).pass);
}

TEST_CASE("counit certificate polynomials") {
    Space m("M", 3);
    auto pid = verify_pentagon(LegMap<Rational>::identity(Q, {m, m}));
    auto fid = counit_certificate(pid);
    REQUIRE(fid.size() == 2);  // f(t) = t
    CHECK(fid[0] == Rational(0));
    CHECK(fid[1] == Rational(1));

    auto p = verify_pentagon(testutil::phi_c2<Rational>());
    auto f2 = counit_certificate(p);
    REQUIRE(f2.size() == 3);  // f(t) = t^2 from t^2 - 1
    CHECK(f2[0] == Rational(0));
    CHECK(f2[1] == Rational(0));
    CHECK(f2[2] == Rational(1));

    auto psw = phi_from_hopf_module(trivial_module(sweedler4<Rational>(Q)));
    auto fsw = counit_certificate(psw);
    CHECK(fsw[0] == Rational(0));
    CHECK(poly_eval(fsw, psw.phi).is_identity());

    auto pf5 = verify_pentagon(testutil::phi_cyclic<Fp>(F5, 5));
    auto ff5 = counit_certificate(pf5);
    CHECK(poly_eval(ff5, pf5.phi).is_identity());
}

TEST_CASE("reconstruction dimensions are conjugation invariants") {
    std::mt19937_64 rng(77);
    auto base = verify_pentagon(testutil::phi_cyclic<Rational>(Q, 3));
    auto rep = reconstruct_hopf(base);
    for (int t = 0; t < 3; ++t) {
        auto g = testutil::random_invertible<Rational>(Q, base.M, rng);
        auto p2 = conjugated(base, g);
        REQUIRE(p2.verified);
        auto rep2 = reconstruct_hopf(p2);
        CHECK(rep2.pass);
        CHECK(rep2.dim_H() == rep.dim_H());
        CHECK(rep2.dim_coinv() == rep.dim_coinv());
        CHECK(roundtrip(rep2).pass);
    }
    auto base5 = verify_pentagon(testutil::phi_c2<Fp>(F5));
    for (int t = 0; t < 3; ++t) {
        auto g = testutil::random_invertible<Fp>(F5, base5.M, rng);
        auto p2 = conjugated(base5, g);
        auto rep2 = reconstruct_hopf(p2);
        CHECK(rep2.pass);
        CHECK(rep2.dim_H() == 2);
        CHECK(roundtrip(rep2).pass);
    }
}

TEST_CASE("mpe_reconstruct on the canonical corpus") {
    // (PhiC2, PhiC2): two-dimensional lambda_F span, every certificate exact
    auto phi = testutil::phi_c2<Rational>();
    auto s = verify_mpe(phi, phi);
    auto rep = mpe_reconstruct(s);
    CHECK(rep.pass);
    CHECK(rep.lf_basis.dim() == 2);
    for (const auto& c : rep.certificates) CHECK(c.pass);

    // dim-1 identity pair
    Space one("U", 1);
    auto sid = verify_mpe(LegMap<Rational>::identity(Q, {one, one}),
                          LegMap<Rational>::identity(Q, {one, one}));
    auto rid = mpe_reconstruct(sid);
    CHECK(rid.pass);
    CHECK(rid.lf_basis.dim() == 1);

    // Galois torsor over Z/3
    auto s3 = galois_mpe(torsor_coalgebra<Rational>(Q, cyclic_table(3)));
    auto r3 = mpe_reconstruct(s3);
    CHECK(r3.pass);

    // (t, I)
    Space m("M", 2);
    auto st = verify_mpe(flip_map<Rational>(Q, m, m), LegMap<Rational>::identity(Q, {m, m}));
    CHECK(mpe_reconstruct(st).pass);

    // combinator outputs
    CHECK(mpe_reconstruct(flip_solution(s)).pass);
    CHECK(mpe_reconstruct(op_solution(verify_pentagon(phi))).pass);
    CHECK(mpe_reconstruct(tensor_solutions(s, s)).pass);
}

TEST_CASE("certificate (f) rebuilds F entrywise") {
    auto s = galois_mpe(torsor_coalgebra<Rational>(Q, cyclic_table(4)));
    auto rep = mpe_reconstruct(s);
    REQUIRE(rep.pass);
    bool found = false;
    for (const auto& c : rep.certificates)
        if (c.name == "f-theorem") {
            found = true;
            CHECK(c.pass);
        }
    CHECK(found);
}
