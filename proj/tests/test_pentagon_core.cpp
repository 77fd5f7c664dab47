#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pentagon/pentagon.hpp"

using namespace pentagon;
using testutil::Q;

namespace {

const FieldSpec F5 = FieldSpec::primefield(5);

template <class K>
CoproductMap<K> expected_coproduct(FieldSpec f, const Space& v,
                                   const std::function<LegMap<K>(const LegMap<K>&)>& rule) {
    const Index n = v.dim;
    Space ev("End(" + v.label + ")", n * n);
    LegMap<K> delta(f, {ev, ev}, {ev});
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            LegMap<K> e(f, {v}, {v});
            e.at(i, j) = k_one<K>(f);
            auto coords = detail::op2_coords(rule(e), n);
            for (std::size_t r = 0; r < coords.size(); ++r)
                delta.at(static_cast<Index>(r), i * n + j) = coords[r];
        }
    return {v, delta};
}

}  // namespace

TEST_CASE("check_pentagon: identity passes, PhiC2 passes, flip fails") {
    for (Index n : {1, 2, 3}) {
        Space m("M", n);
        CHECK(check_pentagon(LegMap<Rational>::identity(Q, {m, m})).pass);
    }
    CHECK(check_pentagon(testutil::phi_c2<Rational>()).pass);
    CHECK(check_pentagon(testutil::phi_cyclic<Rational>(Q, 3)).pass);
    CHECK(check_pentagon(testutil::phi_cyclic<Fp>(F5, 4)).pass);

    Space m("M", 2);
    auto t = flip_map<Rational>(Q, m, m);
    auto rep = check_pentagon(t);
    CHECK(!rep.pass);
    CHECK(rep.violations.size() == 1);
    CHECK(rep.violations[0].nonzero_entries > 0);
}

TEST_CASE("check_pentagon rejects malformed and singular input") {
    Space m("M", 2), n("N", 3);
    CHECK_THROWS_AS(check_pentagon(LegMap<Rational>::identity(Q, {m, n})), UsageError);
    LegMap<Rational> z(Q, {m, m}, {m, m});
    CHECK_THROWS_AS(check_pentagon(z), MathError);
}

TEST_CASE("check_mpe: (I,I), (t,I) and (PhiC2,PhiC2) are solutions") {
    Space m("M", 2);
    auto id = LegMap<Rational>::identity(Q, {m, m});
    CHECK(check_mpe(id, id).pass);
    auto t = flip_map<Rational>(Q, m, m);
    CHECK(check_mpe(t, id).pass);
    auto phi = testutil::phi_c2<Rational>();
    CHECK(check_mpe(phi, phi).pass);
    // and the flip itself is not a pentagon operator, so (t, t) must fail
    CHECK(!check_mpe(t, t).pass);
}

TEST_CASE("extract_phi: identity, flip, PhiC2, and the NotCongruent failure") {
    Space m("M", 2);
    auto id = LegMap<Rational>::identity(Q, {m, m});
    CHECK(extract_phi(id) == id);

    auto t = flip_map<Rational>(Q, m, m);
    CHECK(extract_phi(t) == id);  // (t, I) solves the MPE and extraction is unique

    auto phi = testutil::phi_c2<Rational>();
    CHECK(extract_phi(phi) == phi);

    auto bad = testutil::corrupted(phi, 0, 1);
    REQUIRE(is_invertible(bad));
    CHECK_THROWS_WITH_AS(extract_phi(bad), doctest::Contains("NotCongruent"), MathError);
}

TEST_CASE("theorem cea: coassociativity of the conjugation coproduct is equivalent to congruence") {
    auto phi = testutil::phi_c2<Rational>();
    std::vector<LegMap<Rational>> valid{LegMap<Rational>::identity(Q, {phi.domain()[0], phi.domain()[0]}),
                                        flip_map<Rational>(Q, phi.domain()[0], phi.domain()[0]), phi};
    for (const auto& f : valid) {
        auto cm = conjugation_coproduct(f);
        CHECK(check_coproduct(cm).pass);
        CHECK_NOTHROW(extract_phi(f));
    }
    for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 4; ++c) {
            auto bad = testutil::corrupted(phi, r, c);
            if (!is_invertible(bad)) continue;
            bool congruent = true;
            try {
                extract_phi(bad);
            } catch (const MathError&) {
                congruent = false;
            }
            auto rep = check_coproduct(conjugation_coproduct(bad));
            bool coassoc = true;
            for (const auto& v : rep.violations)
                if (v.axiom == "coassociativity") coassoc = false;
            CHECK(congruent == coassoc);
        }
}

TEST_CASE("coproducts of the basic solutions") {
    Space m("M", 2);
    auto id = LegMap<Rational>::identity(Q, {m, m});
    auto idv = LegMap<Rational>::identity(Q, {m});

    auto cm_id = coproduct_from_solution(id);
    auto want_right = expected_coproduct<Rational>(
        Q, m, [&](const LegMap<Rational>& x) { return kron(x, idv); });
    CHECK(cm_id.delta == want_right.delta);  // Delta(x) = x (x) 1

    auto t = flip_map<Rational>(Q, m, m);
    auto cm_t = coproduct_from_solution(t);
    auto want_left = expected_coproduct<Rational>(
        Q, m, [&](const LegMap<Rational>& x) { return kron(idv, x); });
    CHECK(cm_t.delta == want_left.delta);  // Delta(x) = 1 (x) x

    // PhiC2: translations are grouplike
    auto phi = testutil::phi_c2<Rational>();
    auto cm = coproduct_from_solution(phi);
    LegMap<Rational> la(Q, {m}, {m});
    la.at(0, 1) = Rational(1);
    la.at(1, 0) = Rational(1);
    auto img = cm.delta.apply(flatten(la));
    CHECK(img == detail::op2_coords(kron(la, la), 2));
    auto img_id = cm.delta.apply(flatten(idv));
    CHECK(img_id == detail::op2_coords(kron(idv, idv), 2));
}

TEST_CASE("classification round trip: delta -> (F, Phi) -> delta") {
    Space m("M", 2);
    std::vector<LegMap<Rational>> fs{LegMap<Rational>::identity(Q, {m, m}),
                                     flip_map<Rational>(Q, m, m), testutil::phi_c2<Rational>()};
    for (const auto& f : fs) {
        auto cm = coproduct_from_solution(f);
        auto s = solution_from_coproduct(cm);
        CHECK(s.verified);
        CHECK(s.M.dim == 2);
        auto cm2 = conjugation_coproduct(s.F);
        CHECK(cm2.delta == cm.delta);
    }
}

TEST_CASE("solution_from_coproduct rejects non-bialgebra input") {
    Space m("M", 2), ev("End(M)", 4);
    // Delta(x) = x (x) x in coordinates is not even linear-multiplicative; use
    // a linear map that is not an algebra homomorphism: send E_ij to E_ij (x) E_ij.
    LegMap<Rational> delta(Q, {ev, ev}, {ev});
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) {
            LegMap<Rational> e(Q, {m}, {m});
            e.at(i, j) = Rational(1);
            auto coords = detail::op2_coords(kron(e, e), 2);
            for (std::size_t r = 0; r < coords.size(); ++r)
                delta.at(static_cast<Index>(r), i * 2 + j) = coords[r];
        }
    CHECK_THROWS_AS(solution_from_coproduct(CoproductMap<Rational>{m, delta}), MathError);
}

TEST_CASE("combinators map verified solutions to verified solutions") {
    auto phi = testutil::phi_c2<Rational>();
    auto base = verify_mpe(phi, phi);
    REQUIRE(base.verified);

    auto flipped = flip_solution(base);
    CHECK(flipped.verified);
    auto double_flipped = flip_solution(flipped);
    CHECK(double_flipped.verified);

    Space m("M", 2);
    auto idpair = verify_mpe(LegMap<Rational>::identity(Q, {m, m}),
                             LegMap<Rational>::identity(Q, {m, m}));
    auto idflip = flip_solution(idpair);
    CHECK(idflip.verified);
    CHECK(idflip.F == flip_map<Rational>(Q, m, m));
    CHECK(idflip.phi == LegMap<Rational>::identity(Q, {m, m}));

    auto p = verify_pentagon(phi);
    auto op = op_solution(p);
    CHECK(op.verified);
    CHECK(extract_phi(op.F) == phi);

    auto op_id = op_solution(verify_pentagon(LegMap<Rational>::identity(Q, {m, m})));
    CHECK(op_id.F == flip_map<Rational>(Q, m, m));

    auto prod = tensor_solutions(base, base);
    CHECK(prod.verified);
    CHECK(prod.M.dim == 4);
    auto mixed = tensor_solutions(base, verify_mpe(flip_map<Rational>(Q, m, m),
                                                   LegMap<Rational>::identity(Q, {m, m})));
    CHECK(mixed.verified);

    // tensor with the 1-dimensional identity pair keeps the matrix
    Space one("U", 1);
    auto unit_pair = verify_mpe(LegMap<Rational>::identity(Q, {one, one}),
                                LegMap<Rational>::identity(Q, {one, one}));
    auto same = tensor_solutions(base, unit_pair);
    CHECK(same.verified);
    CHECK(same.F == base.F.reshaped(same.F.codomain(), same.F.domain()));

    auto m1 = multiplicity(p, 1);
    CHECK(m1.verified);
    CHECK(m1.phi == phi.reshaped(m1.phi.codomain(), m1.phi.domain()));
    auto m2 = multiplicity(p, 2);
    CHECK(m2.verified);
    CHECK(m2.M.dim == 4);
    auto m3 = multiplicity(p, 3);
    CHECK(m3.verified);
    CHECK_THROWS_AS(multiplicity(p, 0), UsageError);
}

TEST_CASE("prop moppe: the Phi of any verified MPE solution solves the pentagon equation") {
    auto phi = testutil::phi_c2<Rational>();
    auto base = verify_mpe(phi, phi);
    std::vector<MPESolution<Rational>> corpus{base, flip_solution(base),
                                              op_solution(verify_pentagon(phi)),
                                              tensor_solutions(base, base)};
    for (const auto& s : corpus) {
        REQUIRE(s.verified);
        CHECK(check_pentagon(s.phi).pass);
    }
}

TEST_CASE("equivalence transport over Q and GF(5)") {
    auto phi_q = testutil::phi_c2<Rational>();
    auto s_q = verify_mpe(phi_q, phi_q);
    auto id_v = LegMap<Rational>::identity(Q, {s_q.V});
    CHECK(check_equivalence(s_q, s_q, id_v, id_v).pass);

    // f = I, g = I against the flipped solution must fail
    CHECK(!check_equivalence(s_q, flip_solution(s_q), id_v, id_v).pass);

    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testutil::random_invertible<Rational>(Q, s_q.V, rng);
        auto g = testutil::random_invertible<Rational>(Q, s_q.M, rng);
        auto f2 = kron(f, f) * s_q.F * inverse(kron(f, g));
        auto phi2 = kron(g, g) * s_q.phi * inverse(kron(g, g));
        auto s2 = verify_mpe(f2, phi2);
        CHECK(s2.verified);
        CHECK(check_equivalence(s_q, s2, f, g).pass);
    }

    auto phi_f = testutil::phi_c2<Fp>(F5);
    auto s_f = verify_mpe(phi_f, phi_f);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = testutil::random_invertible<Fp>(F5, s_f.V, rng);
        auto g = testutil::random_invertible<Fp>(F5, s_f.M, rng);
        auto f2 = kron(f, f) * s_f.F * inverse(kron(f, g));
        auto phi2 = kron(g, g) * s_f.phi * inverse(kron(g, g));
        auto s2 = verify_mpe(f2, phi2);
        CHECK(s2.verified);
        CHECK(check_equivalence(s_f, s2, f, g).pass);
    }

    LegMap<Rational> zf(Q, {s_q.V}, {s_q.V});
    CHECK_THROWS_AS(check_equivalence(s_q, s_q, zf, id_v), MathError);
}

TEST_CASE("check_pentagon reports a violation count for corrupted PhiC2") {
    auto bad = testutil::corrupted(testutil::phi_c2<Rational>(), 0, 1);
    REQUIRE(is_invertible(bad));
    auto rep = check_pentagon(bad);
    CHECK(!rep.pass);
    CHECK(rep.violations[0].nonzero_entries > 0);
}
