#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pentagon/galois.hpp"

using namespace pentagon;
using testutil::Q;

namespace {

/// L = H with its own comultiplication and multiplication.
template <class K>
ModuleCoalgebra<K> self_coalgebra(const HopfAlgebra<K>& h) {
    Space l("L", h.H.dim);
    return {h, l, h.delta.reshaped({l, l}, {l}), h.counit.reshaped({}, {l}),
            h.mu.reshaped({l}, {l, h.H})};
}

/// The standard paired data for a torsor: V = L, M = H trivial, pi the
/// action, nu the division map.
template <class K>
PairedComoduleData<K> torsor_paired_data(FieldSpec f, const CayleyTable& group) {
    auto mc = torsor_coalgebra<K>(f, group);
    auto hm = trivial_module(mc.hopf);
    const Index n = static_cast<Index>(group.size());
    Space v("V", n);
    auto delta_v = mc.delta_L.reshaped({v, mc.L}, {v});
    auto pi = mc.mu_L.reshaped({v}, {mc.L, hm.M});
    // nu(x (x) y) = the unique g with x g = y
    LegMap<K> nu(f, {hm.M}, {mc.L, v});
    for (Index x = 0; x < n; ++x)
        for (Index g = 0; g < n; ++g)
            nu.at(g, x * n + group[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)]) =
                k_one<K>(f);
    return {mc, hm, v, delta_v, pi, nu};
}

}  // namespace

TEST_CASE("module coalgebra axioms: L = H, torsor, corrupted comultiplication") {
    auto h2 = group_algebra<Rational>(Q, cyclic_table(2));
    CHECK(check_module_coalgebra(self_coalgebra(h2)).pass);
    CHECK(check_module_coalgebra(self_coalgebra(sweedler4<Rational>(Q))).pass);
    CHECK(check_module_coalgebra(torsor_coalgebra<Rational>(Q, cyclic_table(3))).pass);

    // Delta(x) = x (x) sigma(x) with sigma a transposition breaks coassociativity
    auto mc = torsor_coalgebra<Rational>(Q, cyclic_table(3));
    LegMap<Rational> bad(Q, {mc.L, mc.L}, {mc.L});
    const Index sigma[3] = {1, 0, 2};
    for (Index x = 0; x < 3; ++x) bad.at(x * 3 + sigma[x], x) = Rational(1);
    mc.delta_L = bad;
    auto rep = check_module_coalgebra(mc);
    CHECK(!rep.pass);
    bool coassoc = false;
    for (const auto& v : rep.violations)
        if (v.axiom == "coassociativity") coassoc = true;
    CHECK(coassoc);
}

TEST_CASE("paired data: Galois instantiation over C2, corrupted nu, dim-1 case") {
    auto pd = torsor_paired_data<Rational>(Q, cyclic_table(2));
    CHECK(check_paired_data(pd).pass);

    // nu(h (x) h') = h h' instead of S(h) h' breaks the counit law
    auto bad = pd;
    bad.nu = pd.pi.reshaped({bad.hm.M}, {bad.mc.L, bad.V});
    auto rep = check_paired_data(bad);
    // for C2, S = id, so h h' actually equals S(h) h'; corrupt harder: nu = 0
    if (rep.pass) {
        bad.nu = LegMap<Rational>(Q, {bad.hm.M}, {bad.mc.L, bad.V});
        rep = check_paired_data(bad);
    }
    CHECK(!rep.pass);

    auto pd1 = torsor_paired_data<Rational>(Q, cyclic_table(1));
    CHECK(check_paired_data(pd1).pass);
}

TEST_CASE("paired data with nu built from the antipode") {
    // L = H = k[Z/3]: nu(h (x) h') = S(h) h' differs from h h' and passes
    auto pd = torsor_paired_data<Rational>(Q, cyclic_table(3));
    CHECK(check_paired_data(pd).pass);
    // explicit check that nu is (S (x) I) followed by multiplication
    auto& mc = pd.mc;
    auto hm = pd.hm;
    auto mul = mc.hopf.mu.reshaped({hm.M}, {mc.L, pd.V});
    auto s_leg = kron(mc.hopf.antipode.reshaped({mc.L}, {mc.L}),
                      LegMap<Rational>::identity(Q, {pd.V}));
    CHECK(*pd.nu == mul * s_leg);
    // and the raw multiplication in place of nu fails for C3 (S != id)
    auto bad = pd;
    bad.nu = mul;
    CHECK(!check_paired_data(bad).pass);
}

TEST_CASE("build_FV: C2 gives PhiC2 twice, torsors give permutation solutions") {
    auto pd2 = torsor_paired_data<Rational>(Q, cyclic_table(2));
    auto s2 = build_FV(pd2);
    CHECK(s2.verified);
    auto phic2 = testutil::phi_c2<Rational>();
    CHECK(s2.F == phic2.reshaped(s2.F.codomain(), s2.F.domain()));
    CHECK(s2.phi == phic2.reshaped(s2.phi.codomain(), s2.phi.domain()));

    auto pd3 = torsor_paired_data<Rational>(Q, cyclic_table(3));
    auto s3 = build_FV(pd3);
    CHECK(s3.verified);
    // frozen oracle: F(x (x) g) = x (x) x+g on 9 basis vectors
    for (Index x = 0; x < 3; ++x)
        for (Index g = 0; g < 3; ++g)
            for (Index r = 0; r < 9; ++r)
                CHECK(s3.F.at(r, x * 3 + g) ==
                      Rational(r == x * 3 + (x + g) % 3 ? 1 : 0));

    auto pd1 = torsor_paired_data<Rational>(Q, cyclic_table(1));
    CHECK(build_FV(pd1).F.is_identity());

    // without nu the generic inverse path is used
    auto no_nu = pd3;
    no_nu.nu.reset();
    CHECK(build_FV(no_nu).verified);
}

TEST_CASE("galois boundary: torsors pass, the two-point trivial action does not") {
    for (Index n : {1, 2, 3, 4}) {
        auto mc = torsor_coalgebra<Rational>(Q, cyclic_table(n));
        CHECK(galois_check(mc).pass);
        auto s = galois_mpe(mc);
        CHECK(s.verified);
    }
    auto mcK = torsor_coalgebra<Rational>(Q, klein_table());
    CHECK(galois_check(mcK).pass);
    CHECK(galois_mpe(mcK).verified);

    // X = two fixed points under Z/2
    ActionTable trivial_act{{0, 0}, {1, 1}};
    auto bad = group_set_coalgebra<Rational>(Q, cyclic_table(2), trivial_act);
    auto rep = galois_check(bad);
    CHECK(!rep.pass);
    CHECK(rep.violations[0].nonzero_entries == 4);  // rank 2 in a 4x4 square
    CHECK_THROWS_WITH_AS(galois_mpe(bad), doctest::Contains("NotGalois"), MathError);
}

TEST_CASE("galois iff free and transitive, sampled family") {
    for (const auto& [group, nx_max] :
         std::vector<std::pair<CayleyTable, Index>>{{cyclic_table(2), 3}, {cyclic_table(3), 3}}) {
        for (Index nx = 1; nx <= nx_max; ++nx) {
            for (const auto& act : all_group_actions(group, nx)) {
                auto mc = group_set_coalgebra<Rational>(Q, group, act);
                CHECK(galois_check(mc).pass == action_is_free_transitive(group, act));
            }
        }
    }
}

TEST_CASE("galois_mpe on the self-torsor reproduces the (Phi_H, Phi_H) solution") {
    auto s = galois_mpe(torsor_coalgebra<Rational>(Q, cyclic_table(2)));
    auto phic2 = testutil::phi_c2<Rational>();
    CHECK(s.F == phic2.reshaped(s.F.codomain(), s.F.domain()));
    CHECK(s.phi == phic2.reshaped(s.phi.codomain(), s.phi.domain()));

    auto s3 = galois_mpe(torsor_coalgebra<Rational>(Q, s3_table()));
    CHECK(s3.verified);
    auto phi_s3 = phi_from_hopf_module(trivial_module(group_algebra<Rational>(Q, s3_table())));
    CHECK(s3.F == phi_s3.phi.reshaped(s3.F.codomain(), s3.F.domain()));
}
