#include "doctest.h"

#include "d2/gallery.hpp"
#include "d2/quantum.hpp"

using namespace d2;

namespace {

void require_all(const std::vector<AxiomResult>& rs) {
    for (const auto& r : rs) {
        CAPTURE(r.name);
        CAPTURE(r.where);
        CHECK(r.ok);
    }
}

Extension scalars(const Algebra& m, const std::string& name) {
    Algebra k = split_algebra(m.field(), 1);
    return make_extension(k, m, Mat::from_cols({m.unit()}), name);
}

struct Pipeline {
    Extension e;
    Chain c;
    Quasibasis left, right;
    FrobeniusSystem sys;
    std::optional<ABialgebroid> a;
    std::optional<BBialgebroid> b;
    explicit Pipeline(Extension x) : e(std::move(x)), c(build_chain(e)) {
        auto l = d2_quasibasis(e, c, true);
        auto r = d2_quasibasis(e, c, false);
        REQUIRE(l);
        REQUIRE(r);
        left = *l;
        right = *r;
        auto s = find_frobenius_system(e);
        REQUIRE(s.system);
        sys = *s.system;
        a = bialgebroid_A(e, c, left, right);
        b = bialgebroid_B(e, c, left);
    }
    WeakHopfReport weak() const { return weak_hopf_verify(e, c, sys, left, *a, *b); }
    HopfReport hopf() const { return hopf_from_irreducible(e, c, sys, left, *a, *b); }
};

// End_Q(Q x Q) as 2 x 2 matrices on the idempotent basis
Mat proj(int i) {
    Mat p(2, 2);
    p(i, i) = 1;
    return p;
}

}  // namespace

TEST_CASE("Q in Q x Q: dual weak Hopf algebras") {
    Pipeline p(gallery_extension("scalars_in_QxQ"));
    WeakHopfReport w = p.weak();
    REQUIRE_FALSE(w.refused());
    CHECK(w.r_method == "sum functional");
    CHECK(vec_equal(w.r_coords.phi, Vec{Scalar(1), Scalar(1)}));
    require_all(w.checks);
    CHECK(w.a.dim() == 4);
    CHECK(w.b.dim() == 4);
    CHECK(rank(w.gram) == 4);
    // Delta(1) = rho(e_1) (x) lambda(e_1) + rho(e_2) (x) lambda(e_2), both projections diagonal
    Vec d1(16);
    for (int i = 0; i < 2; ++i) {
        auto x = p.c.a.coords(proj(i));
        REQUIRE(x);
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) d1[s * 4 + t] += (*x)[s] * (*x)[t];
    }
    CHECK(vec_equal(w.a.coproduct(w.a.alg.unit()), d1));
    CHECK(w.a.genuinely_weak());
    CHECK(w.b.genuinely_weak());
    REQUIRE(w.s_a);
    CHECK(w.s_squared_identity);
    CHECK(w.s_a_kernel == 0);

    Profile prof = classify(p.e, p.c);
    SeparabilityReport sr = split_separable_criteria(p.e, p.c, p.sys, prof, w);
    require_all(sr.checks);
    CHECK(sr.split);
    CHECK(sr.separable);
    CHECK(sr.a_separable);
    CHECK(sr.b_separable);
    CHECK(sr.left_integral_a);
    CHECK(sr.right_integral_b);
}

TEST_CASE("R = K: the weak coproduct is the bialgebroid coproduct") {
    Pipeline p(gallery_extension("trivial"));
    WeakHopfReport w = p.weak();
    REQUIRE_FALSE(w.refused());
    require_all(w.checks);
    CHECK_FALSE(w.a.genuinely_weak());
    HopfReport h = p.hopf();
    REQUIRE_FALSE(h.refused());
    require_all(h.checks);
    CHECK(h.s == Mat::identity(1));
    CHECK(vec_equal(h.psi, Vec{Scalar(1)}));
}

TEST_CASE("N = M = Q: tower identities of the Hopf case") {
    Pipeline p(gallery_extension("trivial"));
    HopfReport h = p.hopf();
    REQUIRE(h.ok());
    Tower t = build_tower(p.e, p.sys);
    TowerMaps maps = tower_maps(p.e, p.c, t);
    require_all(conjugation_identity(p.e, p.c, t, maps, h));
    Profile prof = classify(p.e, p.c);
    PairingIdentityReport pr = biseparable_pairing_check(p.e, p.c, prof, t, maps);
    CHECK(pr.refusal == "");
    require_all(pr.checks);
    CHECK_FALSE(pr.checks.empty());

    TowerMaps bad = maps;
    bad.psi_b = Scalar(2) * bad.psi_b;
    PairingIdentityReport br = biseparable_pairing_check(p.e, p.c, prof, t, bad);
    CHECK_FALSE(br.ok());
    bool located = false;
    for (const auto& r : br.checks)
        if (!r.ok) located = located || r.where == "b=0, a=0" || r.where == "b=0";
    CHECK(located);
}

TEST_CASE("Hopf and pairing checks refuse outside their hypotheses") {
    Extension ut = gallery_extension("upper_triangular_in_M2");
    auto s = find_frobenius_system(ut);
    CHECK(s.certified_none);
    Chain c = build_chain(ut);
    CHECK(c.r.alg.dim() == 1);
    for (const auto& hit : irreducible_search(0, 1)) CHECK(hit.name != "upper_triangular_in_M2");

    Pipeline p(gallery_extension("kC2_in_kC4"));
    HopfReport h = p.hopf();
    CHECK(h.refused());
    Tower t = build_tower(p.e, p.sys);
    TowerMaps maps = tower_maps(p.e, p.c, t);
    PairingIdentityReport pr = biseparable_pairing_check(p.e, p.c, classify(p.e, p.c), t, maps);
    CHECK(pr.refusal == "R not trivial");
}

TEST_CASE("weak Hopf structures over the separable-centralizer gallery") {
    for (const char* name : {"kC2_in_kC4", "kC3_in_kS3", "centrally_projective"}) {
        CAPTURE(name);
        Pipeline p(gallery_extension(name));
        WeakHopfReport w = p.weak();
        REQUIRE_FALSE(w.refused());
        require_all(w.checks);
        CHECK(w.s_a);
        CHECK(w.s_b);
        Profile prof = classify(p.e, p.c);
        require_all(split_separable_criteria(p.e, p.c, p.sys, prof, w).checks);
    }
}

TEST_CASE("Q in M_2(Q): weak Hopf algebras of dimension 16") {
    Pipeline p(gallery_extension("scalars_in_M2"));
    WeakHopfReport w = p.weak();
    REQUIRE_FALSE(w.refused());
    require_all(w.checks);
    CHECK(w.a.dim() == 16);
    CHECK(w.b.dim() == 16);
    CHECK(rank(w.gram) == 16);
}

TEST_CASE("F_2 in M_2(F_2): weak Hopf algebras over the char-2 index one coordinates") {
    Pipeline p(scalars(Algebra::matrix(Field{2}, 2), "F_2 in M_2(F_2)"));
    WeakHopfReport w = p.weak();
    REQUIRE_FALSE(w.refused());
    CHECK(w.r_method == "char-2 matrix coordinates");
    require_all(w.checks);
}

TEST_CASE("QF and depth three on the gallery") {
    for (const auto& g : gallery()) {
        CAPTURE(g.name);
        Extension e = gallery_extension(g.name);
        Chain c = build_chain(e);
        Profile p = classify(e, c);
        QfReport q = qf_instance_check(p);
        require_all(q.checks);
        if (g.name == "kC2_in_kC4") {
            CHECK(q.biseparable);
            CHECK(p.left_qf);
            CHECK(p.right_qf);
        }
        if (g.name == "upper_triangular_in_M2") {
            CHECK(q.d2);
            CHECK_FALSE(q.biseparable);
            CHECK_FALSE(p.left_qf);
            CHECK_FALSE(p.right_qf);
        }
    }
}

TEST_CASE("every irreducible D2 Frobenius instance found gives Hopf algebras") {
    auto hits = irreducible_search(12, 7);
    REQUIRE_FALSE(hits.empty());
    for (const auto& hit : hits) {
        CAPTURE(hit.name);
        Pipeline p(hit.ext);
        HopfReport h = p.hopf();
        REQUIRE_FALSE(h.refused());
        require_all(h.weak.checks);
        require_all(h.checks);
        Tower t = build_tower(p.e, p.sys);
        TowerMaps maps = tower_maps(p.e, p.c, t);
        require_all(conjugation_identity(p.e, p.c, t, maps, h));
        Profile prof = classify(p.e, p.c);
        require_all(split_separable_criteria(p.e, p.c, p.sys, prof, h.weak).checks);
    }
}
