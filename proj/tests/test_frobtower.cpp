#include "doctest.h"

#include "d2/frobtower.hpp"
#include "d2/gallery.hpp"

using namespace d2;

namespace {

void require_all(const std::vector<AxiomResult>& rs) {
    for (const auto& r : rs) {
        CAPTURE(r.name);
        CAPTURE(r.where);
        CHECK(r.ok);
    }
}

// E(m) = n when m = iota(n) is a basis vector of M, 0 on the remaining basis vectors
Mat coordinate_projection(const Extension& e) {
    Mat out(e.n.dim(), e.m.dim());
    for (int j = 0; j < e.m.dim(); ++j)
        if (auto c = solve(e.iota, e.m.basis(j))) out.set_col(j, *c);
    return out;
}

struct Full {
    Extension e;
    Chain c;
    FrobeniusSystem sys;
    Tower t;
    explicit Full(Extension x) : e(std::move(x)), c(build_chain(e)) {
        auto s = find_frobenius_system(e);
        REQUIRE(s.system);
        sys = *s.system;
        t = build_tower(e, sys);
    }
};

}  // namespace

TEST_CASE("kC2 in kC4: the coordinate projection and the group dual bases") {
    Extension e = gallery_extension("kC2_in_kC4");
    Mat proj = coordinate_projection(e);
    REQUIRE(rank(proj) == 2);
    FrobeniusSystem s;
    s.e = proj;
    // g^k is basis k; dual bases {1, g} and {1, g^3}
    s.x = {e.m.basis(0), e.m.basis(1)};
    s.y = {e.m.basis(0), e.m.basis(3)};
    CHECK(check_frobenius_system(e, s) == "");
    auto got = system_from_hom(e, proj);
    REQUIRE(got);
    CHECK(check_frobenius_system(e, *got) == "");
    FrobeniusSystem bad = s;
    bad.y[1] = e.m.basis(1);
    CHECK(check_frobenius_system(e, bad) != "");
}

TEST_CASE("kC2 in kC4: tower dimensions and identities") {
    Full f(gallery_extension("kC2_in_kC4"));
    CHECK(f.t.m1.dim() == 8);
    CHECK(f.t.m2.dim() == 16);
    CHECK(f.t.a_hat.dim() == 8);
    CHECK(f.t.b_hat.dim() == 8);
    // N central and M free of rank 2: M_2^N is End_N(M (x)_N M) with M (x)_N M free of rank 4 over N
    CHECK(f.t.c_hat.dim() == 32 / 2);
    require_all(verify_tower(f.e, f.t));
    TowerMaps maps = tower_maps(f.e, f.c, f.t);
    require_all(maps.checks);
    auto l = d2_quasibasis(f.e, f.c, true);
    auto r = d2_quasibasis(f.e, f.c, false);
    REQUIRE(l);
    REQUIRE(r);
    ABialgebroid a = bialgebroid_A(f.e, f.c, *l, *r);
    D2FrobeniusReport rep = d2_frobenius_props(f.e, f.c, f.t, maps, *l, a);
    require_all(rep.checks);
    CHECK(rep.m1_left_d2);
    CHECK(rep.m1_right_d2);
    CHECK(rep.c_hat_generated);
    BBialgebroid b = bialgebroid_B(f.e, f.c, *l);
    require_all(os_actions(f.e, f.t, maps, a, b));
}

TEST_CASE("N = M: E is the identity and the tower is constant") {
    Full f(gallery_extension("trivial"));
    CHECK(f.sys.e == Mat::identity(1));
    CHECK(f.t.m1.dim() == 1);
    CHECK(f.t.m2.dim() == 1);
    CHECK(vec_equal(f.t.e1, f.t.m1.unit()));
    require_all(verify_tower(f.e, f.t));
}

TEST_CASE("upper triangular in M_2 is not Frobenius") {
    for (const char* name : {"upper_triangular_in_M2", "upper_triangular_in_M2_F2"}) {
        CAPTURE(name);
        auto s = find_frobenius_system(gallery_extension(name));
        CHECK_FALSE(s.system);
        CHECK(s.certified_none);
    }
}

TEST_CASE("the tower over Frobenius D2 extensions of the gallery") {
    for (const char* name : {"scalars_in_QxQ", "kC3_in_kS3", "centrally_projective", "scalars_in_M2"}) {
        CAPTURE(name);
        Full f(gallery_extension(name));
        CHECK(check_frobenius_system(f.e, f.sys) == "");
        CHECK(f.t.m1.dim() == f.t.t2.dim());
        require_all(verify_tower(f.e, f.t));
        TowerMaps maps = tower_maps(f.e, f.c, f.t);
        require_all(maps.checks);
        auto l = d2_quasibasis(f.e, f.c, true);
        auto r = d2_quasibasis(f.e, f.c, false);
        REQUIRE(l);
        REQUIRE(r);
        ABialgebroid a = bialgebroid_A(f.e, f.c, *l, *r);
        D2FrobeniusReport rep = d2_frobenius_props(f.e, f.c, f.t, maps, *l, a);
        require_all(rep.checks);
        CHECK(rep.m1_left_d2);
        CHECK(rep.m1_right_d2);
        BBialgebroid b = bialgebroid_B(f.e, f.c, *l);
        require_all(os_actions(f.e, f.t, maps, a, b));
    }
}

TEST_CASE("E_M(M_1^N) lies in R for any Frobenius system") {
    Full f(gallery_extension("kC3_in_kS3"));
    for (const auto& x : f.t.a_hat.basis()) CHECK(f.c.r.space.contains(f.t.e_m * x));
}

TEST_CASE("a non-depth-two Frobenius extension still has a tower") {
    Full f(gallery_extension("random_non_d2"));
    require_all(verify_tower(f.e, f.t));
    TowerMaps maps = tower_maps(f.e, f.c, f.t);
    require_all(maps.checks);
}
