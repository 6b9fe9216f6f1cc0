#include "doctest.h"

#include "d2/bialgd.hpp"
#include "d2/gallery.hpp"

using namespace d2;

namespace {

struct D2 {
    Extension e;
    Chain c;
    Quasibasis left, right;
    explicit D2(Extension x) : e(std::move(x)), c(build_chain(e)) {
        auto l = d2_quasibasis(e, c, true);
        auto r = d2_quasibasis(e, c, false);
        REQUIRE(l);
        REQUIRE(r);
        left = *l;
        right = *r;
    }
    ABialgebroid a() const { return bialgebroid_A(e, c, left, right); }
    BBialgebroid b() const { return bialgebroid_B(e, c, left); }
};

const std::vector<std::string>& d2_names() {
    static const std::vector<std::string> names{"trivial",    "upper_triangular_in_M2", "upper_triangular_in_M2_F2",
                                                "scalars_in_QxQ", "kC2_in_kC4",          "kC3_in_kS3",
                                                "centrally_projective"};
    return names;
}

void require_all(const std::vector<AxiomResult>& rs) {
    for (const auto& r : rs) {
        CAPTURE(r.name);
        CAPTURE(r.where);
        CHECK(r.ok);
    }
}

// Q[C_2] with the group-like coproduct over R = Q
Bialgebroid group_bialgebra() {
    Algebra h = cyclic_group_algebra(Field{}, 2);
    Algebra k = split_algebra(Field{}, 1);
    Mat unit = Mat::from_cols({h.unit()});
    Bialgebroid b = bialgebroid_frame(true, h, k, unit, unit, "Q[C2]");
    b.delta = Mat(b.tt.dim(), 2);
    b.eps = Mat(1, 2);
    for (int g = 0; g < 2; ++g) {
        b.delta.set_col(g, b.tt.pure(h.basis(g), h.basis(g)));
        b.eps(0, g) = 1;
    }
    return b;
}

}  // namespace

TEST_CASE("a bialgebra over a field is a bialgebroid") {
    Bialgebroid b = group_bialgebra();
    CHECK(b.tt.dim() == 4);
    AxiomReport rep = verify_axioms(b);
    require_all(rep.results);
    CHECK(rep.ok());
    // central base: the Takeuchi product is everything
    CHECK(takeuchi_product(b).dim() == 4);
    CHECK(verify_axioms(opposite_bialgebroid(b)).ok());
}

TEST_CASE("a perturbed coproduct is caught with a location") {
    D2 x(gallery_extension("kC2_in_kC4"));
    Bialgebroid b = x.a().bg;
    REQUIRE(verify_axioms(b).ok());
    Bialgebroid bad = b;
    bad.delta(0, 3) += Scalar(1);
    AxiomReport rep = verify_axioms(bad);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep["ii/1: coassociativity"].ok);
    CHECK_FALSE(rep["ii/1: coassociativity"].where.empty());
    Bialgebroid bad_eps = b;
    bad_eps.eps(0, 0) += Scalar(1);
    CHECK_FALSE(verify_axioms(bad_eps)["ii/2: counit"].ok);
}

TEST_CASE("A is a left bialgebroid on depth two examples") {
    for (const auto& name : d2_names()) {
        CAPTURE(name);
        D2 x(gallery_extension(name));
        ABialgebroid a = x.a();
        CHECK(a.coproducts_agree);
        CHECK(a.lu_ok);
        AxiomReport rep = verify_axioms(a.bg);
        require_all(rep.results);
        CHECK(rep.ok());
        require_all(verify_action(a.bg, a.action));
        CHECK(verify_axioms(opposite_bialgebroid(a.bg)).ok());
    }
}

TEST_CASE("A for scalars and for N = M") {
    D2 s(gallery_extension("scalars_in_M2"));
    ABialgebroid a = s.a();
    CHECK(a.bg.dim() == 16);  // End_K M
    CHECK(a.bg.base.dim() == 4);
    CHECK(a.bg.tt.dim() == 64);
    CHECK(verify_axioms(a.bg).ok());

    D2 g(gallery_extension("kC2_in_kC4"));
    CHECK(g.a().bg.dim() == 8);
    CHECK(g.a().bg.base.dim() == 4);

    Algebra m = symmetric_group_algebra3(Field{});
    D2 id(make_extension(m, m, Mat::identity(6), "N=M"));
    ABialgebroid ai = id.a();
    CHECK(ai.bg.dim() == 3);  // the center
    CHECK(ai.bg.tt.dim() == 3);
    for (int x = 0; x < 3; ++x) CHECK(vec_equal(ai.bg.delta.col(x), ai.bg.tt.pure(ai.bg.total.basis(x), ai.bg.total.unit())));
    CHECK(verify_axioms(ai.bg).ok());
}

TEST_CASE("invariants of the action of A") {
    {
        D2 x(gallery_extension("upper_triangular_in_M2"));
        InvariantsA inv = invariants_A(x.e, x.a());
        CHECK(inv.agree);
        CHECK(inv.by_counit.dim() == 4);  // all of M, larger than N
        CHECK_FALSE(inv.equals_n);
    }
    {
        D2 x(gallery_extension("kC2_in_kC4"));
        InvariantsA inv = invariants_A(x.e, x.a());
        CHECK(inv.agree);
        CHECK(inv.by_counit.dim() == 2);
        CHECK(inv.equals_n);
    }
    for (const auto& name : d2_names()) {
        CAPTURE(name);
        D2 x(gallery_extension(name));
        InvariantsA inv = invariants_A(x.e, x.a());
        CHECK(inv.agree);
        CHECK(inv.closed);
        CHECK(inv.equals_n == is_balanced(x.e));
    }
}

TEST_CASE("B is a right bialgebroid on depth two examples") {
    for (const auto& name : d2_names()) {
        CAPTURE(name);
        D2 x(gallery_extension(name));
        BBialgebroid b = x.b();
        CHECK(b.iota_ok);
        CHECK(b.delta_via_iota);
        CHECK(b.invariants_are_rho);
        AxiomReport rep = verify_axioms(b.bg);
        require_all(rep.results);
        CHECK(rep.ok());
        require_all(verify_action(b.bg, b.action));
    }
}

TEST_CASE("B on small examples") {
    D2 g(gallery_extension("kC2_in_kC4"));
    BBialgebroid b = g.b();
    CHECK(b.bg.dim() == 8);
    CHECK(invariants(b.bg, b.action).dim() == 4);

    D2 s(gallery_extension("scalars_in_M2"));
    BBialgebroid bs = s.b();
    CHECK(bs.bg.dim() == 16);
    CHECK(verify_axioms(bs.bg).ok());

    D2 q(gallery_extension("scalars_in_QxQ"));
    BBialgebroid bq = q.b();
    Subspace tk = takeuchi_product(bq.bg);
    CHECK(tk.contains(bq.bg.delta * bq.bg.total.unit()));
    // B = span e_ij, B (x)_R B = span e_ij (x) e_jl, and s, t act on both legs through the middle index
    CHECK(bq.bg.tt.dim() == 8);
    CHECK(tk.dim() == 8);

    Algebra m = symmetric_group_algebra3(Field{});
    D2 id(make_extension(m, m, Mat::identity(6), "N=M"));
    CHECK(id.b().bg.dim() == 3);
}

TEST_CASE("duals of A") {
    for (const auto& name : {"kC2_in_kC4", "scalars_in_QxQ", "upper_triangular_in_M2", "kC3_in_kS3"}) {
        CAPTURE(name);
        D2 x(gallery_extension(name));
        ABialgebroid a = x.a();
        auto rd = right_dual(a.bg);
        auto ld = left_dual(a.bg);
        REQUIRE(rd);
        REQUIRE(ld);
        CHECK(rd->bg.dim() == a.bg.dim());
        CHECK(ld->bg.dim() == a.bg.dim());
        require_all(verify_axioms(rd->bg).results);
        require_all(verify_axioms(ld->bg).results);
        require_all(right_dual_relations(a.bg, *rd));
        for (const auto& rel : left_dual_relations(a.bg, *ld)) {
            CAPTURE(rel.name);
            CAPTURE(rel.where);
            CHECK(rel.ok);
        }
        require_all(double_dual_check(a.bg, *ld));
    }
}

TEST_CASE("B is dual to A") {
    for (const auto& name : d2_names()) {
        CAPTURE(name);
        D2 x(gallery_extension(name));
        PairingReport p = duality_pairing_check(x.e, x.c, x.a(), x.b());
        require_all(p.eta);
        require_all(p.psi);
        CHECK(p.ok());
        CHECK(p.eta_rank == x.c.b.dim());
    }
    D2 s(gallery_extension("scalars_in_M2"));
    PairingReport p = duality_pairing_check(s.e, s.c, s.a(), s.b());
    CHECK(p.eta_rank == 16);
    CHECK(p.ok());
}

TEST_CASE("End M_N is a smash product") {
    D2 g(gallery_extension("kC2_in_kC4"));
    SmashIso x = smash_end_iso(g.e, g.a());
    CHECK(x.end_right.alg.dim() == 8);
    CHECK(x.smash.alg.dim() == 8);
    CHECK(x.ok());
    CHECK(x.smash.iota_a_injective == x.smash.faithful);

    D2 s(gallery_extension("scalars_in_M2"));
    SmashIso y = smash_end_iso(s.e, s.a());
    CHECK(y.smash.alg.dim() == 16);
    CHECK(y.ok());

    for (const auto& name : d2_names()) {
        CAPTURE(name);
        D2 x2(gallery_extension(name));
        SmashIso z = smash_end_iso(x2.e, x2.a());
        for (const auto& f : z.smash.failures) CAPTURE(f);
        CAPTURE(z.map_failure);
        CHECK(z.ok());
        CHECK(z.smash.iota_m_injective);
    }
}
