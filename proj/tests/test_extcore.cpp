#include "doctest.h"

#include "d2/gallery.hpp"

using namespace d2;

namespace {

struct Built {
    Extension e;
    Chain c;
    explicit Built(Extension x) : e(std::move(x)), c(build_chain(e)) {}
};

Built gal(const std::string& name) { return Built(gallery_extension(name)); }

Extension identity_extension(const Algebra& m) { return make_extension(m, m, Mat::identity(m.dim()), "N=M"); }

}  // namespace

TEST_CASE("extension validation") {
    Algebra m = Algebra::matrix(Field{}, 2);
    Algebra k = split_algebra(Field{}, 1);
    Mat bad(4, 1);
    bad(0, 0) = 1;  // e11 is not the unit
    CHECK_THROWS_AS(make_extension(k, m, bad, "bad"), AlgebraError);
    Extension ut = gallery_extension("upper_triangular_in_M2");
    CHECK(ut.proper());
    CHECK(ut.n.dim() == 3);
}

TEST_CASE("centralizers") {
    CHECK(gal("upper_triangular_in_M2").c.r.alg.dim() == 1);
    CHECK(gal("scalars_in_M2").c.r.alg.dim() == 4);
    CHECK(gal("kC2_in_kC4").c.r.alg.dim() == 4);
    CHECK(gal("kC3_in_kS3").c.r.alg.dim() == 4);
    Built id(identity_extension(symmetric_group_algebra3(Field{})));
    CHECK(id.c.r.alg.dim() == 3);  // the center
}

TEST_CASE("step two centralizer A and bimodule homs") {
    CHECK(gal("upper_triangular_in_M2").c.a.alg.dim() == 1);
    CHECK(gal("scalars_in_M2").c.a.alg.dim() == 16);
    CHECK(gal("kC2_in_kC4").c.a.alg.dim() == 8);
    Built ut = gal("upper_triangular_in_M2");
    // lambda(r), rho(r) land in A
    CHECK(ut.c.lambda_r.rows() == 1);
}

TEST_CASE("tensor squares") {
    Built id(identity_extension(Algebra::matrix(Field{}, 2)));
    CHECK(id.c.t2.dim() == 4);
    CHECK(gal("scalars_in_M2").c.t2.dim() == 16);
    CHECK(gal("kC2_in_kC4").c.t2.dim() == 8);
    CHECK(gal("kC3_in_kS3").c.t2.dim() == 12);
}

TEST_CASE("tensor quotient invariants") {
    for (const auto& name : {"upper_triangular_in_M2", "kC2_in_kC4", "kC3_in_kS3", "upper_triangular_in_M2_F2"}) {
        Built b = gal(name);
        const auto& t = b.c.t2;
        const auto& m = b.e.m;
        for (int q = 0; q < t.dim(); ++q) {
            auto [v, w] = t.section(q);
            Vec u(t.dim());
            u[q] = m.field().one();
            CHECK(vec_equal(t.pure(m.basis(v), m.basis(w)), u));
        }
        for (int i = 0; i < m.dim(); ++i)
            for (int k = 0; k < b.e.n.dim(); ++k)
                for (int j = 0; j < m.dim(); ++j) {
                    Vec n = b.e.image(b.e.n.basis(k));
                    Vec d = t.pure(m.mul(m.basis(i), n), m.basis(j)) - t.pure(m.basis(i), m.mul(n, m.basis(j)));
                    CHECK(is_zero(d));
                }
        CHECK(check_bimodule(t.module, &m, &m).empty());
        TensorQuotient t3 = tensor_cube(b.e, t);
        CHECK(check_bimodule(t3.module, &m, &m).empty());
    }
}

TEST_CASE("tensor quotient labels are enforced") {
    Built b = gal("kC2_in_kC4");
    TensorQuotient aa = a_tensor_a(b.e, b.c);
    CHECK_THROWS_AS(tensor_cube(b.e, aa), std::logic_error);
}

TEST_CASE("B as an algebra") {
    Built b = gal("kC2_in_kC4");
    CHECK(b.c.b.dim() == 8);
    CHECK(b.c.b.check_laws().empty());
    Built s = gal("scalars_in_M2");
    CHECK(s.c.b.dim() == 16);
    // N = K: B = M (x) M with b b' = b'^1 b^1 (x) b^2 b'^2, i.e. M^op (x) M
    REQUIRE(s.c.b_space.basis_matrix() == Mat::identity(16));
    CHECK(check_algebra_map(Algebra::tensor(Algebra::opposite(s.e.m), s.e.m), s.c.b, Mat::identity(16)).empty());
}

TEST_CASE("quasibases") {
    for (const auto& name : {"upper_triangular_in_M2", "scalars_in_M2", "kC2_in_kC4", "kC3_in_kS3", "trivial"}) {
        Built b = gal(name);
        for (bool left : {true, false}) {
            auto q = d2_quasibasis(b.e, b.c, left);
            REQUIRE(q.has_value());
            CHECK(check_quasibasis(b.e, b.c, *q).empty());
        }
    }
    Built id(identity_extension(cyclic_group_algebra(Field{}, 3)));
    auto q = d2_quasibasis(id.e, id.c, true);
    REQUIRE(q.has_value());
    CHECK(check_quasibasis(id.e, id.c, *q).empty());

    Built nd = gal("random_non_d2");
    CHECK_FALSE(d2_quasibasis(nd.e, nd.c, true).has_value());
    CHECK_FALSE(d2_quasibasis(nd.e, nd.c, false).has_value());
}

TEST_CASE("a corrupted quasibasis is rejected") {
    Built b = gal("kC2_in_kC4");
    auto q = d2_quasibasis(b.e, b.c, true);
    REQUIRE(q.has_value());
    q->b[0] = Scalar(2) * q->b[0];
    CHECK_FALSE(check_quasibasis(b.e, b.c, *q).empty());
}

TEST_CASE("the scalar-extension quasibasis from dual bases") {
    // b_i = e_i (x) 1, beta_i = iota pi_i
    Built b = gal("scalars_in_M2");
    Quasibasis q;
    Vec one = b.e.m.unit();
    for (int i = 0; i < 4; ++i) {
        q.b.push_back(b.c.t2.pure(b.e.m.basis(i), one));
        Mat beta(4, 4);
        for (int r = 0; r < 4; ++r) beta(r, i) = one[r];
        q.beta.push_back(beta);
    }
    CHECK(check_quasibasis(b.e, b.c, q).empty());
}

TEST_CASE("classification of the upper triangular example") {
    Built b = gal("upper_triangular_in_M2");
    Profile p = classify(b.e, b.c);
    CHECK(p.dim_r == 1);
    CHECK(p.h_separable);
    CHECK(p.h_separable_unit.has_value());
    CHECK(p.left_d2);
    CHECK(p.right_d2);
    CHECK(p.dim_a == 1);
    CHECK_FALSE(p.balanced);
    CHECK_FALSE(p.left_qf);
    CHECK_FALSE(p.right_qf);
    CHECK(end_right(b.e).dim() == 4);
}

TEST_CASE("classification of N = M and group algebra extensions") {
    Built id(identity_extension(symmetric_group_algebra3(Field{})));
    Profile p = classify(id.e, id.c);
    CHECK((p.left_d2 && p.right_d2 && p.split && p.separable && p.balanced));

    Built g = gal("kC2_in_kC4");
    Profile q = classify(g.e, g.c);
    CHECK((q.left_d2 && q.right_d2 && q.split && q.separable && q.balanced));
    CHECK((q.left_qf && q.right_qf && q.left_d3 && q.right_d3));
    REQUIRE(q.split_map.has_value());
    CHECK((*q.split_map * g.e.iota) == Mat::identity(2));

    Built nd = gal("random_non_d2");
    Profile r = classify(nd.e, nd.c);
    CHECK_FALSE(r.left_d2);
    CHECK_FALSE(r.right_d2);
    CHECK(r.left_d3);
}

TEST_CASE("the two formulations of depth two agree") {
    std::vector<Extension> exts;
    for (const auto& g : gallery()) exts.push_back(gallery_extension(g.name));
    for (uint64_t s = 1; s <= 12; ++s) exts.push_back(random_extension(s));
    for (const auto& e : exts) {
        Chain c = build_chain(e);
        CAPTURE(e.name);
        CHECK(d2_quasibasis(e, c, true).has_value() == d2_by_summand(e, c, true));
        CHECK(d2_quasibasis(e, c, false).has_value() == d2_by_summand(e, c, false));
    }
}

TEST_CASE("H-separable and centrally projective instances are depth two") {
    for (const auto& g : gallery()) {
        Extension e = gallery_extension(g.name);
        Chain c = build_chain(e);
        Profile p = classify(e, c, {false, false});
        CAPTURE(g.name);
        if (p.h_separable || p.centrally_projective) CHECK((p.left_d2 && p.right_d2));
    }
}

TEST_CASE("endomorphism ring isomorphisms") {
    for (const auto& name : {"scalars_in_M2", "kC2_in_kC4", "upper_triangular_in_M2", "trivial"}) {
        Built b = gal(name);
        auto l = d2_quasibasis(b.e, b.c, true);
        auto r = d2_quasibasis(b.e, b.c, false);
        auto checks = end_iso_props(b.e, b.c, &*l, &*r);
        CHECK(checks.size() == 5);
        for (const auto& x : checks) {
            CAPTURE(x.name);
            CHECK(x.ok);
        }
        if (std::string(name) == "scalars_in_M2") {
            CHECK(checks[0].dim_domain == 16);
            CHECK(checks[1].dim_domain == 16);
        }
        if (std::string(name) == "kC2_in_kC4") CHECK(checks[1].dim_codomain == 8);
    }
}
