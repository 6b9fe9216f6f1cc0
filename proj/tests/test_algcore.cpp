#include "doctest.h"

#include "d2/algebra.hpp"
#include "d2/module.hpp"
#include "fixtures.hpp"

using namespace d2;
using fx::vec;

namespace {

// plain 2x2 matrices, independent of the structure-constant code
using M2 = std::array<Scalar, 4>;

M2 mm(const M2& a, const M2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

M2 unit_m(int k, const Field& f) {
    M2 m{f.zero(), f.zero(), f.zero(), f.zero()};
    m[k] = f.one();
    return m;
}

M2 as_m2(const Vec& v) { return {v[0], v[1], v[2], v[3]}; }

// Kronecker product, injective on M_2 (x) M_2
std::array<Scalar, 16> kron(const M2& a, const M2& b) {
    std::array<Scalar, 16> k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) k[(i * 2 + r) * 4 + j * 2 + s] = a[i * 2 + j] * b[r * 2 + s];
    return k;
}

bool is_m2_separability_idempotent(const Vec& e, const Field& f) {
    M2 mu{f.zero(), f.zero(), f.zero(), f.zero()};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (e[i * 4 + j].is_zero()) continue;
            M2 p = mm(unit_m(i, f), unit_m(j, f));
            for (int t = 0; t < 4; ++t) mu[t] += e[i * 4 + j] * p[t];
        }
    if (!(mu[0].is_one() && mu[1].is_zero() && mu[2].is_zero() && mu[3].is_one())) return false;
    for (int a = 0; a < 4; ++a) {
        std::array<Scalar, 16> d;
        d.fill(f.zero());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const Scalar& c = e[i * 4 + j];
                if (c.is_zero()) continue;
                auto l = kron(mm(unit_m(a, f), unit_m(i, f)), unit_m(j, f));
                auto r = kron(unit_m(i, f), mm(unit_m(j, f), unit_m(a, f)));
                for (int t = 0; t < 16; ++t) d[t] += c * (l[t] - r[t]);
            }
        for (auto& x : d)
            if (!x.is_zero()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("matrix and group algebras") {
    Algebra m2 = Algebra::matrix(Field{}, 2);
    CHECK(m2.dim() == 4);
    CHECK(vec_equal(m2.unit(), vec({1, 0, 0, 1})));
    CHECK(vec_equal(m2.mul(m2.basis(1), m2.basis(2)), m2.basis(0)));
    CHECK_FALSE(m2.is_commutative());
    CHECK(m2.check_laws().empty());

    Algebra c2 = Algebra::group(Field{}, fx::cyclic_table(2), "C2");
    CHECK(c2.is_commutative());
    Algebra s3 = Algebra::group(Field{}, fx::s3_table(), "S3");
    CHECK_FALSE(s3.is_commutative());

    Algebra op = Algebra::opposite(m2);
    CHECK(vec_equal(op.mul(op.basis(1), op.basis(2)), m2.basis(3)));
}

TEST_CASE("invalid structure constants are rejected with the failing triple") {
    // e0 e0 = e1, unit e0: unit law fails
    CHECK_THROWS_AS(Algebra::from_structure(Field{}, 2, vec({1, 0}), {{0, 0, 1, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}),
                    AlgebraError);
    // nonassociative: e1 e1 = e2, e2 e1 = 0, e1 e2 = e2, with unit e0
    std::vector<Algebra::Entry> m{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 2, 2, 1},
                                  {2, 0, 2, 1}, {1, 1, 2, 1}, {1, 2, 2, 1}};
    try {
        Algebra::from_structure(Field{}, 3, vec({1, 0, 0}), m, "bad");
        FAIL("accepted a nonassociative table");
    } catch (const AlgebraError& e) {
        CHECK(std::string(e.what()).find("associativity fails at basis triple") != std::string::npos);
    }
}

TEST_CASE("centers") {
    CHECK(center(Algebra::matrix(Field{}, 2)).dim() == 1);
    CHECK(center(Algebra::matrix(Field{3}, 3)).dim() == 1);
    CHECK(center(fx::split(2)).dim() == 2);
    CHECK(center(Algebra::group(Field{}, fx::s3_table())).dim() == 3);
    CHECK(center(fx::upper_triangular()).dim() == 1);
}

TEST_CASE("separability idempotents") {
    auto e = separability_idempotent(fx::split(2));
    REQUIRE(e.has_value());
    CHECK(vec_equal(*e, vec({1, 0, 0, 1})));

    Algebra m2 = Algebra::matrix(Field{}, 2);
    auto s = separability_idempotent(m2);
    REQUIRE(s.has_value());
    CHECK(is_m2_separability_idempotent(*s, Field{}));
    Vec expected(16);
    expected[0] = 1;  // e11 (x) e11
    expected[9] = 1;  // e21 (x) e12
    CHECK(is_m2_separability_idempotent(expected, Field{}));
    // the diagonal-type element (1/2) sum_j e1j (x) ej1 is not one
    Vec wrong(16);
    wrong[0] = Scalar(1, 2);
    wrong[1 * 4 + 2] = Scalar(1, 2);
    CHECK_FALSE(is_m2_separability_idempotent(wrong, Field{}));

    auto s2 = separability_idempotent(Algebra::matrix(Field{2}, 2));
    REQUIRE(s2.has_value());
    CHECK(is_m2_separability_idempotent(*s2, Field{2}));

    CHECK_FALSE(separability_idempotent(fx::dual_numbers()).has_value());
    CHECK_FALSE(separability_idempotent(fx::upper_triangular()).has_value());
    // K C_2 is separable iff char != 2
    CHECK(separability_idempotent(Algebra::group(Field{}, fx::cyclic_table(2))).has_value());
    CHECK_FALSE(separability_idempotent(Algebra::group(Field{2}, fx::cyclic_table(2))).has_value());
}

TEST_CASE("Frobenius coordinates") {
    Algebra c2 = Algebra::group(Field{}, fx::cyclic_table(2), "C2");
    auto c = coordinates_from_form(c2, vec({1, 0}));
    REQUIRE(c.has_value());
    CHECK(check_frobenius(c2, *c).empty());
    // dual basis of the group-element basis is g^{-1}
    CHECK(vec_equal(c->f[1], c2.basis(1)));

    Algebra m2 = Algebra::matrix(Field{}, 2);
    auto tr = coordinates_from_form(m2, vec({1, 0, 0, 1}));
    REQUIRE(tr.has_value());
    CHECK(check_frobenius(m2, *tr).empty());
    // trace form: dual of e_ij is e_ji
    CHECK(vec_equal(tr->f[1], m2.basis(2)));

    auto none = frobenius_coordinates(fx::upper_triangular());
    CHECK_FALSE(none.coords.has_value());
    CHECK(none.certified_none);

    auto dn = frobenius_coordinates(fx::dual_numbers());
    REQUIRE(dn.coords.has_value());
    CHECK(check_frobenius(fx::dual_numbers(), *dn.coords).empty());

    auto s3 = frobenius_coordinates(Algebra::group(Field{3}, fx::s3_table()));
    REQUIRE(s3.coords.has_value());
}

TEST_CASE("index-one coordinates") {
    Algebra k3 = fx::split(3);
    auto r = index_one_coordinates(k3);
    REQUIRE(r.coords.has_value());
    CHECK(r.method == "sum functional");
    CHECK(vec_equal(r.coords->phi, vec({1, 1, 1})));
    CHECK(check_frobenius(k3, *r.coords).empty());

    Field f2{2};
    Algebra m2f2 = Algebra::matrix(f2, 2);
    auto q = index_one_coordinates(m2f2);
    REQUIRE(q.coords.has_value());
    CHECK(q.coords->e.size() == 6);
    // independent check with plain matrices: sum e_i f_i = 1, and the dual-basis identities
    M2 s{f2.zero(), f2.zero(), f2.zero(), f2.zero()};
    for (size_t i = 0; i < 6; ++i) {
        M2 p = mm(as_m2(q.coords->e[i]), as_m2(q.coords->f[i]));
        for (int t = 0; t < 4; ++t) s[t] += p[t];
    }
    CHECK((s[0].is_one() && s[1].is_zero() && s[2].is_zero() && s[3].is_one()));
    auto phi = [&](const M2& x) { return x[0] + x[1] + x[2]; };
    for (int k = 0; k < 4; ++k) {
        M2 x = unit_m(k, f2), acc{f2.zero(), f2.zero(), f2.zero(), f2.zero()};
        for (size_t i = 0; i < 6; ++i) {
            Scalar c = phi(mm(x, as_m2(q.coords->e[i])));
            M2 fi = as_m2(q.coords->f[i]);
            for (int t = 0; t < 4; ++t) acc[t] += c * fi[t];
        }
        CHECK(acc == x);
    }

    Algebra m2 = Algebra::matrix(Field{}, 2);
    auto t = index_one_coordinates(m2);
    REQUIRE(t.coords.has_value());
    CHECK(t.method == "corrected trace");
    CHECK(check_frobenius(m2, *t.coords).empty());
    CHECK(vec_equal(t.coords->phi, vec({2, 0, 0, 2})));

    auto m3 = index_one_coordinates(Algebra::matrix(Field{3}, 3));
    REQUIRE(m3.coords.has_value());
    CHECK(check_frobenius(Algebra::matrix(Field{3}, 3), *m3.coords).empty());

    auto c3 = index_one_coordinates(Algebra::group(Field{}, fx::cyclic_table(3)));
    REQUIRE(c3.coords.has_value());
    CHECK(c3.coords->index_one);

    auto dn = index_one_coordinates(fx::dual_numbers());
    CHECK_FALSE(dn.coords.has_value());
    CHECK(dn.note == "not separable");
}

TEST_CASE("nondegeneracy flags") {
    Algebra m2 = Algebra::matrix(Field{}, 2);
    auto t = nondegenerate_form_check(m2, vec({1, 0, 0, 1}));
    CHECK((t.left && t.right));
    auto z = nondegenerate_form_check(m2, Vec(4));
    CHECK((!z.left && !z.right));
    auto d = nondegenerate_form_check(fx::dual_numbers(), vec({0, 1}));
    CHECK((d.left && d.right));
    auto e = nondegenerate_form_check(fx::dual_numbers(), vec({1, 0}));
    CHECK((!e.left && !e.right));
}

TEST_CASE("left and right nondegeneracy agree on random forms") {
    uint64_t st = 99;
    std::vector<Algebra> algs{Algebra::matrix(Field{}, 2), fx::upper_triangular(), fx::dual_numbers(),
                              Algebra::group(Field{5}, fx::s3_table()), Algebra::matrix(Field{2}, 2)};
    for (const auto& a : algs)
        for (int k = 0; k < 40; ++k) {
            Vec phi = random_element(a.field(), a.dim(), st, k % 2 ? 1 : 3);
            auto fl = nondegenerate_form_check(a, phi);
            CHECK(fl.left == fl.right);
        }
}

TEST_CASE("dualizing right modules through a Frobenius form") {
    Algebra m2 = Algebra::matrix(Field{}, 2);
    auto tr = coordinates_from_form(m2, vec({1, 0, 0, 1}));
    REQUIRE(tr.has_value());
    // row vectors K^2 as a right M_2-module: v . e_ij
    Bimodule row = make_bimodule(nullptr, &m2, 2, nullptr,
                                 [&](int k) {
                                     Mat r(2, 2);
                                     r(k % 2, k / 2) = 1;
                                     return r;
                                 },
                                 "K^2");
    CHECK(check_bimodule(row, nullptr, &m2).empty());
    auto rep = dualize_via_phi(m2, *tr, row);
    CHECK(rep.hom_dim == 2);
    CHECK(rep.verified);

    Algebra c3 = Algebra::group(Field{}, fx::cyclic_table(3));
    auto fc = frobenius_coordinates(c3);
    REQUIRE(fc.coords.has_value());
    Bimodule reg = make_bimodule(nullptr, &c3, 3, nullptr, [&](int k) { return c3.rmul_basis(k); }, "A");
    auto r2 = dualize_via_phi(c3, *fc.coords, reg);
    CHECK(r2.hom_dim == 3);
    CHECK(r2.verified);
}

TEST_CASE("subalgebras and algebra maps") {
    Algebra m2 = Algebra::matrix(Field{}, 2);
    Subspace diag = generated_subalgebra(m2, {m2.basis(0)});
    CHECK(diag.dim() == 2);
    Subspace t = generated_subalgebra(m2, {m2.basis(0), m2.basis(1)});
    CHECK(generated_subalgebra(m2, {m2.basis(1)}).dim() == 2);
    CHECK(t.dim() == 3);
    Subspace all = generated_subalgebra(m2, {m2.basis(1), m2.basis(2)});
    CHECK(all.dim() == 4);
    SubAlgebra sa = subalgebra(m2, t, "T");
    CHECK(sa.alg.dim() == 3);
    CHECK(check_algebra_map(sa.alg, m2, sa.incl).empty());
    CHECK_FALSE(sa.alg.is_commutative());
    // transpose is an anti-automorphism of M_2 but not an automorphism
    Mat tp(4, 4);
    tp(0, 0) = tp(1, 2) = tp(2, 1) = tp(3, 3) = 1;
    CHECK(check_algebra_map(m2, m2, tp, true).empty());
    CHECK_FALSE(check_algebra_map(m2, m2, tp, false).empty());
}
