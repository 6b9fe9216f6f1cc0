#include "doctest.h"

#include <random>

#include "d2/exactla.hpp"

using namespace d2;

namespace {

Mat mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vec> r;
    for (auto& row : rows) {
        Vec v;
        for (long x : row) v.emplace_back(x);
        r.push_back(v);
    }
    return Mat::from_rows(r);
}

Vec vec(std::initializer_list<Scalar> xs) { return Vec(xs); }

Mat random_mat(std::mt19937_64& rng, int r, int c, uint32_t p = 0) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::uniform_int_distribution<int> z(0, 2);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            long x = z(rng) == 0 ? 0 : d(rng);
            m(i, j) = p ? Scalar::residue(x, p) : Scalar(x);
        }
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
    Scalar a(1, 3), b(1, 6);
    CHECK((a + b) == Scalar(1, 2));
    CHECK((a * b) == Scalar(1, 18));
    CHECK((a / b) == Scalar(2));
    CHECK(Scalar(-4, 6).str() == "-2/3");
    Scalar big(1L << 62);
    Scalar sq = big * big * big;
    CHECK(sq / big / big == big);
    CHECK(Scalar::parse("-4/9").str() == "-4/9");
    CHECK(Scalar::parse("1/2", 5).str() == "3");
    Scalar x = Scalar::residue(3, 7);
    CHECK((x * x.inverse()).is_one());
    CHECK((x + Scalar(4)).is_zero());
}

TEST_CASE("solve") {
    CHECK(vec_equal(*solve(Mat::identity(3), vec({1, 2, 3})), vec({1, 2, 3})));
    CHECK_FALSE(solve(Mat(2, 2), vec({1, 0})).has_value());
    auto x = solve(mat({{1, 2}, {3, 4}}), vec({5, 6}));
    REQUIRE(x.has_value());
    CHECK(vec_equal(*x, vec({Scalar(-4), Scalar(9, 2)})));
    CHECK_THROWS(solve(Mat::identity(2), vec({1, 2, 3})));
}

TEST_CASE("kernel") {
    CHECK(kernel(Mat::identity(3)).dim() == 0);
    CHECK(kernel(Mat(4, 4)).dim() == 4);
    Subspace k = kernel(mat({{1, 1}}));
    REQUIRE(k.dim() == 1);
    Vec v = k.basis_vec(0);
    CHECK((vec_equal(v, vec({1, -1})) || vec_equal(v, vec({-1, 1}))));
}

TEST_CASE("member") {
    Subspace full = Subspace::span(2, {vec({1, 0}), vec({0, 1})});
    CHECK(vec_equal(*member(full, vec({7, -2})), vec({7, -2})));
    CHECK_FALSE(member(Subspace(2), vec({1, 0})).has_value());
    auto c = express({vec({1, 1}), vec({0, 1})}, vec({2, 3}));
    REQUIRE(c.has_value());
    CHECK(vec_equal(*c, vec({2, 1})));
    Subspace s = Subspace::span(2, {vec({1, 1}), vec({0, 1})});
    CHECK(member(s, vec({2, 3})).has_value());
    CHECK_FALSE(express({vec({1, 1})}, vec({2, 3})).has_value());
}

TEST_CASE("span_of_products") {
    CHECK(span_of_products({Mat::identity(2)}, {Mat::identity(2)}).dim() == 1);
    CHECK(span_of_products({Mat(2, 2)}, {Mat::identity(2)}).dim() == 0);
    std::vector<Mat> units;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat e(2, 2);
            e(i, j) = Scalar(1);
            units.push_back(e);
        }
    CHECK(span_of_products(units, units).dim() == 4);
}

TEST_CASE("kernel vectors are annihilated and ranks add up") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        uint32_t p = t % 3 == 0 ? 5 : 0;
        Mat a = random_mat(rng, 1 + t % 6, 1 + (t * 7) % 8, p);
        Subspace k = kernel(a);
        CHECK(rank(a) + k.dim() == a.cols());
        for (const auto& v : k.basis()) CHECK(is_zero(a * v));
    }
}

TEST_CASE("serial and parallel eliminations agree with the sparse engine") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        uint32_t p = t % 4 == 0 ? 3 : 0;
        Mat a = random_mat(rng, 9, 7, p);
        Rref s = rref(a, Exec::serial), q = rref(a, Exec::parallel);
        CHECK(s.rows == q.rows);
        CHECK(s.pivots == q.pivots);
        Subspace sp(7, Exec::serial);
        for (int i = 0; i < a.rows(); ++i) sp.insert(a.row(i));
        CHECK(sp.pivots() == s.pivots);
        CHECK(sp.basis_matrix() == s.rows);
    }
}

TEST_CASE("canonical subspaces do not depend on row order") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Mat a = random_mat(rng, 5, 6);
        std::vector<Vec> rows;
        for (int i = 0; i < 5; ++i) rows.push_back(a.row(i));
        Subspace x = Subspace::span(6, rows);
        std::reverse(rows.begin(), rows.end());
        Subspace y = Subspace::span(6, rows);
        CHECK(x == y);
        for (const auto& r : rows) {
            auto c = x.coords(r);
            REQUIRE(c.has_value());
            CHECK(vec_equal(x.combine(*c), r));
        }
    }
}

TEST_CASE("intersection and inverse") {
    Subspace a = Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
    Subspace b = Subspace::span(3, {vec({0, 1, 0}), vec({0, 0, 1})});
    Subspace i = a.intersect(b);
    CHECK(i.dim() == 1);
    CHECK(i.contains(vec({0, 1, 0})));
    auto inv = inverse(mat({{2, 1}, {1, 1}}));
    REQUIRE(inv.has_value());
    CHECK(*inv == mat({{1, -1}, {-1, 2}}));
    CHECK_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());
}
