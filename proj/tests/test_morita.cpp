#include "doctest.h"

#include "d2/gallery.hpp"
#include "d2/morita.hpp"

using namespace d2;

namespace {

struct Ctx {
    Extension e;
    Chain c;
    std::optional<Quasibasis> left, right;
    MoritaContext m;
    explicit Ctx(Extension x)
        : e(std::move(x)),
          c(build_chain(e)),
          left(d2_quasibasis(e, c, true)),
          right(d2_quasibasis(e, c, false)),
          m(build_context(e, c, left ? &*left : nullptr)) {}
};

const MapCheck& find(const std::vector<MapCheck>& v, const std::string& prefix) {
    for (const auto& m : v)
        if (m.name.rfind(prefix, 0) == 0) return m;
    FAIL("no map " << prefix);
    return v.front();
}

}  // namespace

TEST_CASE("context dimensions") {
    // M_2 over K: M (x) M is eight copies of the simple right module, so C = M_8(K)
    Ctx s(gallery_extension("scalars_in_M2"));
    CHECK(s.m.c.dim() == 64);
    CHECK(s.m.b_a.dim() == 64);
    // kC4 is free of rank two over kC2 and commutative, so C = M_2(kC4)
    Ctx g(gallery_extension("kC2_in_kC4"));
    CHECK(g.c.b.dim() == 8);
    CHECK(g.c.a.alg.dim() == 8);
    CHECK(g.c.r.alg.dim() == 4);
    CHECK(g.m.c.dim() == 16);
    CHECK(g.m.mu_surjective);
    Ctx u(gallery_extension("upper_triangular_in_M2"));
    CHECK(u.m.c.dim() == 1);
    CHECK(u.m.b_a.dim() == 1);
}

TEST_CASE("N = M gives the trivial context") {
    Algebra m = symmetric_group_algebra3(Field{});
    Ctx x(make_extension(m, m, Mat::identity(m.dim()), "N=M"));
    CHECK(x.c.a.alg.dim() == x.c.r.alg.dim());
    CHECK(x.m.c.dim() == x.c.r.alg.dim());
    CHECK(x.m.ok());
}

TEST_CASE("stated inverses hold on depth two examples") {
    for (std::string name : {"trivial", "upper_triangular_in_M2", "upper_triangular_in_M2_F2", "scalars_in_QxQ",
                             "kC2_in_kC4", "kC3_in_kS3", "centrally_projective"}) {
        CAPTURE(name);
        Ctx x(gallery_extension(name));
        REQUIRE(x.left);
        for (const auto& f : x.m.failures) CAPTURE(f);
        CHECK(x.m.failures.empty());
        for (const auto& mc : x.m.maps) {
            CAPTURE(mc.name);
            CAPTURE(mc.failure);
            CHECK(mc.ok());
            CHECK(mc.bijective);
        }
        CHECK(find(x.m.maps, "tau").inverse_ok == true);
        CHECK(find(x.m.maps, "iota").inverse_ok == true);
        CHECK(find(x.m.maps, "psi").inverse_ok == true);
        auto p = progenerator_checks(x.e, x.c, *x.left);
        CHECK(p.ok());
        REQUIRE(x.right);
        for (const auto& mc : right_side_duals(x.e, x.c, *x.right)) {
            CAPTURE(mc.name);
            CAPTURE(mc.failure);
            CHECK(mc.ok());
            CHECK(mc.bijective);
        }
    }
}

TEST_CASE("mu_R is onto exactly for left depth two") {
    for (const auto& item : gallery()) {
        CAPTURE(item.name);
        Extension e = gallery_extension(item.name);
        if (e.m.dim() > 6) continue;
        Ctx x(std::move(e));
        CHECK(x.m.mu_surjective == x.left.has_value());
    }
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        CAPTURE(seed);
        Ctx x(random_extension(seed));
        CHECK(x.m.mu_surjective == x.left.has_value());
    }
}

TEST_CASE("the non depth two example") {
    Ctx x(gallery_extension("random_non_d2"));
    CHECK_FALSE(x.left);
    CHECK_FALSE(x.m.mu_surjective);
    CHECK(x.m.failures.empty());
    CHECK(rank(x.m.mu_r) < x.m.c.dim());
}
