// one line per acceptance criterion; exit status 1 if any fails
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "d2/gallery.hpp"
#include "d2/morita.hpp"
#include "d2/quantum.hpp"

using namespace d2;

namespace {

struct Outcome {
    std::vector<std::string> failures;
    std::string note;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void all(const std::vector<AxiomResult>& rs, const std::string& prefix) {
        for (const auto& r : rs)
            if (!r.ok) failures.push_back(prefix + r.name + " at " + r.where);
    }
};

struct D2 {
    Extension e;
    Chain c;
    Profile p;
    explicit D2(Extension x) : e(std::move(x)), c(build_chain(e)), p(classify(e, c)) {}
    bool both() const { return p.left_qb && p.right_qb; }
    ABialgebroid a() const { return bialgebroid_A(e, c, *p.left_qb, *p.right_qb); }
    BBialgebroid b() const { return bialgebroid_B(e, c, *p.left_qb); }
};

bool end_right_is_m(const Extension& e) {
    HomSpace endr = end_right(e);
    if (endr.dim() != e.m.dim()) return false;
    for (int k = 0; k < e.m.dim(); ++k)
        if (!endr.flat.contains(e.m.lmul_basis(k).flatten())) return false;
    return true;
}

void upper_triangular(Outcome& o) {
    D2 x(gallery_extension("upper_triangular_in_M2"));
    const Profile& p = x.p;
    o.expect(p.dim_r == 1, "dim R = 1");
    o.expect(p.h_separable && p.h_separable_unit, "H-separable with 1 (x) 1");
    o.expect(p.left_d2 && p.right_d2, "D2 both sides");
    o.expect(p.dim_a == 1 && rank(x.c.lambda_r) == 1, "A ~ R, dim 1");
    o.expect(end_right(x.e).dim() == 4 && end_right_is_m(x.e), "End M_N ~ M, dim 4");
    if (x.both()) {
        InvariantsA inv = invariants_A(x.e, x.a());
        o.expect(inv.by_counit.dim() == 4 && !inv.equals_n, "M^A = M != N");
    }
    o.expect(!p.balanced, "not balanced");
    FrobeniusSystemSearch fs = find_frobenius_system(x.e);
    o.expect(!fs.system && fs.certified_none, "Frobenius system certified none");
    o.expect(!p.left_qf && !p.right_qf, "not QF");
}

void lu_recovery(Outcome& o) {
    D2 x(gallery_extension("scalars_in_M2"));
    if (!x.both()) {
        o.expect(false, "D2 both sides");
        return;
    }
    ABialgebroid a = x.a();
    BBialgebroid b = x.b();
    o.expect(a.bg.dim() == 16 && end_right(x.e).dim() == 16, "dim A = dim End_Q M = 16");
    o.expect(b.bg.dim() == 16, "dim B = 16");
    o.all(verify_axioms(a.bg).results, "A: ");
    o.all(verify_axioms(b.bg).results, "B: ");
    o.expect(a.lu_ok, "Lu bialgebroid");
    PairingReport pr = duality_pairing_check(x.e, x.c, a, b);
    o.expect(pr.eta_rank == 16, "Gram rank 16");
    o.all(pr.eta, "");
    o.all(pr.psi, "");
    o.expect(smash_end_iso(x.e, a).ok(), "M x A ~ End M_N");
}

void group_pipeline(Outcome& o) {
    D2 x(gallery_extension("kC2_in_kC4"));
    const Profile& p = x.p;
    if (!x.both()) {
        o.expect(false, "D2 both sides");
        return;
    }
    o.expect(check_quasibasis(x.e, x.c, *p.left_qb).empty() && check_quasibasis(x.e, x.c, *p.right_qb).empty(),
             "quasibases verify");
    o.expect(p.dim_r == 4 && p.dim_a == 8 && p.dim_b == 8, "dims R, A, B = 4, 8, 8");
    MoritaContext ctx = build_context(x.e, x.c, &*p.left_qb);
    o.expect(ctx.ok(), "Morita context");
    o.expect(ctx.maps.size() == 6, "six context isomorphisms");
    int inverses = 0;
    for (const auto& m : ctx.maps) {
        o.expect(m.ok(), m.name);
        // tau, iota and psi come with explicit inverses
        if (m.name.rfind("tau", 0) == 0 || m.name.rfind("iota", 0) == 0 || m.name.rfind("psi", 0) == 0)
            inverses += m.inverse_ok.value_or(false);
    }
    o.expect(inverses == 3, "stated inverses of tau, iota, psi");
    FrobeniusSystemSearch fs = find_frobenius_system(x.e);
    if (!fs.system) {
        o.expect(false, "Frobenius system");
        return;
    }
    Tower t = build_tower(x.e, *fs.system);
    o.all(verify_tower(x.e, t), "tower: ");
    TowerMaps maps = tower_maps(x.e, x.c, t);
    o.all(maps.checks, "maps: ");
    ABialgebroid a = x.a();
    D2FrobeniusReport d = d2_frobenius_props(x.e, x.c, t, maps, *p.left_qb, a);
    o.all(d.checks, "");
    o.expect(d.m1_left_d2 && d.m1_right_d2, "M_1 | M is D2");
    o.expect(p.split && p.separable && p.balanced, "split, separable, balanced");
    o.expect(p.left_qf && p.right_qf && p.left_d3 && p.right_d3, "QF and depth three");
    o.expect(invariants_A(x.e, a).equals_n, "M^A = N");
}

void weak_hopf(Outcome& o) {
    D2 x(gallery_extension("scalars_in_QxQ"));
    if (!x.both()) {
        o.expect(false, "D2 both sides");
        return;
    }
    IndexOneResult io = index_one_coordinates(x.c.r.alg);
    const Field& f = x.e.field();
    o.expect(io.coords && io.method == "sum functional" && vec_equal(io.coords->phi, Vec{f.one(), f.one()}),
             "index one coordinates are the sum functional");
    FrobeniusSystemSearch fs = find_frobenius_system(x.e);
    if (!fs.system) {
        o.expect(false, "Frobenius system");
        return;
    }
    ABialgebroid a = x.a();
    BBialgebroid b = x.b();
    WeakHopfReport w = weak_hopf_verify(x.e, x.c, *fs.system, *x.p.left_qb, a, b);
    o.expect(!w.refused(), "weak Hopf: " + w.refusal);
    if (w.refused()) return;
    o.expect(vec_equal(w.r_coords.phi, Vec{f.one(), f.one()}), "lift uses the sum functional");
    o.all(w.checks, "");
    o.all(verify_weak_bialgebra(w.a), "A: ");
    o.all(verify_weak_bialgebra(w.b), "B: ");
    o.expect(w.a.genuinely_weak(), "Delta(1) != 1 (x) 1");
    o.expect(w.s_a && w.s_b && w.s_a_kernel == 0 && w.s_b_kernel == 0, "unique antipodes");
    if (w.s_a) o.all(antipode_axioms(w.a, *w.s_a), "S_A: ");
    if (w.s_b) o.all(antipode_axioms(w.b, *w.s_b), "S_B: ");
    o.expect(w.s_squared_identity, "S^2 = id");
    SeparabilityReport sr = split_separable_criteria(x.e, x.c, *fs.system, x.p, w);
    o.all(sr.checks, "");
    o.expect(sr.split == sr.left_integral_a.has_value(), "split <=> normalized left integral in A");
    o.expect(sr.separable == sr.right_integral_b.has_value(), "separable <=> normalized right integral in B");
}

// 2x2 matrices over F_2 as row-major arrays
using M2 = std::array<int, 4>;
M2 mul(const M2& x, const M2& y) {
    return {(x[0] * y[0] + x[1] * y[2]) % 2, (x[0] * y[1] + x[1] * y[3]) % 2, (x[2] * y[0] + x[3] * y[2]) % 2,
            (x[2] * y[1] + x[3] * y[3]) % 2};
}

void char_two(Outcome& o) {
    const M2 e11{1, 0, 0, 0}, e12{0, 1, 0, 0}, e21{0, 0, 1, 0}, e22{0, 0, 0, 1};
    const std::array<M2, 6> e{e11, e12, e12, e22, e22, e21}, f{e21, e11, e21, e12, e22, e22};
    auto phi = [](const M2& x) { return (x[0] + x[1] + x[2]) % 2; };
    M2 sum{0, 0, 0, 0};
    for (int i = 0; i < 6; ++i) {
        M2 p = mul(e[i], f[i]);
        for (int k = 0; k < 4; ++k) sum[k] = (sum[k] + p[k]) % 2;
    }
    o.expect(sum == M2{1, 0, 0, 1}, "sum e_i f_i = 1");
    // x = sum phi(x e_i) f_i = sum e_i phi(f_i x) on all 16 matrices
    for (int bits = 0; bits < 16; ++bits) {
        M2 x{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1}, l{0, 0, 0, 0}, r{0, 0, 0, 0};
        for (int i = 0; i < 6; ++i) {
            int a = phi(mul(x, e[i])), b = phi(mul(f[i], x));
            for (int k = 0; k < 4; ++k) {
                l[k] = (l[k] + a * f[i][k]) % 2;
                r[k] = (r[k] + b * e[i][k]) % 2;
            }
        }
        o.expect(l == x, "x = sum phi(x e_i) f_i");
        o.expect(r == x, "x = sum e_i phi(f_i x)");
    }
    Algebra m2 = Algebra::matrix(Field{2}, 2);
    FrobeniusCoordinates c = m2_f2_coordinates(m2);
    o.expect(check_frobenius(m2, c).empty(), "library check of the coordinates");
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 4; ++k) {
            o.expect(c.e[i][k] == Scalar(e[i][k]).in_field(2), "library e_i");
            o.expect(c.f[i][k] == Scalar(f[i][k]).in_field(2), "library f_i");
        }
}

void cross_oracles(Outcome& o) {
    std::vector<std::pair<std::string, Extension>> cases;
    for (const auto& g : gallery()) cases.emplace_back(g.name, gallery_extension(g.name));
    for (uint64_t s = 1; s <= 20; ++s) cases.emplace_back("random " + std::to_string(s), random_extension(1000 + s, 6));
    int d2_count = 0, forms = 0;
    uint64_t st = 2024;
    for (const auto& [name, e] : cases) {
        D2 x(e);
        const Profile& p = x.p;
        const std::string at = name + ": ";
        o.expect(p.left_d2 == d2_by_summand(x.e, x.c, true), at + "left D2 formulations");
        o.expect(p.right_d2 == d2_by_summand(x.e, x.c, false), at + "right D2 formulations");
        o.expect(!p.h_separable || (p.left_d2 && p.right_d2), at + "H-separable => D2");
        o.expect(!p.centrally_projective || (p.left_d2 && p.right_d2), at + "centrally projective => D2");
        o.expect(!p.left_d2 || p.left_d3, at + "left D2 => left depth three");
        o.expect(!p.right_d2 || p.right_d3, at + "right D2 => right depth three");
        QfReport q = qf_instance_check(p);
        o.all(q.checks, at);
        if (x.both()) {
            ++d2_count;
            ABialgebroid a = x.a();
            o.expect(a.coproducts_agree, at + "coproduct formulas");
            if (auto rd = right_dual(a.bg)) o.all(right_dual_relations(a.bg, *rd), at + "A*: ");
            else o.expect(false, at + "A* exists");
            if (auto ld = left_dual(a.bg)) o.all(left_dual_relations(a.bg, *ld), at + "*A: ");
            else o.expect(false, at + "*A exists");
        }
        for (const Algebra* alg : {&x.e.n, &x.e.m})
            for (int k = 0; k < 50; ++k) {
                Vec phi = random_element(alg->field(), alg->dim(), st, k % 2 ? 1 : 3);
                NondegeneracyFlags fl = nondegenerate_form_check(*alg, phi);
                o.expect(fl.left == fl.right, at + "nondegeneracy flags");
                ++forms;
            }
    }
    std::ostringstream s;
    s << cases.size() << " extensions, " << d2_count << " D2 both sides, " << forms << " forms";
    o.note = s.str();
}

void negative_controls(Outcome& o) {
    D2 x(gallery_extension("kC2_in_kC4"));
    if (x.both()) {
        Bialgebroid bad = x.a().bg;
        bad.delta(0, 3) += Scalar(1);
        AxiomReport rep = verify_axioms(bad);
        const AxiomResult& co = rep["ii/1: coassociativity"];
        o.expect(!co.ok && !co.where.empty(), "perturbed Delta fails coassociativity with a location");
        if (!co.ok) o.note = "coassociativity fails at " + co.where;
    } else {
        o.expect(false, "kC2 in kC4 is D2");
    }
    Extension nd = gallery_extension("random_non_d2");
    Chain c = build_chain(nd);
    o.expect(!d2_quasibasis(nd, c, true) && !d2_quasibasis(nd, c, false), "no quasibasis on either side");
    o.expect(!build_context(nd, c, nullptr).mu_surjective, "mu_R not surjective");
}

struct Criterion {
    int id;
    const char* what;
    double limit_ms;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> all{
        {1, "upper triangular counterexample", 1000, upper_triangular},
        {2, "Lu recovery for Q in M_2(Q)", 5000, lu_recovery},
        {3, "group algebra pipeline Q[C_2] in Q[C_4]", 10000, group_pipeline},
        {4, "weak Hopf pipeline Q in Q x Q", 10000, weak_hopf},
        {5, "char 2 index one coordinates on M_2(F_2)", 1000, char_two},
        {6, "cross-oracle invariants", 60000, cross_oracles},
        {7, "negative controls", 5000, negative_controls},
    };
    int failed = 0;
    for (const auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& ex) {
            o.failures.push_back(std::string("exception: ") + ex.what());
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        bool ok = o.failures.empty() && ms < c.limit_ms;
        failed += !ok;
        std::printf("criterion %d %s: %s (%.0f ms, limit %.0f ms)", c.id, c.what, ok ? "PASS" : "FAIL", ms, c.limit_ms);
        if (!o.note.empty()) std::printf(" %s", o.note.c_str());
        std::printf("\n");
        for (size_t i = 0; i < o.failures.size() && i < 10; ++i) std::printf("    %s\n", o.failures[i].c_str());
        if (ms >= c.limit_ms) std::printf("    over the time limit\n");
    }
    return failed ? 1 : 0;
}
