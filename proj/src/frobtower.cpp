#include "d2/frobtower.hpp"

#include <stdexcept>

namespace d2 {

namespace {

std::string at(const std::string& k, int v) { return k + "=" + std::to_string(v); }
std::string at(const std::string& k, int v, const std::string& k2, int v2) { return at(k, v) + ", " + at(k2, v2); }

Vec need(const std::optional<Vec>& v, const std::string& what) {
    if (!v) throw std::logic_error(what);
    return *v;
}

// records the first failing location of a named check
struct Checks {
    std::vector<AxiomResult> out;
    int open(std::string name) {
        out.push_back({std::move(name), true, ""});
        return static_cast<int>(out.size()) - 1;
    }
    void fail(int k, std::string where) {
        if (out[k].ok) {
            out[k].ok = false;
            out[k].where = std::move(where);
        }
    }
    void expect(int k, bool cond, const std::string& where) {
        if (!cond) fail(k, where);
    }
    void add(std::string name, const std::string& failure) { out.push_back({std::move(name), failure.empty(), failure}); }
};

bool all_ok(const std::vector<AxiomResult>& v) {
    for (const auto& r : v)
        if (!r.ok) return false;
    return true;
}

// i(E(x)) as a map M -> M
Mat e_in_m(const Extension& ext, const Mat& e) { return ext.iota * e; }

Bimodule dual_space_module(const Extension& ext) { return m_module(ext, Side::K, Side::N); }

bool bijective(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

// ---------------------------------------------------------------- Frobenius systems

std::string check_frobenius_system(const Extension& ext, const FrobeniusSystem& s) {
    const Algebra& m = ext.m;
    const Algebra& n = ext.n;
    const int dm = m.dim();
    if (s.e.rows() != n.dim() || s.e.cols() != dm) return "E has wrong shape";
    if (s.x.size() != s.y.size()) return "dual bases of different lengths";
    for (int k = 0; k < n.dim(); ++k) {
        Vec ik = ext.image(n.basis(k));
        for (int j = 0; j < dm; ++j) {
            if (!vec_equal(s.e * m.mul(ik, m.basis(j)), n.mul(n.basis(k), s.e * m.basis(j))))
                return "E not left N-linear at " + at("n", k, "m", j);
            if (!vec_equal(s.e * m.mul(m.basis(j), ik), n.mul(s.e * m.basis(j), n.basis(k))))
                return "E not right N-linear at " + at("n", k, "m", j);
        }
    }
    Mat ei = e_in_m(ext, s.e);
    for (int j = 0; j < dm; ++j) {
        Vec mj = m.basis(j), l(dm), r(dm);
        for (int i = 0; i < s.size(); ++i) {
            l = l + m.mul(s.x[i], ei * m.mul(s.y[i], mj));
            r = r + m.mul(ei * m.mul(mj, s.x[i]), s.y[i]);
        }
        if (!vec_equal(l, mj)) return "sum x_i E(y_i m) != m at " + at("m", j);
        if (!vec_equal(r, mj)) return "sum E(m x_i) y_i != m at " + at("m", j);
    }
    return "";
}

std::optional<FrobeniusSystem> system_from_hom(const Extension& ext, const Mat& e) {
    const Algebra& m = ext.m;
    const int dm = m.dim();
    HomSpace dual = hom_bimodule(dual_space_module(ext), n_module(ext, Side::K, Side::N));
    if (dual.dim() != dm) return std::nullopt;
    Mat phi(dm, dm);
    for (int j = 0; j < dm; ++j) {
        auto c = dual.coords(e * m.lmul_basis(j));
        if (!c) return std::nullopt;
        phi.set_col(j, *c);
    }
    auto phi_inv = inverse(phi);
    if (!phi_inv) return std::nullopt;
    // m = sum_k x_k g_k(m) with g_k in Hom(M_N, N_N)
    auto w = similar_summand(n_module(ext, Side::K, Side::N), dual_space_module(ext));
    if (!w) return std::nullopt;
    FrobeniusSystem s;
    s.e = e;
    for (size_t k = 0; k < w->f.size(); ++k) {
        auto gk = dual.coords(w->g[k]);
        if (!gk) return std::nullopt;
        s.x.push_back(w->f[k] * ext.n.unit());
        s.y.push_back(*phi_inv * *gk);
    }
    if (!check_frobenius_system(ext, s).empty()) return std::nullopt;
    return s;
}

FrobeniusSystemSearch find_frobenius_system(const Extension& ext, uint64_t seed) {
    FrobeniusSystemSearch res;
    const Field& f = ext.field();
    HomSpace homs = hom_bimodule(m_module(ext, Side::N, Side::N), n_module(ext, Side::N, Side::N));
    auto combo = [&](const Vec& c) {
        Mat e(ext.n.dim(), ext.m.dim());
        for (int k = 0; k < homs.dim(); ++k)
            if (!c[k].is_zero()) e += c[k] * homs.basis[k];
        return e;
    };
    std::vector<Vec> cands;
    for (int k = 0; k < homs.dim(); ++k) cands.push_back(unit_vec(homs.dim(), k));
    if (homs.dim() > 0) cands.push_back(Vec(homs.dim(), f.one()));
    uint64_t st = seed;
    for (int t = 0; t < 64 && homs.dim() > 0; ++t) cands.push_back(random_element(f, homs.dim(), st));
    for (const auto& c : cands) {
        if (auto s = system_from_hom(ext, combo(c))) {
            res.system = std::move(s);
            return res;
        }
    }
    // M|N is Frobenius iff M ~ Hom(M_N, N_N) as N-M-bimodules
    Bimodule mm = m_module(ext, Side::N, Side::M);
    Bimodule dual = right_dual_module(ext);
    IsoResult iso = isomorphic(mm, dual, seed);
    if (iso.decision == Decision::yes) {
        HomSpace h = hom_bimodule(dual_space_module(ext), n_module(ext, Side::K, Side::N));
        Vec c = *iso.iso * ext.m.unit();
        Mat e(ext.n.dim(), ext.m.dim());
        for (int k = 0; k < h.dim(); ++k)
            if (!c[k].is_zero()) e += c[k] * h.basis[k];
        if (auto s = system_from_hom(ext, e)) {
            res.system = std::move(s);
            return res;
        }
        res.note = "isomorphism found but no system recovered";
        return res;
    }
    res.certified_none = iso.decision == Decision::no;
    res.note = iso.decision == Decision::no ? "M not isomorphic to Hom(M_N, N_N): " + iso.reason : "undetermined";
    return res;
}

// ---------------------------------------------------------------- the tower

Tower build_tower(const Extension& ext, const FrobeniusSystem& sys) {
    const Algebra& m = ext.m;
    const Field& f = ext.field();
    const int dm = m.dim();
    Tower t;
    t.sys = sys;
    t.t2 = tensor_square(ext);
    t.t3 = tensor_cube(ext, t.t2);
    const TensorQuotient& t2 = t.t2;
    const TensorQuotient& t3 = t.t3;
    const Vec one = m.unit();
    Mat ei = e_in_m(ext, sys.e);

    // (a (x) b)(a' (x) b') = a E(b a') (x) b'
    Vec u1(t2.dim());
    for (int i = 0; i < sys.size(); ++i) t2.add_pure(u1, f.one(), sys.x[i], sys.y[i]);
    t.m1 = Algebra::from_products(
        f, t2.dim(), u1,
        [&](int p, int q) {
            auto [a, b] = t2.section(p);
            auto [a2, b2] = t2.section(q);
            Vec mid = ei * to_dense(m.basis_product(b, a2), dm);
            return t2.pure(m.mul(m.basis(a), mid), m.basis(b2));
        },
        "M_1", false);

    // (a (x) b (x) c)(a' (x) b' (x) c') = a (x) b E(c a') b' (x) c'
    Vec u2(t3.dim());
    for (int i = 0; i < sys.size(); ++i) t3.add_pure(u2, f.one(), t2.pure(sys.x[i], one), sys.y[i]);
    t.m2 = Algebra::from_products(
        f, t3.dim(), u2,
        [&](int p, int q) {
            auto [ab, c] = t3.section(p);
            auto [ab2, c2] = t3.section(q);
            auto [a, b] = t2.section(ab);
            auto [a2, b2] = t2.section(ab2);
            Vec mid = m.mul(m.mul(m.basis(b), ei * to_dense(m.basis_product(c, a2), dm)), m.basis(b2));
            return t3.pure(t2.pure(m.basis(a), mid), m.basis(c2));
        },
        "M_2", false);

    t.m_to_m1 = Mat(t2.dim(), dm);
    for (int j = 0; j < dm; ++j) {
        Vec col(t2.dim());
        for (int i = 0; i < sys.size(); ++i) t2.add_pure(col, f.one(), m.mul(m.basis(j), sys.x[i]), sys.y[i]);
        t.m_to_m1.set_col(j, col);
    }
    // a (x) b -> a (x) 1 (x) b
    t.m1_to_m2 = Mat(t3.dim(), t2.dim());
    for (int q = 0; q < t2.dim(); ++q) {
        auto [a, b] = t2.section(q);
        t.m1_to_m2.set_col(q, t3.pure(t2.pure(m.basis(a), one), m.basis(b)));
    }
    t.m_to_m2 = t.m1_to_m2 * t.m_to_m1;

    t.e_m = multiplication_map(ext, t2);
    // a (x) b (x) c -> a E(b) (x) c
    t.e_m1 = Mat(t2.dim(), t3.dim());
    for (int q = 0; q < t3.dim(); ++q) {
        auto [ab, c] = t3.section(q);
        auto [a, b] = t2.section(ab);
        t.e_m1.set_col(q, t2.pure(m.mul(m.basis(a), ei * m.basis(b)), m.basis(c)));
    }
    t.e1 = t2.pure(one, one);
    t.e2 = Vec(t3.dim());
    for (int i = 0; i < sys.size(); ++i)
        for (int j = 0; j < sys.size(); ++j)
            t3.add_pure(t.e2, f.one(), t2.pure(sys.x[i], m.mul(sys.y[i], sys.x[j])), sys.y[j]);

    t.a_hat = centralizer(Extension{ext.n, t.m1, t.m_to_m1 * ext.iota, "N -> M_1"});
    t.b_hat = centralizer(Extension{ext.m, t.m2, t.m_to_m2, "M -> M_2"});
    t.c_hat = centralizer(Extension{ext.n, t.m2, t.m_to_m2 * ext.iota, "N -> M_2"});
    return t;
}

std::vector<AxiomResult> verify_tower(const Extension& ext, const Tower& t) {
    const Algebra& m = ext.m;
    const Algebra& m1 = t.m1;
    const Algebra& m2 = t.m2;
    const int dm = m.dim(), d1 = m1.dim(), d2 = m2.dim();
    const FrobeniusSystem& s = t.sys;
    Checks c;
    c.add("M_1 associative and unital", m1.check_laws());
    c.add("M_2 associative and unital", m2.check_laws());
    c.add("M -> M_1 algebra map", check_algebra_map(m, m1, t.m_to_m1));
    c.add("M_1 -> M_2 algebra map", check_algebra_map(m1, m2, t.m1_to_m2));

    const Vec e1 = t.e1, e1u = t.e1_in_m2(), e2 = t.e2;
    auto em = [&](const Vec& x) { return t.e_m * x; };
    auto em1 = [&](const Vec& x) { return t.e_m1 * x; };
    Mat ei = e_in_m(ext, s.e);

    int k1 = c.open("e_1 m e_1 = e_1 E(m) = E(m) e_1");
    int k2 = c.open("E_M(m e_1 m') = m m'");
    int k3 = c.open("E_M is an M-M bimodule map");
    for (int j = 0; j < dm; ++j) {
        Vec mj = t.in_m1(m.basis(j)), ej = t.in_m1(ei * m.basis(j));
        Vec lhs = m1.mul(m1.mul(e1, mj), e1);
        if (!vec_equal(lhs, m1.mul(e1, ej)) || !vec_equal(lhs, m1.mul(ej, e1))) c.fail(k1, at("m", j));
        for (int l = 0; l < dm; ++l) {
            Vec ml = t.in_m1(m.basis(l));
            c.expect(k2, vec_equal(em(m1.mul(m1.mul(mj, e1), ml)), to_dense(m.basis_product(j, l), dm)), at("m", j, "m'", l));
        }
        for (int q = 0; q < d1; ++q) {
            Vec x = m1.basis(q);
            bool ok = vec_equal(em(m1.mul(mj, x)), m.mul(m.basis(j), em(x))) &&
                      vec_equal(em(m1.mul(x, mj)), m.mul(em(x), m.basis(j)));
            c.expect(k3, ok, at("m", j, "x", q));
        }
    }

    int k4 = c.open("x_i e_1, e_1 y_i dual bases for E_M");
    int k5 = c.open("e_2 m_1 e_2 = e_2 E_M(m_1) = E_M(m_1) e_2");
    int k6 = c.open("Pimsner-Popa m_1 e_1 = E_M(m_1 e_1) e_1, e_1 m_1 = e_1 E_M(e_1 m_1)");
    int k7 = c.open("E_{M_1} is an M_1-M_1 bimodule map");
    std::vector<Vec> xe, ey;
    for (int i = 0; i < s.size(); ++i) {
        xe.push_back(m1.mul(t.in_m1(s.x[i]), e1));
        ey.push_back(m1.mul(e1, t.in_m1(s.y[i])));
    }
    for (int q = 0; q < d1; ++q) {
        Vec x = m1.basis(q);
        Vec l(d1), r(d1);
        for (int i = 0; i < s.size(); ++i) {
            l = l + m1.mul(xe[i], t.in_m1(em(m1.mul(ey[i], x))));
            r = r + m1.mul(t.in_m1(em(m1.mul(x, xe[i]))), ey[i]);
        }
        c.expect(k4, vec_equal(l, x) && vec_equal(r, x), at("m_1", q));
        Vec xl = t.lift(x), emx = t.in_m2(em(x));
        Vec lhs = m2.mul(m2.mul(e2, xl), e2);
        c.expect(k5, vec_equal(lhs, m2.mul(e2, emx)) && vec_equal(lhs, m2.mul(emx, e2)), at("m_1", q));
        Vec xe1 = m1.mul(x, e1), e1x = m1.mul(e1, x);
        bool pp = vec_equal(xe1, m1.mul(t.in_m1(em(xe1)), e1)) && vec_equal(e1x, m1.mul(e1, t.in_m1(em(e1x))));
        c.expect(k6, pp, at("m_1", q));
        for (int z = 0; z < d2; z += 1) {
            Vec y = m2.basis(z);
            bool ok = vec_equal(em1(m2.mul(xl, y)), m1.mul(x, em1(y))) && vec_equal(em1(m2.mul(y, xl)), m1.mul(em1(y), x));
            if (!ok) {
                c.fail(k7, at("m_1", q, "m_2", z));
                break;
            }
        }
    }

    int k8 = c.open("E_{M_1}(m_1 e_2 m_1') = m_1 m_1'");
    for (int p = 0; p < d1; ++p) {
        Vec xe2 = m2.mul(t.lift(m1.basis(p)), e2);
        for (int q = 0; q < d1; ++q)
            c.expect(k8, vec_equal(em1(m2.mul(xe2, t.lift(m1.basis(q)))), to_dense(m1.basis_product(p, q), d1)),
                     at("m_1", p, "m_1'", q));
    }
    c.add("Temperley-Lieb e_1 e_2 e_1 = e_1", vec_equal(m2.mul(m2.mul(e1u, e2), e1u), e1u) ? "" : "e_1 e_2 e_1");
    c.add("Temperley-Lieb e_2 e_1 e_2 = e_2", vec_equal(m2.mul(m2.mul(e2, e1u), e2), e2) ? "" : "e_2 e_1 e_2");
    int k9 = c.open("Pimsner-Popa m_2 e_2 = E_{M_1}(m_2 e_2) e_2, e_2 m_2 = e_2 E_{M_1}(e_2 m_2)");
    for (int z = 0; z < d2; ++z) {
        Vec y = m2.basis(z);
        Vec ye = m2.mul(y, e2), ey2 = m2.mul(e2, y);
        bool ok = vec_equal(ye, m2.mul(t.lift(em1(ye)), e2)) && vec_equal(ey2, m2.mul(e2, t.lift(em1(ey2))));
        c.expect(k9, ok, at("m_2", z));
    }
    return c.out;
}

// ---------------------------------------------------------------- the maps

bool TowerMaps::ok() const { return all_ok(checks); }

TowerMaps tower_maps(const Extension& ext, const Chain& ch, const Tower& t) {
    const Algebra& m = ext.m;
    const TensorQuotient& t2 = t.t2;
    const int dm = m.dim(), d1 = t.m1.dim();
    const FrobeniusSystem& s = t.sys;
    const Scalar one = ext.field().one();
    Mat ei = e_in_m(ext, s.e);
    TowerMaps out;
    out.end_right = matrix_algebra(end_right(ext).flat, dm, "End M_N");
    out.end_left = matrix_algebra(end_left(ext).flat, dm, "End_N M");
    Checks c;

    auto f_of = [&](const Mat& g) {
        Vec v(d1);
        for (int i = 0; i < s.size(); ++i) t2.add_pure(v, one, g * s.x[i], s.y[i]);
        return v;
    };
    auto phi_of = [&](const Mat& g) {
        Vec v(d1);
        for (int i = 0; i < s.size(); ++i) t2.add_pure(v, one, s.x[i], g * s.y[i]);
        return v;
    };
    // m (x) m' -> lambda(m) E lambda(m'), and -> rho(m') E rho(m)
    auto f_inv = [&](const Vec& x) {
        Mat g(dm, dm);
        for (const auto& u : terms(t2, x)) g += u.c * (m.lmul_basis(u.v) * ei * m.lmul_basis(u.w));
        return g;
    };
    auto phi_inv = [&](const Vec& x) {
        Mat g(dm, dm);
        for (const auto& u : terms(t2, x)) g += u.c * (m.rmul_basis(u.w) * ei * m.rmul_basis(u.v));
        return g;
    };

    auto from_basis = [&](const std::vector<Mat>& basis, auto&& fn, int rows) {
        Mat out(rows, static_cast<int>(basis.size()));
        for (size_t k = 0; k < basis.size(); ++k) out.set_col(static_cast<int>(k), fn(basis[k]));
        return out;
    };
    out.f = from_basis(out.end_right.basis, f_of, d1);
    out.phi = from_basis(out.end_left.basis, phi_of, d1);
    out.psi_a = from_basis(ch.a.basis, f_of, d1);
    out.phi_a = from_basis(ch.a.basis, phi_of, d1);

    c.add("F: End M_N -> M_1 bijective", bijective(out.f) ? "" : "rank");
    c.add("F multiplicative", check_algebra_map(out.end_right.alg, t.m1, out.f));
    {
        int k = c.open("F inverse m (x) m' -> lambda(m) E lambda(m')");
        for (int q = 0; q < d1; ++q) c.expect(k, vec_equal(f_of(f_inv(t.m1.basis(q))), t.m1.basis(q)), at("m_1", q));
        for (size_t j = 0; j < out.end_right.basis.size(); ++j)
            c.expect(k, f_inv(out.f.col(static_cast<int>(j))) == out.end_right.basis[j], at("f", static_cast<int>(j)));
    }
    c.add("phi: End_N M -> M_1 bijective", bijective(out.phi) ? "" : "rank");
    c.add("phi anti-multiplicative", check_algebra_map(out.end_left.alg, t.m1, out.phi, true));
    {
        int k = c.open("phi inverse m (x) m' -> rho(m') E rho(m)");
        for (int q = 0; q < d1; ++q) c.expect(k, vec_equal(phi_of(phi_inv(t.m1.basis(q))), t.m1.basis(q)), at("m_1", q));
        for (size_t j = 0; j < out.end_left.basis.size(); ++j)
            c.expect(k, phi_inv(out.phi.col(static_cast<int>(j))) == out.end_left.basis[j], at("f", static_cast<int>(j)));
    }

    const int da = ch.a.alg.dim();
    auto onto_hat = [&](const Mat& mp, const Subspace& hat) {
        if (hat.dim() != mp.cols() || rank(mp) != mp.cols()) return std::string("not bijective onto the centralizer");
        for (int j = 0; j < mp.cols(); ++j)
            if (!hat.contains(mp.col(j))) return "outside the centralizer at " + at("k", j);
        return std::string();
    };
    c.add("psi_A: A -> M_1^N bijective", onto_hat(out.psi_a, t.a_hat));
    c.add("psi_A multiplicative", check_algebra_map(ch.a.alg, t.m1, out.psi_a));
    {
        int k = c.open("psi_A inverse a^1 e_1 a^2 -> lambda(a^1) E lambda(a^2)");
        for (int j = 0; j < da; ++j) c.expect(k, f_inv(out.psi_a.col(j)) == ch.a.basis[j], at("alpha", j));
        for (const auto& x : t.a_hat.basis()) {
            auto cc = ch.a.coords(f_inv(x));
            c.expect(k, cc && vec_equal(out.psi_a * *cc, x), "a^");
        }
    }
    {
        int k = c.open("E_M(psi_A(alpha) e_1) = eps_A(alpha)");
        for (int j = 0; j < da; ++j)
            c.expect(k, vec_equal(t.e_m * t.m1.mul(out.psi_a.col(j), t.e1), ch.a.basis[j] * m.unit()), at("alpha", j));
    }
    c.add("phi_A: A -> M_1^N bijective", onto_hat(out.phi_a, t.a_hat));
    c.add("phi_A anti-multiplicative", check_algebra_map(ch.a.alg, t.m1, out.phi_a, true));

    // B
    const Algebra& m2 = t.m2;
    const int db = ch.b.dim(), d2 = m2.dim();
    std::vector<Vec> bs = ch.b_space.basis();
    const Vec e1u = t.e1_in_m2(), e2 = t.e2;
    Vec e2e1 = m2.mul(e2, e1u), e1e2 = m2.mul(e1u, e2);
    out.psi_b = Mat(d2, db);
    out.phi_b = Mat(d2, db);
    for (int j = 0; j < db; ++j) {
        Vec pb(d2), fb(d2);
        for (const auto& u : terms(t2, bs[j]))
            for (int i = 0; i < s.size(); ++i) {
                // x_i b^1 e_1 b^2 e_2 e_1 y_i
                Vec left = t.lift(t2.pure(m.mul(s.x[i], m.basis(u.v)), m.basis(u.w)));
                pb = pb + u.c * m2.mul(m2.mul(left, e2e1), t.in_m2(s.y[i]));
                // x_i e_1 e_2 b^1 e_1 b^2 y_i
                Vec right = t.lift(t2.pure(m.basis(u.v), m.mul(m.basis(u.w), s.y[i])));
                fb = fb + u.c * m2.mul(m2.mul(t.in_m2(s.x[i]), e1e2), right);
            }
        out.psi_b.set_col(j, pb);
        out.phi_b.set_col(j, fb);
    }
    c.add("psi_B: B -> M_2^M bijective", onto_hat(out.psi_b, t.b_hat));
    c.add("psi_B multiplicative", check_algebra_map(ch.b, m2, out.psi_b));
    {
        // b^1 e_2 b^2 -> b^1 E_M(b^2 e_1), i.e. a (x) b (x) c -> a (x) b E(c)
        int k = c.open("psi_B inverse b^1 e_2 b^2 -> b^1 E_M(b^2 e_1)");
        auto inv = [&](const Vec& x) {
            Vec y(d1);
            for (int z = 0; z < d2; ++z) {
                if (x[z].is_zero()) continue;
                auto [ab, cc] = t.t3.section(z);
                auto [a, b] = t2.section(ab);
                t2.add_pure(y, x[z], m.basis(a), m.mul(m.basis(b), ei * m.basis(cc)));
            }
            return y;
        };
        for (int j = 0; j < db; ++j) c.expect(k, vec_equal(inv(out.psi_b.col(j)), bs[j]), at("b", j));
        for (const auto& x : t.b_hat.basis()) {
            auto cc = ch.b_coords(inv(x));
            c.expect(k, cc && vec_equal(out.psi_b * *cc, x), "b^");
        }
    }
    c.add("phi_B: B -> M_2^M bijective", onto_hat(out.phi_b, t.b_hat));
    c.add("phi_B anti-multiplicative", check_algebra_map(ch.b, m2, out.phi_b, true));
    out.checks = std::move(c.out);
    return out;
}

// ---------------------------------------------------------------- depth two Frobenius

bool D2FrobeniusReport::ok() const { return all_ok(checks); }

D2FrobeniusReport d2_frobenius_props(const Extension& ext, const Chain& ch, const Tower& t, const TowerMaps& maps,
                                     const Quasibasis& left, const ABialgebroid& a) {
    if (!left.left) throw std::invalid_argument("d2_frobenius_props: needs a left quasibasis");
    const Algebra& m = ext.m;
    const Algebra& m1 = t.m1;
    const int dm = m.dim(), d1 = m1.dim(), da = ch.a.alg.dim(), dr = ch.r.alg.dim();
    const Scalar one = ext.field().one();
    D2FrobeniusReport rep;
    Checks c;
    auto em = [&](const Vec& x) { return t.e_m * x; };

    // dual bases {b_i}, {sum_j beta_i(x_j) e_1 y_j} for E_M in M_1^N
    std::vector<Vec> bi, di;
    for (int i = 0; i < left.size(); ++i) {
        bi.push_back(left.b[i]);
        di.push_back(maps.psi_a * need(ch.a.coords(left.beta[i]), "beta outside A"));
    }
    {
        int k = c.open("E_M has dual bases in M_1^N from the quasibasis");
        for (int i = 0; i < left.size(); ++i)
            c.expect(k, t.a_hat.contains(bi[i]) && t.a_hat.contains(di[i]), at("i", i));
        for (int q = 0; q < d1; ++q) {
            Vec x = m1.basis(q), l(d1), r(d1);
            for (int i = 0; i < left.size(); ++i) {
                l = l + m1.mul(t.in_m1(em(m1.mul(x, bi[i]))), di[i]);
                r = r + m1.mul(bi[i], t.in_m1(em(m1.mul(di[i], x))));
            }
            c.expect(k, vec_equal(l, x) && vec_equal(r, x), at("m_1", q));
        }
    }

    // M (x)_R A^ -> M_1 and A^ (x)_R M -> M_1
    SubAlgebra ahat = subalgebra(m1, t.a_hat, "A^");
    Bimodule mr, ra, ar, rm;
    mr.dim = rm.dim = dm;
    ra.dim = ar.dim = ahat.alg.dim();
    mr.name = rm.name = "M";
    ra.name = ar.name = "A^";
    for (const auto& g : ch.r.alg.generators()) {
        Vec r = ch.r_elem(g);
        Vec r1 = need(ahat.from_ambient(t.in_m1(r)), "R outside A^");
        mr.right_gen.push_back(m.rmul(r));
        rm.left_gen.push_back(m.lmul(r));
        ra.left_gen.push_back(ahat.alg.lmul(r1));
        ar.right_gen.push_back(ahat.alg.rmul(r1));
    }
    {
        TensorQuotient ma = tensor_over(ext.field(), mr, ra, "M(x)_R A^");
        Mat mult(d1, ma.dim());
        for (int q = 0; q < ma.dim(); ++q) {
            auto [mi, ai] = ma.section(q);
            mult.set_col(q, m1.mul(t.in_m1(m.basis(mi)), ahat.incl.col(ai)));
        }
        bool bij = bijective(mult);
        std::string where = bij ? "" : "rank";
        // inverse m_1 -> sum_i E_M(m_1 b_i) (x) d_i
        for (int q = 0; q < d1 && where.empty(); ++q) {
            Vec x = m1.basis(q), y(ma.dim());
            for (int i = 0; i < left.size(); ++i)
                ma.add_pure(y, one, em(m1.mul(x, bi[i])), need(ahat.from_ambient(di[i]), "d_i outside A^"));
            if (!vec_equal(mult * y, x)) where = at("m_1", q);
        }
        c.add("M (x)_R A^ -> M_1, m (x) a -> m a, with its inverse", where);
        TensorQuotient am = tensor_over(ext.field(), ar, rm, "A^(x)_R M");
        Mat mult2(d1, am.dim());
        for (int q = 0; q < am.dim(); ++q) {
            auto [ai, mi] = am.section(q);
            mult2.set_col(q, m1.mul(ahat.incl.col(ai), t.in_m1(m.basis(mi))));
        }
        c.add("A^ (x)_R M -> M_1, a (x) m -> a m", bijective(mult2) ? "" : "rank");
    }

    // Pi = F pi on M x A
    {
        SmashIso si = smash_end_iso(ext, a);
        const TensorQuotient& sq = si.smash.space;
        Mat pi_big(d1, sq.dim());
        for (int q = 0; q < sq.dim(); ++q) {
            auto [mi, x] = sq.section(q);
            pi_big.set_col(q, m1.mul(t.in_m1(m.basis(mi)), maps.psi_a.col(x)));
        }
        std::string w = pi_big == maps.f * si.pi ? "" : "Pi != F pi";
        if (w.empty()) w = check_algebra_map(si.smash.alg, m1, pi_big);
        if (w.empty() && !bijective(pi_big)) w = "rank";
        c.add("M_1 ~ M x A via Pi(m x alpha) = m psi_A(alpha)", w);
    }

    // A|R Frobenius with E_A = E_M psi_A
    {
        Mat ea(dr, da);
        std::string inside;
        for (int j = 0; j < da; ++j) {
            auto r = ch.r.from_ambient(em(maps.psi_a.col(j)));
            if (!r) {
                inside = at("alpha", j);
                break;
            }
            ea.set_col(j, *r);
        }
        c.add("E_M(M_1^N) in R", inside);
        if (inside.empty()) {
            const Algebra& aa = ch.a.alg;
            int k = c.open("E_A = E_M psi_A is an R-R bimodule map");
            for (int i = 0; i < dr; ++i)
                for (int j = 0; j < da; ++j) {
                    Vec ri = ch.r.alg.basis(i), aj = aa.basis(j);
                    Vec lam = ch.lambda_r * ri;
                    c.expect(k,
                             vec_equal(ea * aa.mul(lam, aj), ch.r.alg.mul(ri, ea * aj)) &&
                                 vec_equal(ea * aa.mul(aj, lam), ch.r.alg.mul(ea * aj, ri)),
                             at("r", i, "alpha", j));
                }
            std::vector<Vec> u, v;
            for (int i = 0; i < left.size(); ++i) {
                auto pre = solve(maps.psi_a, bi[i]);
                u.push_back(need(pre, "b_i outside psi_A(A)"));
                v.push_back(need(ch.a.coords(left.beta[i]), "beta outside A"));
            }
            int k2 = c.open("A|R Frobenius with dual bases psi_A^-1(b_i), beta_i");
            for (int j = 0; j < da; ++j) {
                Vec x = aa.basis(j), l(da), r(da);
                for (int i = 0; i < left.size(); ++i) {
                    l = l + aa.mul(u[i], ch.lambda_r * (ea * aa.mul(v[i], x)));
                    r = r + aa.mul(ch.lambda_r * (ea * aa.mul(x, u[i])), v[i]);
                }
                c.expect(k2, vec_equal(l, x) && vec_equal(r, x), at("alpha", j));
            }
        }
    }

    // M_1 | M
    {
        Extension up = make_extension(ext.m, m1, t.m_to_m1, ext.name + ": M_1|M");
        Chain cu = build_chain(up);
        rep.m1_right_d2 = d2_quasibasis(up, cu, false).has_value();
        rep.m1_left_d2 = d2_quasibasis(up, cu, true).has_value();
        bool right_d2 = d2_quasibasis(ext, ch, false).has_value();
        c.add("left D2 => M_1|M right D2", rep.m1_right_d2 ? "" : "M_1|M not right D2");
        c.add("right D2 => M_1|M left D2", !right_d2 || rep.m1_left_d2 ? "" : "M_1|M not left D2");
    }

    // M_2^N against A^ e_2 A^
    {
        Subspace span(t.m2.dim());
        std::vector<Vec> hat;
        for (const auto& x : t.a_hat.basis()) hat.push_back(t.lift(x));
        for (const auto& x : hat) {
            Vec xe = t.m2.mul(x, t.e2);
            for (const auto& y : hat) span.insert(t.m2.mul(xe, y));
        }
        rep.c_hat_generated = span == t.c_hat;
        c.add("A^ e_2 A^ in M_2^N", t.c_hat.contains(span) ? "" : "outside");
    }
    rep.checks = std::move(c.out);
    return rep;
}

std::vector<AxiomResult> os_actions(const Extension& ext, const Tower& t, const TowerMaps& maps, const ABialgebroid& a,
                                    const BBialgebroid& b) {
    const Algebra& m = ext.m;
    const Algebra& m1 = t.m1;
    const int dm = m.dim(), d1 = m1.dim();
    const FrobeniusSystem& s = t.sys;
    const Scalar one = ext.field().one();
    Mat ei = e_in_m(ext, s.e);
    Checks c;

    int k = c.open("a > m = E_M(a m e_1) = psi_A^-1(a)(m)");
    for (const auto& x : t.a_hat.basis()) {
        Mat g(dm, dm);
        for (const auto& u : terms(t.t2, x)) g += u.c * (m.lmul_basis(u.v) * ei * m.lmul_basis(u.w));
        for (int j = 0; j < dm; ++j)
            c.expect(k, vec_equal(t.e_m * m1.mul(m1.mul(x, t.in_m1(m.basis(j))), t.e1), g.col(j)), at("m", j));
    }
    int k2 = c.open("E_M(psi_A(alpha) m e_1) = alpha(m)");
    for (int q = 0; q < a.bg.dim(); ++q)
        for (int j = 0; j < dm; ++j) {
            Vec lhs = t.e_m * m1.mul(m1.mul(maps.psi_a.col(q), t.in_m1(m.basis(j))), t.e1);
            c.expect(k2, vec_equal(lhs, a.action.act[q].col(j)), at("alpha", q, "m", j));
        }
    {
        SmashIso si = smash_end_iso(ext, a);
        const TensorQuotient& sq = si.smash.space;
        std::string w;
        for (int q = 0; q < sq.dim() && w.empty(); ++q) {
            auto [mi, x] = sq.section(q);
            Vec big = m1.mul(t.in_m1(m.basis(mi)), maps.psi_a.col(x));
            if (!vec_equal(big, maps.f * si.pi.col(q))) w = at("q", q);
        }
        c.add("triangle Pi = F pi", w);
    }

    auto phi_of = [&](const Mat& g) {
        Vec v(d1);
        for (int i = 0; i < s.size(); ++i) t.t2.add_pure(v, one, s.x[i], g * s.y[i]);
        return v;
    };
    const MatrixAlgebra& en = b.end_left;
    int k3 = c.open("E_{M_1}(phi_B(b) phi(f) e_2) = phi(f <| b)");
    for (int j = 0; j < b.bg.dim(); ++j) {
        Vec pb = maps.phi_b.col(j);
        for (int f = 0; f < en.alg.dim(); ++f) {
            Vec lhs = t.e_m1 * t.m2.mul(t.m2.mul(pb, t.lift(phi_of(en.basis[f]))), t.e2);
            Vec rhs = phi_of(en.to_mat(b.action.act[j].col(f)));
            c.expect(k3, vec_equal(lhs, rhs), at("b", j, "f", f));
        }
    }
    return c.out;
}

}  // namespace d2
