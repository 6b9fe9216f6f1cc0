#include "d2/morita.hpp"

#include <stdexcept>

namespace d2 {

namespace {

MapCheck check_map(std::string name, const Mat& map, const std::optional<Mat>& inv) {
    MapCheck m;
    m.name = std::move(name);
    m.dim_domain = map.cols();
    m.dim_codomain = map.rows();
    m.rank = rank(map);
    m.bijective = map.rows() == map.cols() && m.rank == map.rows();
    if (inv) {
        bool ok = inv->rows() == map.cols() && inv->cols() == map.rows();
        ok = ok && (*inv * map) == Mat::identity(map.cols()) && (map * *inv) == Mat::identity(map.rows());
        m.inverse_ok = ok;
    }
    return m;
}

Vec need(const std::optional<Vec>& v, const std::string& what) {
    if (!v) throw std::logic_error("morita: " + what);
    return *v;
}

// the acting matrices of R on B (right), A (left and right), M, R, in the respective coordinates
struct RActions {
    std::vector<Mat> b_right, b_left, a_left, a_right, m_left, m_right, r_left, r_right;
};

RActions r_actions(const Extension& e, const Chain& ch) {
    RActions ra;
    std::vector<Vec> bs = ch.b_space.basis();
    for (const auto& g : ch.r.alg.generators()) {
        Vec r = ch.r.to_ambient(g);
        Mat br(ch.b.dim(), ch.b.dim()), bl(ch.b.dim(), ch.b.dim());
        Mat tr = ch.t2.module.right_action(r), tl = ch.t2.module.left_action(r);
        for (size_t j = 0; j < bs.size(); ++j) {
            br.set_col(static_cast<int>(j), need(ch.b_coords(tr * bs[j]), "B r outside B"));
            bl.set_col(static_cast<int>(j), need(ch.b_coords(tl * bs[j]), "r B outside B"));
        }
        ra.b_right.push_back(br);
        ra.b_left.push_back(bl);
        ra.a_left.push_back(ch.a.alg.lmul(ch.lambda_r * g));
        ra.a_right.push_back(ch.a.alg.lmul(ch.rho_r * g));
        ra.m_left.push_back(e.m.lmul(r));
        ra.m_right.push_back(e.m.rmul(r));
        ra.r_left.push_back(ch.r.alg.lmul(g));
        ra.r_right.push_back(ch.r.alg.rmul(g));
    }
    return ra;
}

Bimodule left_acted(int dim, const std::vector<Mat>& l, std::string name) {
    Bimodule b;
    b.dim = dim;
    b.left_gen = l;
    b.name = std::move(name);
    return b;
}

Bimodule right_acted(int dim, const std::vector<Mat>& r, std::string name) {
    Bimodule b;
    b.dim = dim;
    b.right_gen = r;
    b.name = std::move(name);
    return b;
}

Mat iota1(const Extension& e, const TensorQuotient& t2, bool first) {
    Mat m(t2.dim(), e.m.dim());
    for (int k = 0; k < e.m.dim(); ++k)
        m.set_col(k, first ? t2.pure(e.m.basis(k), e.m.unit()) : t2.pure(e.m.unit(), e.m.basis(k)));
    return m;
}

}  // namespace

Vec pair_left(const Extension& e, const Chain& ch, const Mat& alpha, const Vec& b) {
    Vec out(e.m.dim());
    for (int q = 0; q < ch.t2.dim(); ++q) {
        if (b[q].is_zero()) continue;
        auto [v, w] = ch.t2.section(q);
        axpy(out, b[q], e.m.mul(alpha.col(v), e.m.basis(w)));
    }
    return out;
}

Vec pair_right(const Extension& e, const Chain& ch, const Vec& b, const Mat& alpha) {
    Vec out(e.m.dim());
    for (int q = 0; q < ch.t2.dim(); ++q) {
        if (b[q].is_zero()) continue;
        auto [v, w] = ch.t2.section(q);
        axpy(out, b[q], e.m.mul(e.m.basis(v), alpha.col(w)));
    }
    return out;
}

bool MoritaContext::ok() const {
    if (!failures.empty()) return false;
    for (const auto& m : maps)
        if (!m.ok()) return false;
    return true;
}

MoritaContext build_context(const Extension& e, const Chain& ch, const Quasibasis* left) {
    MoritaContext ctx;
    const Algebra& m = e.m;
    const TensorQuotient& t2 = ch.t2;
    const int dm = m.dim(), q2 = t2.dim(), db = ch.b.dim(), da = ch.a.alg.dim(), dr = ch.r.alg.dim();
    std::vector<Vec> bs = ch.b_space.basis();
    RActions ra = r_actions(e, ch);

    Bimodule nm = sided(e, t2.module, Side::N, Side::M);
    ctx.c = hom_bimodule(nm, nm);
    const int dc = ctx.c.dim();

    ctx.b_a = tensor_over(e.field(), right_acted(db, ra.b_right, "B"), left_acted(da, ra.a_left, "A"), "B(x)_R A");
    // mu_R(b (x) alpha) = (m (x) m' -> b alpha(m) m')
    auto mu_pure = [&](const Vec& b, const Mat& alpha) {
        Mat f(q2, q2);
        for (int x = 0; x < q2; ++x) {
            auto [v, w] = t2.section(x);
            f.set_col(x, t2.module.right_action(m.mul(alpha.col(v), m.basis(w))) * b);
        }
        return f;
    };
    ctx.mu_r = Mat(dc, ctx.b_a.dim());
    for (int q = 0; q < ctx.b_a.dim(); ++q) {
        auto [j, k] = ctx.b_a.section(q);
        auto cc = ctx.c.coords(mu_pure(bs[j], ch.a.basis[k]));
        if (!cc) {
            ctx.failures.push_back("mu_R(b (x) alpha) is not in C at basis element " + std::to_string(q));
            return ctx;
        }
        ctx.mu_r.set_col(q, *cc);
    }
    ctx.mu_surjective = rank(ctx.mu_r) == dc;
    ctx.maps.push_back(check_map("mu_R: B (x)_R A -> C", ctx.mu_r, std::nullopt));

    Mat mu = multiplication_map(e, t2);
    Mat i1 = iota1(e, t2, true);
    std::vector<Mat> mu_alpha;  // mu (alpha (x) id)
    Mat idm = Mat::identity(dm);
    for (int k = 0; k < da; ++k) mu_alpha.push_back(mu * t2.induced(ch.a.basis[k], idm));
    // alpha . c = mu (alpha (x) id) c iota_1
    auto a_dot_c = [&](int k, const Mat& c) { return mu_alpha[k] * c * i1; };

    // C ~ End B_R and C ~ End _R A
    {
        Bimodule bmod = right_acted(db, ra.b_right, "B_R");
        HomSpace endb = hom_bimodule(bmod, bmod);
        Mat map(endb.dim(), dc);
        bool inside = true;
        for (int c = 0; c < dc && inside; ++c) {
            Mat f(db, db);
            for (int j = 0; j < db; ++j) f.set_col(j, need(ch.b_coords(ctx.c.basis[c] * bs[j]), "c(b) outside B"));
            auto x = endb.coords(f);
            inside = x.has_value();
            if (inside) map.set_col(c, *x);
        }
        MapCheck mc = check_map("C -> End B_R", map, std::nullopt);
        if (!inside) mc.failure = "c(-) is not right R-linear on B";
        ctx.maps.push_back(mc);

        Bimodule amod = left_acted(da, ra.a_left, "_R A");
        HomSpace enda = hom_bimodule(amod, amod);
        Mat map2(enda.dim(), dc);
        inside = true;
        for (int c = 0; c < dc && inside; ++c) {
            Mat f(da, da);
            for (int k = 0; k < da; ++k) f.set_col(k, need(ch.a.coords(a_dot_c(k, ctx.c.basis[c])), "alpha.c outside A"));
            auto x = enda.coords(f);
            inside = x.has_value();
            if (inside) map2.set_col(c, *x);
        }
        MapCheck mc2 = check_map("C -> End _R A", map2, std::nullopt);
        if (!inside) mc2.failure = "alpha -> alpha.c is not left R-linear";
        ctx.maps.push_back(mc2);
    }

    // context laws: mu_R(b (x) alpha)(b') = b <alpha, b'> and <alpha, b> alpha' = alpha . mu_R(b (x) alpha')
    {
        std::vector<Mat> mus(static_cast<size_t>(db) * da);
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < da; ++k) mus[static_cast<size_t>(j) * da + k] = mu_pure(bs[j], ch.a.basis[k]);
        for (int j = 0; j < db && ctx.failures.empty(); ++j)
            for (int k = 0; k < da && ctx.failures.empty(); ++k) {
                const Mat& f = mus[static_cast<size_t>(j) * da + k];
                for (int j2 = 0; j2 < db; ++j2) {
                    Vec lhs = f * bs[j2];
                    Vec rhs = t2.module.right_action(pair_left(e, ch, ch.a.basis[k], bs[j2])) * bs[j];
                    if (!vec_equal(lhs, rhs)) {
                        ctx.failures.push_back("mu_R(b (x) alpha)(b') != b <alpha, b'> at (" + std::to_string(j) + "," +
                                               std::to_string(k) + "," + std::to_string(j2) + ")");
                        break;
                    }
                }
                for (int k0 = 0; k0 < da; ++k0) {
                    Mat lhs = m.lmul(pair_left(e, ch, ch.a.basis[k0], bs[j])) * ch.a.basis[k];
                    Mat rhs = a_dot_c(k0, f);
                    if (lhs != rhs) {
                        ctx.failures.push_back("<alpha, b> alpha' != alpha . mu_R(b (x) alpha') at (" + std::to_string(k0) +
                                               "," + std::to_string(j) + "," + std::to_string(k) + ")");
                        break;
                    }
                }
            }
    }

    if (!left) return ctx;
    const Quasibasis& qb = *left;
    std::vector<Vec> qb_b, qb_beta;
    for (int i = 0; i < qb.size(); ++i) {
        qb_b.push_back(need(ch.b_coords(qb.b[i]), "quasibasis element outside B"));
        qb_beta.push_back(need(ch.a.coords(qb.beta[i]), "quasibasis map outside A"));
    }

    // tau: B (x)_R M -> M (x)_N M
    {
        TensorQuotient bm =
            tensor_over(e.field(), right_acted(db, ra.b_right, "B"), left_acted(dm, ra.m_left, "M"), "B(x)_R M");
        Mat tau(q2, bm.dim()), inv(bm.dim(), q2);
        for (int q = 0; q < bm.dim(); ++q) {
            auto [j, k] = bm.section(q);
            tau.set_col(q, t2.module.right[k] * bs[j]);
        }
        for (int x = 0; x < q2; ++x) {
            auto [v, w] = t2.section(x);
            Vec col(bm.dim());
            for (int i = 0; i < qb.size(); ++i) bm.add_pure(col, m.field().one(), qb_b[i], m.mul(qb.beta[i].col(v), m.basis(w)));
            inv.set_col(x, col);
        }
        ctx.maps.push_back(check_map("tau: B (x)_R M -> M (x)_N M", tau, inv));
    }
    // iota: M (x)_N M -> Hom(_R A, _R M)
    {
        HomSpace h = hom_bimodule(left_acted(da, ra.a_left, "A"), left_acted(dm, ra.m_left, "M"));
        Mat map(h.dim(), q2), inv(q2, h.dim());
        bool inside = true;
        for (int x = 0; x < q2 && inside; ++x) {
            auto [v, w] = t2.section(x);
            Mat f(dm, da);
            for (int k = 0; k < da; ++k) f.set_col(k, m.mul(ch.a.basis[k].col(v), m.basis(w)));
            auto cc = h.coords(f);
            inside = cc.has_value();
            if (inside) map.set_col(x, *cc);
        }
        for (int fi = 0; fi < h.dim(); ++fi) {
            Vec col(q2);
            for (int i = 0; i < qb.size(); ++i) col = col + t2.module.right_action(h.basis[fi] * qb_beta[i]) * qb.b[i];
            inv.set_col(fi, col);
        }
        MapCheck mc = check_map("iota: M (x)_N M -> Hom(_R A, _R M)", map, inv);
        if (!inside) mc.failure = "iota(m (x) m') is not left R-linear";
        ctx.maps.push_back(mc);
    }
    // psi: B -> Hom(_R A, _R R)
    {
        HomSpace h = hom_bimodule(left_acted(da, ra.a_left, "A"), left_acted(dr, ra.r_left, "R"));
        Mat map(h.dim(), db), inv(db, h.dim());
        bool inside = true;
        for (int j = 0; j < db && inside; ++j) {
            Mat f(dr, da);
            for (int k = 0; k < da; ++k)
                f.set_col(k, need(ch.r.from_ambient(pair_left(e, ch, ch.a.basis[k], bs[j])), "alpha(b^1)b^2 outside R"));
            auto cc = h.coords(f);
            inside = cc.has_value();
            if (inside) map.set_col(j, *cc);
        }
        for (int fi = 0; fi < h.dim(); ++fi) {
            Vec col(q2);
            for (int i = 0; i < qb.size(); ++i)
                col = col + t2.module.right_action(ch.r.to_ambient(h.basis[fi] * qb_beta[i])) * qb.b[i];
            inv.set_col(fi, need(ch.b_coords(col), "psi^{-1} outside B"));
        }
        MapCheck mc = check_map("psi: B -> Hom(_R A, _R R)", map, inv);
        if (!inside) mc.failure = "psi(b) is not left R-linear";
        // psi(b r)(alpha) = psi(b)(alpha) r and psi(c b)(alpha) = psi(b)(alpha . c)
        for (int j = 0; j < db && mc.failure.empty(); ++j)
            for (int k = 0; k < da && mc.failure.empty(); ++k) {
                Vec base = pair_left(e, ch, ch.a.basis[k], bs[j]);
                for (const auto& g : ch.r.alg.generators()) {
                    Vec r = ch.r.to_ambient(g);
                    Vec lhs = pair_left(e, ch, ch.a.basis[k], t2.module.right_action(r) * bs[j]);
                    if (!vec_equal(lhs, m.mul(base, r))) mc.failure = "psi is not right R-linear";
                }
                for (int c = 0; c < dc && mc.failure.empty(); ++c) {
                    Vec lhs = pair_left(e, ch, ch.a.basis[k], ctx.c.basis[c] * bs[j]);
                    Vec rhs = pair_left(e, ch, a_dot_c(k, ctx.c.basis[c]), bs[j]);
                    if (!vec_equal(lhs, rhs)) mc.failure = "psi is not C-linear";
                }
            }
        ctx.maps.push_back(mc);
    }
    return ctx;
}

ProgeneratorReport progenerator_checks(const Extension& e, const Chain& ch, const Quasibasis& left) {
    ProgeneratorReport rep;
    RActions ra = r_actions(e, ch);
    const int da = ch.a.alg.dim(), db = ch.b.dim(), dr = ch.r.alg.dim();
    rep.dual_basis_ok = true;
    for (int k = 0; k < da && rep.dual_basis_ok; ++k) {
        Mat s(e.m.dim(), e.m.dim());
        for (int i = 0; i < left.size(); ++i) s += e.m.lmul(pair_left(e, ch, ch.a.basis[k], left.b[i])) * left.beta[i];
        rep.dual_basis_ok = s == ch.a.basis[k];
    }
    Bimodule a = left_acted(da, ra.a_left, "_R A"), rl = left_acted(dr, ra.r_left, "_R R");
    Bimodule b = right_acted(db, ra.b_right, "B_R"), rr = right_acted(dr, ra.r_right, "R_R");
    rep.a_generator = similar_summand(a, rl).has_value();
    rep.a_projective = similar_summand(rl, a).has_value();
    rep.b_generator = similar_summand(b, rr).has_value();
    rep.b_projective = similar_summand(rr, b).has_value();
    return rep;
}

std::vector<MapCheck> right_side_duals(const Extension& e, const Chain& ch, const Quasibasis& right) {
    std::vector<MapCheck> out;
    const Algebra& m = e.m;
    const TensorQuotient& t2 = ch.t2;
    const int dm = m.dim(), q2 = t2.dim(), db = ch.b.dim(), da = ch.a.alg.dim(), dr = ch.r.alg.dim();
    std::vector<Vec> bs = ch.b_space.basis();
    RActions ra = r_actions(e, ch);

    // B ~ Hom(A_R, R_R), b -> (alpha -> b^1 alpha(b^2)), inverse phi -> sum_i phi(gamma_i) c_i
    {
        HomSpace h = hom_bimodule(right_acted(da, ra.a_right, "A_R"), right_acted(dr, ra.r_right, "R_R"));
        Mat map(h.dim(), db);
        bool inside = true;
        for (int j = 0; j < db && inside; ++j) {
            Mat f(dr, da);
            for (int k = 0; k < da; ++k)
                f.set_col(k, need(ch.r.from_ambient(pair_right(e, ch, bs[j], ch.a.basis[k])), "b^1 alpha(b^2) outside R"));
            auto cc = h.coords(f);
            inside = cc.has_value();
            if (inside) map.set_col(j, *cc);
        }
        Mat inv(db, h.dim());
        for (int fi = 0; fi < h.dim(); ++fi) {
            Vec col(q2);
            for (int i = 0; i < right.size(); ++i) {
                Vec r = ch.r.to_ambient(h.basis[fi] * need(ch.a.coords(right.beta[i]), "gamma outside A"));
                col = col + t2.module.left_action(r) * right.b[i];
            }
            inv.set_col(fi, need(ch.b_coords(col), "inverse outside B"));
        }
        MapCheck mc = check_map("B -> Hom(A_R, R_R)", map, inv);
        if (!inside) mc.failure = "b^1 alpha(b^2) is not right R-linear in alpha";
        out.push_back(mc);
    }
    // C ~ End A_R, c -> (alpha -> mu (id (x) alpha) c iota_2)
    {
        Bimodule nm = sided(e, t2.module, Side::N, Side::M);
        HomSpace c = hom_bimodule(nm, nm);
        Bimodule ar = right_acted(da, ra.a_right, "A_R");
        HomSpace enda = hom_bimodule(ar, ar);
        Mat mu = multiplication_map(e, t2), i2 = iota1(e, t2, false), idm = Mat::identity(dm);
        std::vector<Mat> mu_alpha;
        for (int k = 0; k < da; ++k) mu_alpha.push_back(mu * t2.induced(idm, ch.a.basis[k]));
        // C acts on the right of M (x)_N M here through the right-hand analogue C' = End_M(M (x)_N M)_N
        Bimodule mn = sided(e, t2.module, Side::M, Side::N);
        HomSpace cp = hom_bimodule(mn, mn);
        Mat map(enda.dim(), cp.dim());
        bool inside = true;
        for (int ci = 0; ci < cp.dim() && inside; ++ci) {
            Mat f(da, da);
            for (int k = 0; k < da && inside; ++k) {
                auto x = ch.a.coords(mu_alpha[k] * cp.basis[ci] * i2);
                inside = x.has_value();
                if (inside) f.set_col(k, *x);
            }
            auto x = inside ? enda.coords(f) : std::nullopt;
            inside = x.has_value();
            if (inside) map.set_col(ci, *x);
        }
        MapCheck mc = check_map("End_M(M (x)_N M)_N -> End A_R", map, std::nullopt);
        if (!inside) mc.failure = "alpha -> mu(id (x) alpha) c iota_2 is not in End A_R";
        out.push_back(mc);
        (void)c;
    }
    // M (x)_R B ~ M (x)_N M, m (x) b -> m b
    {
        TensorQuotient mb =
            tensor_over(e.field(), right_acted(dm, ra.m_right, "M"), left_acted(db, ra.b_left, "B"), "M(x)_R B");
        Mat map(q2, mb.dim());
        for (int q = 0; q < mb.dim(); ++q) {
            auto [k, j] = mb.section(q);
            map.set_col(q, t2.module.left[k] * bs[j]);
        }
        Mat inv(mb.dim(), q2);
        for (int x = 0; x < q2; ++x) {
            auto [v, w] = t2.section(x);
            Vec col(mb.dim());
            for (int i = 0; i < right.size(); ++i)
                mb.add_pure(col, m.field().one(), m.mul(m.basis(v), right.beta[i].col(w)),
                            need(ch.b_coords(right.b[i]), "c_i outside B"));
            inv.set_col(x, col);
        }
        out.push_back(check_map("M (x)_R B -> M (x)_N M", map, inv));
    }
    return out;
}

}  // namespace d2
