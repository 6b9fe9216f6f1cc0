#include "d2/extension.hpp"

#include <stdexcept>

namespace d2 {

Extension make_extension(Algebra n, Algebra m, Mat iota, std::string name) {
    if (!(n.field() == m.field())) throw AlgebraError("extension: N and M over different fields");
    if (iota.rows() != m.dim() || iota.cols() != n.dim()) throw AlgebraError("extension: map has wrong shape");
    std::string err = check_algebra_map(n, m, iota);
    if (!err.empty()) throw AlgebraError("extension map: " + err);
    return Extension{std::move(n), std::move(m), std::move(iota), std::move(name)};
}

Extension extension_from_subalgebra(const Algebra& m, const Subspace& s, std::string name) {
    SubAlgebra sa = subalgebra(m, s, name + ".N");
    return make_extension(sa.alg, m, sa.incl, std::move(name));
}

namespace {

void restrict_side(const Extension& e, Side s, const std::vector<Mat>& per, const std::vector<Mat>& gens,
                   const std::function<Mat(const Vec&)>& act, std::vector<Mat>& out, std::vector<Mat>& out_gen) {
    switch (s) {
        case Side::K:
            break;
        case Side::M:
            out = per;
            out_gen = gens;
            break;
        case Side::N:
            for (int k = 0; k < e.n.dim(); ++k) out.push_back(act(e.image(e.n.basis(k))));
            for (const auto& g : e.n.generators()) out_gen.push_back(act(e.image(g)));
            break;
    }
}

char side_char(Side s) { return s == Side::K ? 'K' : s == Side::N ? 'N' : 'M'; }

}  // namespace

Bimodule sided(const Extension& e, const Bimodule& mm, Side l, Side r) {
    Bimodule b;
    b.dim = mm.dim;
    b.name = std::string(1, side_char(l)) + "(" + mm.name + ")" + side_char(r);
    restrict_side(e, l, mm.left, mm.left_gen, [&](const Vec& v) { return mm.left_action(v); }, b.left, b.left_gen);
    restrict_side(e, r, mm.right, mm.right_gen, [&](const Vec& v) { return mm.right_action(v); }, b.right,
                  b.right_gen);
    return b;
}

Bimodule m_module(const Extension& e, Side l, Side r) {
    const Algebra& m = e.m;
    Bimodule mm = make_bimodule(&m, &m, m.dim(), [&](int k) { return m.lmul_basis(k); },
                                [&](int k) { return m.rmul_basis(k); }, "M");
    return sided(e, mm, l, r);
}

Bimodule n_module(const Extension& e, Side l, Side r) {
    if (l == Side::M || r == Side::M) throw std::invalid_argument("n_module: M does not act on N");
    const Algebra& n = e.n;
    return make_bimodule(l == Side::N ? &n : nullptr, r == Side::N ? &n : nullptr, n.dim(),
                         [&](int k) { return n.lmul_basis(k); }, [&](int k) { return n.rmul_basis(k); }, "N");
}

TensorQuotient tensor_square(const Extension& e) {
    return tensor_over(e.field(), m_module(e, Side::M, Side::N), m_module(e, Side::N, Side::M), "M(x)_N M");
}

TensorQuotient tensor_cube(const Extension& e, const TensorQuotient& t2) {
    require_label(t2, "M(x)_N M");
    return tensor_over(e.field(), sided(e, t2.module, Side::M, Side::N), m_module(e, Side::N, Side::M),
                       "M(x)_N M(x)_N M");
}

Mat multiplication_map(const Extension& e, const TensorQuotient& t2) {
    Mat mu(e.m.dim(), t2.dim());
    for (int q = 0; q < t2.dim(); ++q) {
        auto [v, w] = t2.section(q);
        for (const auto& [k, c] : e.m.basis_product(v, w)) mu(k, q) = c;
    }
    return mu;
}

Subspace centralizer(const Extension& e) {
    std::vector<SparseVec> eqs;
    for (const auto& g : e.n.generators()) {
        Vec x = e.image(g);
        Mat d = e.m.lmul(x) - e.m.rmul(x);
        for (int i = 0; i < d.rows(); ++i) {
            SparseVec r = to_sparse(d.row(i));
            if (!r.empty()) eqs.push_back(std::move(r));
        }
    }
    return sparse_kernel(eqs, e.m.dim());
}

Vec b_product(const Extension& e, const TensorQuotient& t2, const Vec& x, const Vec& y) {
    Vec out(t2.dim());
    for (int q = 0; q < t2.dim(); ++q) {
        if (x[q].is_zero()) continue;
        auto [v1, w1] = t2.section(q);
        for (int r = 0; r < t2.dim(); ++r) {
            if (y[r].is_zero()) continue;
            auto [v2, w2] = t2.section(r);
            t2.add_pure(out, x[q] * y[r], e.m.basis_product(v2, v1), e.m.basis_product(w1, w2));
        }
    }
    return out;
}

Chain build_chain(const Extension& e) {
    Chain c;
    c.t2 = tensor_square(e);
    c.r = subalgebra(e.m, centralizer(e), "R");
    Bimodule nmn = m_module(e, Side::N, Side::N);
    c.a_hom = hom_bimodule(nmn, nmn);
    c.a = matrix_algebra(c.a_hom.flat, e.m.dim(), "A");

    std::vector<SparseVec> eqs;
    for (const auto& g : e.n.generators()) {
        Vec x = e.image(g);
        Mat d = c.t2.module.left_action(x) - c.t2.module.right_action(x);
        for (int i = 0; i < d.rows(); ++i) {
            SparseVec r = to_sparse(d.row(i));
            if (!r.empty()) eqs.push_back(std::move(r));
        }
    }
    c.b_space = sparse_kernel(eqs, c.t2.dim());
    std::vector<Vec> bs = c.b_space.basis();
    Vec one = e.m.unit();
    auto unit = c.b_space.coords(c.t2.pure(one, one));
    if (!unit) throw std::logic_error("build_chain: 1 (x) 1 is not N-central");
    const Chain& cc = c;
    c.b = Algebra::from_products(
        e.field(), c.b_space.dim(), *unit,
        [&](int i, int j) {
            auto x = cc.b_space.coords(b_product(e, cc.t2, bs[i], bs[j]));
            if (!x) throw std::logic_error("build_chain: B is not closed under its product");
            return *x;
        },
        "B", c.b_space.dim() <= 20);

    int dr = c.r.alg.dim();
    c.lambda_r = Mat(c.a.alg.dim(), dr);
    c.rho_r = Mat(c.a.alg.dim(), dr);
    for (int k = 0; k < dr; ++k) {
        Vec r = c.r.to_ambient(c.r.alg.basis(k));
        auto l = c.a.coords(e.m.lmul(r));
        auto p = c.a.coords(e.m.rmul(r));
        if (!l || !p) throw std::logic_error("build_chain: lambda(r) or rho(r) not in A");
        c.lambda_r.set_col(k, *l);
        c.rho_r.set_col(k, *p);
    }
    return c;
}

// ---------------------------------------------------------------- quasibases

std::optional<Quasibasis> d2_quasibasis(const Extension& e, const Chain& c, bool left) {
    const TensorQuotient& t2 = c.t2;
    const int dm = e.m.dim(), q = t2.dim();
    const Vec one = e.m.unit();
    Mat target(q, dm);
    for (int m = 0; m < dm; ++m)
        target.set_col(m, left ? t2.pure(e.m.basis(m), one) : t2.pure(one, e.m.basis(m)));
    Vec tv = target.flatten();

    std::vector<Vec> bs = c.b_space.basis();
    // b -> (m -> b m) or (m -> m b), as q x dm matrices
    std::vector<Mat> act;
    for (const auto& b : bs) {
        Mat x(q, dm);
        for (int m = 0; m < dm; ++m) x.set_col(m, (left ? t2.module.right[m] : t2.module.left[m]) * b);
        act.push_back(x);
    }
    Subspace span(q * dm, Exec::serial);
    std::vector<std::pair<int, int>> used;
    std::vector<Vec> vecs;
    bool found = false;
    for (size_t i = 0; i < bs.size() && !found; ++i)
        for (int j = 0; j < static_cast<int>(c.a.basis.size()) && !found; ++j) {
            Vec v = (act[i] * c.a.basis[j]).flatten();
            if (!span.insert(v)) continue;
            used.emplace_back(static_cast<int>(i), j);
            vecs.push_back(std::move(v));
            found = span.contains(tv);
        }
    if (!found) return std::nullopt;
    auto coef = express(vecs, tv);
    Quasibasis qb;
    qb.left = left;
    for (size_t u = 0; u < used.size(); ++u) {
        if ((*coef)[u].is_zero()) continue;
        qb.b.push_back((*coef)[u] * bs[used[u].first]);
        qb.beta.push_back(c.a.basis[used[u].second]);
    }
    std::string err = check_quasibasis(e, c, qb);
    if (!err.empty()) throw std::logic_error("d2_quasibasis: " + err);
    return qb;
}

std::string check_quasibasis(const Extension& e, const Chain& c, const Quasibasis& qb) {
    const TensorQuotient& t2 = c.t2;
    const Vec one = e.m.unit();
    for (int i = 0; i < qb.size(); ++i) {
        if (!c.b_space.contains(qb.b[i])) return "element " + std::to_string(i) + " is not in B";
        if (!c.a.coords(qb.beta[i])) return "map " + std::to_string(i) + " is not in A";
    }
    for (int m = 0; m < e.m.dim(); ++m) {
        Vec s(t2.dim());
        for (int i = 0; i < qb.size(); ++i) {
            Vec x = qb.beta[i] * e.m.basis(m);
            s = s + (qb.left ? t2.module.right_action(x) : t2.module.left_action(x)) * qb.b[i];
        }
        Vec want = qb.left ? t2.pure(e.m.basis(m), one) : t2.pure(one, e.m.basis(m));
        if (!vec_equal(s, want)) return "identity fails at basis element " + std::to_string(m);
    }
    return {};
}

bool d2_by_summand(const Extension& e, const Chain& c, bool left) {
    if (left)
        return similar_summand(m_module(e, Side::N, Side::M), sided(e, c.t2.module, Side::N, Side::M)).has_value();
    return similar_summand(m_module(e, Side::M, Side::N), sided(e, c.t2.module, Side::M, Side::N)).has_value();
}

// ---------------------------------------------------------------- module constructions

HomSpace end_right(const Extension& e) {
    Bimodule x = m_module(e, Side::K, Side::N);
    return hom_bimodule(x, x);
}

HomSpace end_left(const Extension& e) {
    Bimodule x = m_module(e, Side::N, Side::K);
    return hom_bimodule(x, x);
}

namespace {

// bimodule on the span of a hom space, actions given by maps on matrices
Bimodule on_homs(const HomSpace& h, const Algebra* l, const std::function<Mat(const Vec&, const Mat&)>& lf,
                 const Algebra* r, const std::function<Mat(const Vec&, const Mat&)>& rf, std::string name) {
    auto action = [&](const std::function<Mat(const Vec&, const Mat&)>& f, const Vec& x) {
        Mat out(h.dim(), h.dim());
        for (int j = 0; j < h.dim(); ++j) {
            auto c = h.coords(f(x, h.basis[j]));
            if (!c) throw std::logic_error("on_homs: action leaves the hom space");
            out.set_col(j, *c);
        }
        return out;
    };
    Bimodule b;
    b.dim = h.dim();
    b.name = std::move(name);
    if (l) {
        for (int k = 0; k < l->dim(); ++k) b.left.push_back(action(lf, l->basis(k)));
        for (const auto& g : l->generators()) b.left_gen.push_back(action(lf, g));
    }
    if (r) {
        for (int k = 0; k < r->dim(); ++k) b.right.push_back(action(rf, r->basis(k)));
        for (const auto& g : r->generators()) b.right_gen.push_back(action(rf, g));
    }
    return b;
}

}  // namespace

Bimodule right_dual_module(const Extension& e) {
    HomSpace h = hom_bimodule(m_module(e, Side::K, Side::N), n_module(e, Side::K, Side::N));
    return on_homs(
        h, &e.n, [&](const Vec& n, const Mat& f) { return e.n.lmul(n) * f; }, &e.m,
        [&](const Vec& m, const Mat& f) { return f * e.m.lmul(m); }, "M*");
}

Bimodule left_dual_module(const Extension& e) {
    HomSpace h = hom_bimodule(m_module(e, Side::N, Side::K), n_module(e, Side::N, Side::K));
    return on_homs(
        h, &e.m, [&](const Vec& m, const Mat& f) { return f * e.m.rmul(m); }, &e.n,
        [&](const Vec& n, const Mat& f) { return e.n.rmul(n) * f; }, "*M");
}

bool is_balanced(const Extension& e) {
    if (!e.proper()) return false;
    HomSpace end = end_right(e);
    Bimodule x;
    x.dim = e.m.dim();
    x.left = end.basis;
    x.left_gen = end.basis;
    HomSpace ende = hom_bimodule(x, x);
    Subspace rho(e.m.dim() * e.m.dim());
    for (int k = 0; k < e.n.dim(); ++k) rho.insert(e.m.rmul(e.image(e.n.basis(k))).flatten());
    return rho == ende.flat;
}

// ---------------------------------------------------------------- classify

namespace {

std::vector<Mat> algebra_generators(const HomSpace& h, int n) {
    MatrixAlgebra ma = matrix_algebra(h.flat, n, "End");
    std::vector<Mat> out;
    for (const auto& g : ma.alg.generators()) out.push_back(ma.to_mat(g));
    return out;
}

std::optional<Mat> find_split(const Extension& e) {
    HomSpace h = hom_bimodule(m_module(e, Side::N, Side::N), n_module(e, Side::N, Side::N));
    std::vector<Vec> comps;
    for (const auto& f : h.basis) comps.push_back((f * e.iota).flatten());
    if (comps.empty()) return std::nullopt;
    auto c = express(comps, Mat::identity(e.n.dim()).flatten());
    if (!c) return std::nullopt;
    Mat out(e.n.dim(), e.m.dim());
    for (int i = 0; i < h.dim(); ++i)
        if (!(*c)[i].is_zero()) out += (*c)[i] * h.basis[i];
    return out;
}

Subspace m_central(const Extension& e, const TensorQuotient& t2) {
    std::vector<SparseVec> eqs;
    for (const auto& g : e.m.generators()) {
        Mat d = t2.module.left_action(g) - t2.module.right_action(g);
        for (int i = 0; i < d.rows(); ++i) {
            SparseVec r = to_sparse(d.row(i));
            if (!r.empty()) eqs.push_back(std::move(r));
        }
    }
    return sparse_kernel(eqs, t2.dim());
}

std::optional<Vec> find_separability(const Extension& e, const TensorQuotient& t2) {
    Subspace z = m_central(e, t2);
    Mat mu = multiplication_map(e, t2);
    std::vector<Vec> basis = z.basis(), images;
    for (const auto& b : basis) images.push_back(mu * b);
    if (images.empty()) return std::nullopt;
    auto c = express(images, e.m.unit());
    if (!c) return std::nullopt;
    Vec out(t2.dim());
    for (size_t i = 0; i < basis.size(); ++i) axpy(out, (*c)[i], basis[i]);
    return out;
}

bool depth_three(const Extension& e, const TensorQuotient& t2, const TensorQuotient& t3, bool right) {
    Mat i2 = Mat::identity(t2.dim()), im = Mat::identity(e.m.dim());
    Bimodule x, y;
    x.dim = t3.dim();
    y.dim = t2.dim();
    if (right) {
        for (const auto& f : algebra_generators(end_right(e), e.m.dim())) {
            x.left_gen.push_back(t3.induced(t2.induced(f, im), im));
            y.left_gen.push_back(t2.induced(f, im));
        }
        for (const auto& g : e.n.generators()) {
            x.right_gen.push_back(t3.module.right_action(e.image(g)));
            y.right_gen.push_back(t2.module.right_action(e.image(g)));
        }
    } else {
        for (const auto& g : e.n.generators()) {
            x.left_gen.push_back(t3.module.left_action(e.image(g)));
            y.left_gen.push_back(t2.module.left_action(e.image(g)));
        }
        for (const auto& f : algebra_generators(end_left(e), e.m.dim())) {
            x.right_gen.push_back(t3.induced(i2, f));
            y.right_gen.push_back(t2.induced(im, f));
        }
    }
    return h_equivalent(x, y);
}

}  // namespace

Profile classify(const Extension& e, const Chain& c, const ClassifyOptions& o) {
    Profile p;
    p.dim_n = e.n.dim();
    p.dim_m = e.m.dim();
    p.dim_r = c.r.alg.dim();
    p.dim_a = c.a.alg.dim();
    p.dim_b = c.b.dim();
    p.dim_t2 = c.t2.dim();
    p.proper = e.proper();
    p.left_qb = d2_quasibasis(e, c, true);
    p.right_qb = d2_quasibasis(e, c, false);
    p.left_d2 = p.left_qb.has_value();
    p.right_d2 = p.right_qb.has_value();
    p.h_separable = similar_summand(m_module(e, Side::M, Side::M), c.t2.module).has_value();
    if (p.h_separable) {
        Vec one = e.m.unit();
        Vec u = c.t2.pure(one, one);
        if (m_central(e, c.t2).contains(u)) p.h_separable_unit = u;
    }
    p.centrally_projective =
        similar_summand(n_module(e, Side::N, Side::N), m_module(e, Side::N, Side::N)).has_value();
    p.split_map = find_split(e);
    p.split = p.split_map.has_value();
    p.separability = find_separability(e, c.t2);
    p.separable = p.separability.has_value();
    p.right_projective = similar_summand(n_module(e, Side::K, Side::N), m_module(e, Side::K, Side::N)).has_value();
    p.left_projective = similar_summand(n_module(e, Side::N, Side::K), m_module(e, Side::N, Side::K)).has_value();
    if (o.qf && p.left_projective && p.right_projective) {
        p.left_qf = similar_summand(m_module(e, Side::N, Side::M), right_dual_module(e)).has_value();
        p.right_qf = similar_summand(m_module(e, Side::M, Side::N), left_dual_module(e)).has_value();
    }
    p.balanced = is_balanced(e);
    if (o.depth_three) {
        TensorQuotient t3 = tensor_cube(e, c.t2);
        p.right_d3 = depth_three(e, c.t2, t3, true);
        p.left_d3 = depth_three(e, c.t2, t3, false);
    }
    return p;
}

// ---------------------------------------------------------------- tensor products over R

TensorQuotient a_tensor_a(const Extension& e, const Chain& c) {
    Bimodule v, w;
    v.dim = w.dim = c.a.alg.dim();
    v.name = w.name = "A";
    for (const auto& g : c.r.alg.generators()) {
        v.right_gen.push_back(c.a.alg.lmul(c.rho_r * g));
        w.left_gen.push_back(c.a.alg.lmul(c.lambda_r * g));
    }
    return tensor_over(e.field(), v, w, "A(x)_R A");
}

namespace {

IsoCheck compare(std::string name, const Mat& phi, const Mat& psi) {
    IsoCheck r;
    r.name = std::move(name);
    r.dim_domain = phi.cols();
    r.dim_codomain = phi.rows();
    if (phi.rows() != psi.cols() || phi.cols() != psi.rows()) {
        r.failure = "dimensions differ";
        return r;
    }
    Mat a = psi * phi, b = phi * psi;
    for (int i = 0; i < a.cols(); ++i)
        if (!vec_equal(a.col(i), Mat::identity(a.rows()).col(i))) {
            r.failure = "inverse o map differs from identity at basis element " + std::to_string(i);
            return r;
        }
    for (int i = 0; i < b.cols(); ++i)
        if (!vec_equal(b.col(i), Mat::identity(b.rows()).col(i))) {
            r.failure = "map o inverse differs from identity at basis element " + std::to_string(i);
            return r;
        }
    r.ok = true;
    return r;
}

Vec need(const std::optional<Vec>& v, const char* what) {
    if (!v) throw std::logic_error(std::string("end_iso_props: ") + what);
    return *v;
}

}  // namespace

std::vector<IsoCheck> end_iso_props(const Extension& e, const Chain& c, const Quasibasis* left,
                                    const Quasibasis* right) {
    std::vector<IsoCheck> out;
    const Algebra& m = e.m;
    const int dm = m.dim();
    const TensorQuotient& t2 = c.t2;
    const MatrixAlgebra& a = c.a;
    const int da = a.alg.dim();
    std::vector<Vec> rgens = c.r.alg.generators();

    if (right) {
        // End _N M ~ A (x)_R M, alpha (x) m -> rho(m) alpha
        HomSpace ep = end_left(e);
        Bimodule v, w;
        v.dim = da;
        w.dim = dm;
        for (const auto& g : rgens) {
            v.right_gen.push_back(a.alg.lmul(c.rho_r * g));
            w.left_gen.push_back(m.lmul(c.r.to_ambient(g)));
        }
        TensorQuotient am = tensor_over(e.field(), v, w, "A(x)_R M");
        Mat phi(ep.dim(), am.dim()), psi(am.dim(), ep.dim());
        for (int q = 0; q < am.dim(); ++q) {
            auto [k, j] = am.section(q);
            phi.set_col(q, need(ep.coords(m.rmul_basis(j) * a.basis[k]), "rho(m) alpha outside End _N M"));
        }
        for (int f = 0; f < ep.dim(); ++f) {
            Vec col(am.dim());
            for (int i = 0; i < right->size(); ++i) {
                Vec x(dm);
                const Vec& ci = right->b[i];
                for (int q = 0; q < t2.dim(); ++q) {
                    if (ci[q].is_zero()) continue;
                    auto [v1, w1] = t2.section(q);
                    axpy(x, ci[q], m.mul(m.basis(v1), ep.basis[f] * m.basis(w1)));
                }
                am.add_pure(col, e.field().one(), need(a.coords(right->beta[i]), "gamma outside A"), x);
            }
            psi.set_col(f, col);
        }
        IsoCheck r = compare("End _N M ~ A (x)_R M", phi, psi);
        // N-M equivariance: alpha (x) n m m' -> x |-> alpha(x n) m m'
        for (int q = 0; r.ok && q < am.dim(); ++q) {
            auto [k, j] = am.section(q);
            Mat f = m.rmul_basis(j) * a.basis[k];
            for (const auto& g : e.n.generators()) {
                Vec n = e.image(g);
                Vec lhs = phi * am.pure(a.alg.basis(k), m.mul(n, m.basis(j)));
                if (!vec_equal(lhs, need(ep.coords(f * m.rmul(n)), "n-action"))) {
                    r.ok = false;
                    r.failure = "not left N-linear at basis element " + std::to_string(q);
                }
            }
            for (int t = 0; r.ok && t < dm; ++t) {
                Vec lhs = phi * am.pure(a.alg.basis(k), m.mul(m.basis(j), m.basis(t)));
                if (!vec_equal(lhs, need(ep.coords(m.rmul_basis(t) * f), "m-action"))) {
                    r.ok = false;
                    r.failure = "not right M-linear at basis element " + std::to_string(q);
                }
            }
        }
        out.push_back(r);
    }

    if (left) {
        // End M_N ~ M (x)_R A, m (x) alpha -> lambda(m) alpha
        HomSpace en = end_right(e);
        Bimodule v, w;
        v.dim = dm;
        w.dim = da;
        for (const auto& g : rgens) {
            v.right_gen.push_back(m.rmul(c.r.to_ambient(g)));
            w.left_gen.push_back(a.alg.lmul(c.lambda_r * g));
        }
        TensorQuotient ma = tensor_over(e.field(), v, w, "M(x)_R A");
        Mat phi(en.dim(), ma.dim()), psi(ma.dim(), en.dim());
        for (int q = 0; q < ma.dim(); ++q) {
            auto [j, k] = ma.section(q);
            phi.set_col(q, need(en.coords(m.lmul_basis(j) * a.basis[k]), "lambda(m) alpha outside End M_N"));
        }
        for (int f = 0; f < en.dim(); ++f) {
            Vec col(ma.dim());
            for (int i = 0; i < left->size(); ++i) {
                Vec x(dm);
                const Vec& bi = left->b[i];
                for (int q = 0; q < t2.dim(); ++q) {
                    if (bi[q].is_zero()) continue;
                    auto [v1, w1] = t2.section(q);
                    axpy(x, bi[q], m.mul(en.basis[f] * m.basis(v1), m.basis(w1)));
                }
                ma.add_pure(col, e.field().one(), x, need(a.coords(left->beta[i]), "beta outside A"));
            }
            psi.set_col(f, col);
        }
        IsoCheck r = compare("End M_N ~ M (x)_R A", phi, psi);
        for (int q = 0; r.ok && q < ma.dim(); ++q) {
            auto [j, k] = ma.section(q);
            for (int t = 0; r.ok && t < dm; ++t) {
                Vec lhs = phi * ma.pure(m.mul(m.basis(t), m.basis(j)), a.alg.basis(k));
                if (!vec_equal(lhs, need(en.coords(m.lmul_basis(t) * m.lmul_basis(j) * a.basis[k]), "m-action"))) {
                    r.ok = false;
                    r.failure = "not left M-linear at basis element " + std::to_string(q);
                }
            }
        }
        out.push_back(r);

        // A (x)_R A ~ Hom_{N-N}(M (x)_N M, M)
        TensorQuotient aa = a_tensor_a(e, c);
        HomSpace h = hom_bimodule(sided(e, t2.module, Side::N, Side::N), m_module(e, Side::N, Side::N));
        Mat phi2(h.dim(), aa.dim()), psi2(aa.dim(), h.dim());
        for (int q = 0; q < aa.dim(); ++q) {
            auto [k, l] = aa.section(q);
            Mat f(dm, t2.dim());
            for (int r2 = 0; r2 < t2.dim(); ++r2) {
                auto [v1, w1] = t2.section(r2);
                f.set_col(r2, m.mul(a.basis[k] * m.basis(v1), a.basis[l] * m.basis(w1)));
            }
            phi2.set_col(q, need(h.coords(f), "alpha(m) beta(m') outside Hom_{N-N}"));
        }
        for (int fi = 0; fi < h.dim(); ++fi) {
            const Mat& f = h.basis[fi];
            Vec col(aa.dim());
            for (int i = 0; i < left->size(); ++i) {
                const Vec& bi = left->b[i];
                Mat g(dm, dm);
                for (int mm = 0; mm < dm; ++mm) {
                    Vec x(dm);
                    for (int q = 0; q < t2.dim(); ++q) {
                        if (bi[q].is_zero()) continue;
                        auto [v1, w1] = t2.section(q);
                        axpy(x, bi[q], m.mul(f * t2.pure(m.basis(mm), m.basis(v1)), m.basis(w1)));
                    }
                    g.set_col(mm, x);
                }
                aa.add_pure(col, e.field().one(), need(a.coords(g), "f(- (x) b^1) b^2 outside A"),
                            need(a.coords(left->beta[i]), "beta outside A"));
            }
            psi2.set_col(fi, col);
        }
        out.push_back(compare("A (x)_R A ~ Hom_{N-N}(M (x)_N M, M)", phi2, psi2));
    }

    if (left && right) {
        HomSpace ep = end_left(e), en = end_right(e);
        Bimodule epm = on_homs(
            ep, &e.n, [&](const Vec& n, const Mat& f) { return f * m.rmul(e.image(n)); }, &m,
            [&](const Vec& x, const Mat& f) { return m.rmul(x) * f; }, "End _N M");
        Bimodule enm = on_homs(
            en, &m, [&](const Vec& x, const Mat& f) { return m.lmul(x) * f; }, &e.n,
            [&](const Vec& n, const Mat& f) { return f * m.lmul(e.image(n)); }, "End M_N");
        IsoCheck s1{"_N End(_N M)_M | (_N M_M)^n", ep.dim(), dm, false, {}};
        s1.ok = similar_summand(m_module(e, Side::N, Side::M), epm).has_value();
        if (!s1.ok) s1.failure = "no summand witness";
        IsoCheck s2{"_M End(M_N)_N | (_M M_N)^n", en.dim(), dm, false, {}};
        s2.ok = similar_summand(m_module(e, Side::M, Side::N), enm).has_value();
        if (!s2.ok) s2.failure = "no summand witness";
        out.push_back(s1);
        out.push_back(s2);
    }
    return out;
}

}  // namespace d2
