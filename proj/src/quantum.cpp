#include "d2/quantum.hpp"

#include "d2/gallery.hpp"

namespace d2 {

namespace {

std::string at(const std::string& k, int v) { return k + "=" + std::to_string(v); }
std::string at(const std::string& k, int v, const std::string& k2, int v2) { return at(k, v) + ", " + at(k2, v2); }

struct Checks {
    std::vector<AxiomResult> out;
    std::string prefix;
    int open(const std::string& name) {
        out.push_back({prefix + name, true, ""});
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
    void add(const std::string& name, bool ok, std::string where = "") {
        out.push_back({prefix + name, ok, ok ? "" : (where.empty() ? "false" : std::move(where))});
    }
    void append(const std::vector<AxiomResult>& rs) {
        for (auto r : rs) {
            r.name = prefix + r.name;
            out.push_back(std::move(r));
        }
    }
};

bool all_ok(const std::vector<AxiomResult>& v) {
    for (const auto& r : v)
        if (!r.ok) return false;
    return true;
}

Vec kron(const Vec& x, const Vec& y) {
    const int n = static_cast<int>(y.size());
    Vec out(x.size() * y.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < n; ++j)
            if (!y[j].is_zero()) out[i * n + j] = x[i] * y[j];
    }
    return out;
}

// product in the order-fold tensor power of a, coordinates in base n
Vec tensor_mul(const Algebra& a, const Vec& x, const Vec& y, int order) {
    const int n = a.dim();
    Vec out(x.size());
    std::vector<int> dx(order), dy(order);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (int t = order - 1, v = static_cast<int>(i); t >= 0; --t, v /= n) dx[t] = v % n;
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            for (int t = order - 1, v = static_cast<int>(j); t >= 0; --t, v /= n) dy[t] = v % n;
            // expand the product of the factors
            std::vector<std::pair<int, Scalar>> acc{{0, x[i] * y[j]}};
            for (int t = 0; t < order; ++t) {
                std::vector<std::pair<int, Scalar>> next;
                for (const auto& [idx, c] : acc)
                    for (const auto& [k, ck] : a.basis_product(dx[t], dy[t])) next.emplace_back(idx * n + k, c * ck);
                acc = std::move(next);
            }
            for (const auto& [idx, c] : acc) out[idx] += c;
        }
    }
    return out;
}

Mat stack_rows(const std::vector<Mat>& blocks, int cols) {
    int rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    Mat out(rows, cols);
    int r0 = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j) out(r0 + i, j) = b(i, j);
        r0 += b.rows();
    }
    return out;
}

// x -> x_(1) (x) x_(2) (x) x_(3) via (Delta (x) id) Delta
Vec delta2(const WeakBialgebra& w, const Vec& x) {
    const int n = w.dim();
    Vec d = w.coproduct(x), out(static_cast<size_t>(n) * n * n);
    for (int ij = 0; ij < n * n; ++ij) {
        if (d[ij].is_zero()) continue;
        Vec di = w.delta.col(ij / n);
        for (int pq = 0; pq < n * n; ++pq)
            if (!di[pq].is_zero()) out[static_cast<size_t>(pq) * n + ij % n] += d[ij] * di[pq];
    }
    return out;
}

Vec delta2_right(const WeakBialgebra& w, const Vec& x) {
    const int n = w.dim();
    Vec d = w.coproduct(x), out(static_cast<size_t>(n) * n * n);
    for (int ij = 0; ij < n * n; ++ij) {
        if (d[ij].is_zero()) continue;
        Vec dj = w.delta.col(ij % n);
        for (int pq = 0; pq < n * n; ++pq)
            if (!dj[pq].is_zero()) out[static_cast<size_t>(ij / n) * n * n + pq] += d[ij] * dj[pq];
    }
    return out;
}

Scalar dot(const Vec& a, const Vec& b) {
    Scalar s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

}  // namespace

// ---------------------------------------------------------------- weak bialgebras

Scalar WeakBialgebra::counit(const Vec& a) const { return dot(eps, a); }

Vec WeakBialgebra::pi_l(const Vec& a) const {
    const int n = dim();
    Vec d1 = coproduct(alg.unit()), out(n);
    for (int ij = 0; ij < n * n; ++ij)
        if (!d1[ij].is_zero()) axpy(out, d1[ij] * counit(alg.mul(alg.basis(ij / n), a)), alg.basis(ij % n));
    return out;
}

Vec WeakBialgebra::pi_r(const Vec& a) const {
    const int n = dim();
    Vec d1 = coproduct(alg.unit()), out(n);
    for (int ij = 0; ij < n * n; ++ij)
        if (!d1[ij].is_zero()) axpy(out, d1[ij] * counit(alg.mul(a, alg.basis(ij % n))), alg.basis(ij / n));
    return out;
}

bool WeakBialgebra::genuinely_weak() const { return !vec_equal(coproduct(alg.unit()), kron(alg.unit(), alg.unit())); }

std::vector<AxiomResult> verify_weak_bialgebra(const WeakBialgebra& w) {
    const Algebra& a = w.alg;
    const int n = w.dim();
    Checks c;
    int k1 = c.open("coassociative");
    int k2 = c.open("counit");
    for (int k = 0; k < n; ++k) {
        c.expect(k1, vec_equal(delta2(w, a.basis(k)), delta2_right(w, a.basis(k))), at("a", k));
        Vec d = w.delta.col(k), l(n), r(n);
        for (int ij = 0; ij < n * n; ++ij) {
            if (d[ij].is_zero()) continue;
            l[ij % n] += d[ij] * w.eps[ij / n];
            r[ij / n] += d[ij] * w.eps[ij % n];
        }
        c.expect(k2, vec_equal(l, a.basis(k)) && vec_equal(r, a.basis(k)), at("a", k));
    }

    std::vector<char> bad(static_cast<size_t>(n) * n, 0);
#pragma omp parallel for schedule(dynamic)
    for (int kl = 0; kl < n * n; ++kl) {
        int k = kl / n, l = kl % n;
        Vec lhs = w.coproduct(to_dense(a.basis_product(k, l), n));
        Vec rhs = tensor_mul(a, w.delta.col(k), w.delta.col(l), 2);
        bad[kl] = !vec_equal(lhs, rhs);
    }
    int k3 = c.open("Delta multiplicative");
    for (int kl = 0; kl < n * n; ++kl)
        if (bad[kl]) {
            c.fail(k3, at("a", kl / n, "b", kl % n));
            break;
        }

    Vec d1 = w.coproduct(a.unit());
    Vec one = a.unit();
    Vec left = kron(d1, one), right = kron(one, d1);
    Vec dd = delta2(w, one);
    bool ok = vec_equal(tensor_mul(a, left, right, 3), dd) && vec_equal(tensor_mul(a, right, left, 3), dd);
    c.add("(Delta(1) (x) 1)(1 (x) Delta(1)) = (1 (x) Delta(1))(Delta(1) (x) 1) = Delta^2(1)", ok);

    // em(i, j) = eps(e_i e_j)
    Mat em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = w.counit(to_dense(a.basis_product(i, j), n));
    int k4 = c.open("eps(a b_(1)) eps(b_(2) c) = eps(abc)");
    int k5 = c.open("eps(a b_(2)) eps(b_(1) c) = eps(abc)");
    for (int j = 0; j < n; ++j) {
        Vec d = w.delta.col(j);
        for (int i = 0; i < n; ++i) {
            Vec ij = to_dense(a.basis_product(i, j), n);
            for (int l = 0; l < n; ++l) {
                Scalar lhs, lhs2, rhs;
                for (int pq = 0; pq < n * n; ++pq) {
                    if (d[pq].is_zero()) continue;
                    lhs += d[pq] * em(i, pq / n) * em(pq % n, l);
                    lhs2 += d[pq] * em(i, pq % n) * em(pq / n, l);
                }
                for (int p = 0; p < n; ++p)
                    if (!ij[p].is_zero()) rhs += ij[p] * em(p, l);
                c.expect(k4, lhs == rhs, "a=" + std::to_string(i) + ", b=" + std::to_string(j) + ", c=" + std::to_string(l));
                c.expect(k5, lhs2 == rhs, "a=" + std::to_string(i) + ", b=" + std::to_string(j) + ", c=" + std::to_string(l));
            }
        }
    }
    return c.out;
}

std::optional<WeakBialgebra> weak_bialgebra_lift(const Bialgebroid& b, const FrobeniusCoordinates& r, std::string* why) {
    auto refuse = [&](const std::string& s) -> std::optional<WeakBialgebra> {
        if (why) *why = s;
        return std::nullopt;
    };
    const Algebra& base = b.base;
    if (std::string f = check_frobenius(base, r); !f.empty()) return refuse("not Frobenius coordinates for R: " + f);
    Vec idx(base.dim());
    for (size_t i = 0; i < r.e.size(); ++i) idx = idx + base.mul(r.e[i], r.f[i]);
    if (!vec_equal(idx, base.unit())) return refuse("sum_i e_i f_i != 1");
    const Algebra& a = b.total;
    const int n = a.dim();
    WeakBialgebra w;
    w.alg = a;
    w.name = b.name;
    w.delta = Mat(n * n, n);
    std::vector<Vec> te, sf;
    for (size_t i = 0; i < r.e.size(); ++i) {
        te.push_back(b.left ? b.t * r.e[i] : b.s * r.e[i]);
        sf.push_back(b.left ? b.s * r.f[i] : b.t * r.f[i]);
    }
    for (int k = 0; k < n; ++k) {
        Vec col(static_cast<size_t>(n) * n);
        for (const auto& u : terms(b.tt, b.delta.col(k)))
            for (size_t i = 0; i < te.size(); ++i) {
                Vec x = b.left ? a.mul(te[i], a.basis(u.v)) : a.mul(a.basis(u.v), te[i]);
                Vec y = b.left ? a.mul(sf[i], a.basis(u.w)) : a.mul(a.basis(u.w), sf[i]);
                col = col + u.c * kron(x, y);
            }
        w.delta.set_col(k, col);
    }
    w.eps = Vec(n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < base.dim(); ++j) w.eps[k] += r.phi[j] * b.eps(j, k);
    return w;
}

// ---------------------------------------------------------------- antipodes and integrals

std::vector<AxiomResult> antipode_axioms(const WeakBialgebra& w, const Mat& s) {
    const Algebra& a = w.alg;
    const int n = w.dim();
    Checks c;
    int k1 = c.open("S(a_(1)) a_(2) = Pi^R(a)");
    int k2 = c.open("a_(1) S(a_(2)) = Pi^L(a)");
    int k3 = c.open("S(a_(1)) a_(2) S(a_(3)) = S(a)");
    for (int k = 0; k < n; ++k) {
        Vec x = a.basis(k), d = w.delta.col(k), l(n), r(n);
        for (int ij = 0; ij < n * n; ++ij) {
            if (d[ij].is_zero()) continue;
            l = l + d[ij] * a.mul(s.col(ij / n), a.basis(ij % n));
            r = r + d[ij] * a.mul(a.basis(ij / n), s.col(ij % n));
        }
        c.expect(k1, vec_equal(l, w.pi_r(x)), at("a", k));
        c.expect(k2, vec_equal(r, w.pi_l(x)), at("a", k));
        Vec d3 = delta2(w, x), t(n);
        for (size_t ijl = 0; ijl < d3.size(); ++ijl) {
            if (d3[ijl].is_zero()) continue;
            int i = static_cast<int>(ijl / (n * n)), j = static_cast<int>(ijl / n % n), l3 = static_cast<int>(ijl % n);
            t = t + d3[ijl] * a.mul(a.mul(s.col(i), a.basis(j)), s.col(l3));
        }
        c.expect(k3, vec_equal(t, s.col(k)), at("a", k));
    }
    return c.out;
}

AntipodeSolve solve_antipode(const WeakBialgebra& w) {
    const Algebra& a = w.alg;
    const int n = w.dim();
    AntipodeSolve res;
    // unknown S_pv at p*n + v, S(e_v) = sum_p S_pv e_p
    std::vector<SparseVec> eqs;
    Vec rhs;
    bool inconsistent = false;
    std::vector<Vec> pl_of, pr_of;
    for (int j = 0; j < n; ++j) {
        pl_of.push_back(w.pi_l(a.basis(j)));
        pr_of.push_back(w.pi_r(a.basis(j)));
    }
    for (int k = 0; k < n; ++k) {
        Vec d = w.delta.col(k);
        std::vector<std::vector<std::pair<int, Scalar>>> r1(n), r2(n);
        for (int ij = 0; ij < n * n; ++ij) {
            if (d[ij].is_zero()) continue;
            int v = ij / n, wv = ij % n;
            for (int p = 0; p < n; ++p) {
                for (const auto& [q, cq] : a.basis_product(p, wv)) r1[q].emplace_back(p * n + v, d[ij] * cq);
                for (const auto& [q, cq] : a.basis_product(v, p)) r2[q].emplace_back(p * n + wv, d[ij] * cq);
            }
        }
        // S(a) = S(a_(1)) Pi^L(a_(2)) = Pi^R(a_(1)) S(a_(2))
        std::vector<std::vector<std::pair<int, Scalar>>> r3(n), r4(n);
        for (int q = 0; q < n; ++q) {
            r3[q].emplace_back(q * n + k, a.field().one());
            r4[q].emplace_back(q * n + k, a.field().one());
        }
        for (int ij = 0; ij < n * n; ++ij) {
            if (d[ij].is_zero()) continue;
            int v = ij / n, wv = ij % n;
            for (int p = 0; p < n; ++p) {
                Vec x = a.mul(a.basis(p), pl_of[wv]), y = a.mul(pr_of[v], a.basis(p));
                for (int q = 0; q < n; ++q) {
                    if (!x[q].is_zero()) r3[q].emplace_back(p * n + v, -(d[ij] * x[q]));
                    if (!y[q].is_zero()) r4[q].emplace_back(p * n + wv, -(d[ij] * y[q]));
                }
            }
        }
        for (int q = 0; q < n; ++q)
            for (auto* r : {&r3[q], &r4[q]}) {
                SparseVec e3 = make_sparse(std::move(*r));
                if (e3.empty()) continue;
                eqs.push_back(std::move(e3));
                rhs.push_back(Scalar());
            }
        Vec pr = w.pi_r(a.basis(k)), pl = w.pi_l(a.basis(k));
        for (int q = 0; q < n; ++q) {
            SparseVec e1 = make_sparse(std::move(r1[q])), e2 = make_sparse(std::move(r2[q]));
            if (e1.empty() && !pr[q].is_zero()) inconsistent = true;
            if (e2.empty() && !pl[q].is_zero()) inconsistent = true;
            if (!e1.empty()) {
                eqs.push_back(std::move(e1));
                rhs.push_back(pr[q]);
            }
            if (!e2.empty()) {
                eqs.push_back(std::move(e2));
                rhs.push_back(pl[q]);
            }
        }
    }
    res.kernel_dim = sparse_kernel(eqs, n * n).dim();
    std::optional<Vec> sol;
    if (!inconsistent) sol = sparse_solve(eqs, rhs, n * n);
    if (!sol) {
        res.checks.push_back({"antipode linear system solvable", false, "no solution"});
        return res;
    }
    Mat s(n, n);
    for (int p = 0; p < n; ++p)
        for (int v = 0; v < n; ++v) s(p, v) = (*sol)[p * n + v];
    res.checks.push_back({"antipode linear system solvable", true, ""});
    for (auto& r : antipode_axioms(w, s)) res.checks.push_back(std::move(r));
    res.s = std::move(s);
    return res;
}

namespace {

Mat pi_matrix(const WeakBialgebra& w, bool left) {
    Mat p(w.dim(), w.dim());
    for (int k = 0; k < w.dim(); ++k) p.set_col(k, left ? w.pi_l(w.alg.basis(k)) : w.pi_r(w.alg.basis(k)));
    return p;
}

Subspace integrals(const WeakBialgebra& w, bool left) {
    const Algebra& a = w.alg;
    std::vector<Mat> blocks;
    for (int k = 0; k < w.dim(); ++k) {
        Vec x = a.basis(k);
        blocks.push_back(left ? a.lmul(x) - a.lmul(w.pi_l(x)) : a.rmul(x) - a.rmul(w.pi_r(x)));
    }
    return kernel(stack_rows(blocks, w.dim()));
}

std::optional<Vec> normalized(const WeakBialgebra& w, bool left) {
    Subspace ints = integrals(w, left);
    if (ints.dim() == 0) return std::nullopt;
    Mat basis = Mat::from_cols(ints.basis(), w.dim());
    auto c = solve(pi_matrix(w, left) * basis, w.alg.unit());
    if (!c) return std::nullopt;
    return basis * *c;
}

}  // namespace

Subspace left_integrals(const WeakBialgebra& w) { return integrals(w, true); }
Subspace right_integrals(const WeakBialgebra& w) { return integrals(w, false); }
std::optional<Vec> normalized_left_integral(const WeakBialgebra& w) { return normalized(w, true); }
std::optional<Vec> normalized_right_integral(const WeakBialgebra& w) { return normalized(w, false); }

// ---------------------------------------------------------------- A and B over K

bool WeakHopfReport::ok() const { return !refused() && all_ok(checks); }

WeakHopfReport weak_hopf_verify(const Extension& e, const Chain& ch, const FrobeniusSystem& sys, const Quasibasis& left,
                                const ABialgebroid& abg, const BBialgebroid& bbg, uint64_t seed) {
    WeakHopfReport rep;
    if (!left.left) {
        rep.refusal = "needs a left quasibasis";
        return rep;
    }
    if (std::string f = check_frobenius_system(e, sys); !f.empty()) {
        rep.refusal = "not a Frobenius system: " + f;
        return rep;
    }
    IndexOneResult io = index_one_coordinates(ch.r.alg, seed);
    if (!io.coords) {
        rep.refusal = "R has no index one coordinates: " + io.note;
        return rep;
    }
    rep.r_coords = *io.coords;
    rep.r_method = io.method;
    std::string why;
    auto wa = weak_bialgebra_lift(abg.bg, rep.r_coords, &why);
    auto wb = wa ? weak_bialgebra_lift(bbg.bg, rep.r_coords, &why) : std::nullopt;
    if (!wa || !wb) {
        rep.refusal = why;
        return rep;
    }
    rep.a = std::move(*wa);
    rep.b = std::move(*wb);
    const WeakBialgebra& A = rep.a;
    const WeakBialgebra& B = rep.b;
    const Algebra& m = e.m;
    const int da = A.dim(), db = B.dim(), dr = ch.r.alg.dim();
    const FrobeniusCoordinates& rc = rep.r_coords;
    const std::vector<Vec> bs = ch.b_space.basis();
    const TensorQuotient& t2 = ch.t2;
    Mat ei = e.iota * sys.e;

    auto phi_of = [&](const Vec& in_m) {
        auto r = ch.r.from_ambient(in_m);
        if (!r) throw std::logic_error("weak_hopf_verify: element outside R");
        return dot(rc.phi, *r);
    };
    auto r_in_m = [&](const Vec& rcoords) { return ch.r_elem(rcoords); };
    auto a_coords = [&](const Mat& f) {
        auto c = ch.a.coords(f);
        if (!c) throw std::logic_error("weak_hopf_verify: map outside A");
        return *c;
    };
    auto b_coords = [&](const Vec& x) {
        auto c = ch.b_coords(x);
        if (!c) throw std::logic_error("weak_hopf_verify: element outside B");
        return *c;
    };

    Checks c;
    c.prefix = "A: ";
    c.append(verify_weak_bialgebra(A));
    c.prefix = "B: ";
    c.append(verify_weak_bialgebra(B));
    c.prefix = "";

    // the displayed formulas for Delta and eps on A and B
    {
        int k = c.open("A: Delta(a) = sum a(- b_i^1) b_i^2 e_j (x) lambda(f_j) beta_i");
        for (int q = 0; q < da; ++q) {
            Vec col(static_cast<size_t>(da) * da);
            for (int i = 0; i < left.size(); ++i) {
                Mat inner(m.dim(), m.dim());
                for (const auto& u : terms(t2, left.b[i]))
                    inner += u.c * (m.rmul_basis(u.w) * ch.a.basis[q] * m.rmul_basis(u.v));
                for (size_t j = 0; j < rc.e.size(); ++j) {
                    Vec x = a_coords(m.rmul(r_in_m(rc.e[j])) * inner);
                    Vec y = a_coords(m.lmul(r_in_m(rc.f[j])) * left.beta[i]);
                    col = col + kron(x, y);
                }
            }
            c.expect(k, vec_equal(col, A.delta.col(q)), at("a", q));
        }
        int k2 = c.open("B: Delta(b) = sum (b_i^1 (x) b_i^2 e_j) (x) (f_j beta_i(b^1) (x) b^2)");
        for (int q = 0; q < db; ++q) {
            Vec col(static_cast<size_t>(db) * db);
            for (int i = 0; i < left.size(); ++i)
                for (size_t j = 0; j < rc.e.size(); ++j) {
                    Vec ej = r_in_m(rc.e[j]), fj = r_in_m(rc.f[j]);
                    Vec x(t2.dim()), y(t2.dim());
                    for (const auto& u : terms(t2, left.b[i])) t2.add_pure(x, u.c, m.basis(u.v), m.mul(m.basis(u.w), ej));
                    for (const auto& u : terms(t2, bs[q]))
                        t2.add_pure(y, u.c, m.mul(fj, left.beta[i] * m.basis(u.v)), m.basis(u.w));
                    col = col + kron(b_coords(x), b_coords(y));
                }
            c.expect(k2, vec_equal(col, B.delta.col(q)), at("b", q));
        }
        int k3 = c.open("A: eps(a) = phi(a(1))");
        for (int q = 0; q < da; ++q) c.expect(k3, A.eps[q] == phi_of(ch.a.basis[q] * m.unit()), at("a", q));
        Mat mu = multiplication_map(e, t2);
        int k4 = c.open("B: eps(b) = phi(b^1 b^2)");
        for (int q = 0; q < db; ++q) c.expect(k4, B.eps[q] == phi_of(mu * bs[q]), at("b", q));
    }

    // <b, a> = phi(b^1 a(b^2))
    rep.gram = Mat(db, da);
    for (int p = 0; p < db; ++p)
        for (int q = 0; q < da; ++q) {
            Vec v(m.dim());
            for (const auto& u : terms(t2, bs[p])) v = v + u.c * m.mul(m.basis(u.v), ch.a.basis[q] * m.basis(u.w));
            rep.gram(p, q) = phi_of(v);
        }
    const Mat& G = rep.gram;
    c.add("pairing nondegenerate", rank(G) == da && da == db, "rank " + std::to_string(rank(G)));
    {
        int k1 = c.open("<b, a_(1)> <c, a_(2)> = <bc, a>");
        int k2 = c.open("<b_(1), a> <b_(2), a'> = <b, a a'>");
        for (int q = 0; q < da; ++q) {
            Vec d = A.delta.col(q);
            for (int p = 0; p < db; ++p)
                for (int p2 = 0; p2 < db; ++p2) {
                    Scalar lhs;
                    for (int ij = 0; ij < da * da; ++ij)
                        if (!d[ij].is_zero()) lhs += d[ij] * G(p, ij / da) * G(p2, ij % da);
                    Vec bc = to_dense(B.alg.basis_product(p, p2), db);
                    Scalar rhs;
                    for (int z = 0; z < db; ++z)
                        if (!bc[z].is_zero()) rhs += bc[z] * G(z, q);
                    c.expect(k1, lhs == rhs, at("b", p, "c", p2) + ", " + at("a", q));
                }
        }
        for (int p = 0; p < db; ++p) {
            Vec d = B.delta.col(p);
            for (int q = 0; q < da; ++q)
                for (int q2 = 0; q2 < da; ++q2) {
                    Scalar lhs;
                    for (int ij = 0; ij < db * db; ++ij)
                        if (!d[ij].is_zero()) lhs += d[ij] * G(ij / db, q) * G(ij % db, q2);
                    Vec aa = to_dense(A.alg.basis_product(q, q2), da);
                    Scalar rhs;
                    for (int z = 0; z < da; ++z)
                        if (!aa[z].is_zero()) rhs += aa[z] * G(p, z);
                    c.expect(k2, lhs == rhs, at("b", p) + ", " + at("a", q, "a'", q2));
                }
        }
        int k3 = c.open("<1_B, a> = eps(a), <b, 1_A> = eps(b)");
        for (int q = 0; q < da; ++q) c.expect(k3, dot(B.alg.unit(), G.col(q)) == A.eps[q], at("a", q));
        for (int p = 0; p < db; ++p) c.expect(k3, dot(G.row(p), A.alg.unit()) == B.eps[p], at("b", p));
    }

    // Pi^L(a) = lambda(a(1))
    {
        int k = c.open("A: Pi^L(a) = lambda(a(1))");
        for (int q = 0; q < da; ++q) {
            auto r = ch.r.from_ambient(ch.a.basis[q] * m.unit());
            c.expect(k, r && vec_equal(A.pi_l(A.alg.basis(q)), ch.lambda_r * *r), at("a", q));
        }
        for (const WeakBialgebra* w : {&A, &B}) {
            Mat pl = pi_matrix(*w, true), pr = pi_matrix(*w, false);
            std::string nm = w == &A ? "A: " : "B: ";
            c.add(nm + "Pi^L, Pi^R idempotent, Pi^L(1) = Pi^R(1) = 1",
                  pl * pl == pl && pr * pr == pr && vec_equal(pl * w->alg.unit(), w->alg.unit()) &&
                      vec_equal(pr * w->alg.unit(), w->alg.unit()));
        }
    }

    // E as a nondegenerate left integral
    rep.integral = a_coords(ei);
    {
        const Vec& ev = rep.integral;
        int k = c.open("E left integral: a E = Pi^L(a) E");
        for (int q = 0; q < da; ++q) {
            Vec x = A.alg.basis(q);
            c.expect(k, vec_equal(A.alg.mul(x, ev), A.alg.mul(A.pi_l(x), ev)), at("a", q));
        }
        Vec de = A.coproduct(ev);
        Mat harp(da, db);
        int k2 = c.open("E <- b = b^1 E(b^2 -)");
        for (int p = 0; p < db; ++p) {
            Vec lhs(da);
            for (int ij = 0; ij < da * da; ++ij)
                if (!de[ij].is_zero()) lhs[ij % da] += de[ij] * G(p, ij / da);
            Mat tri(m.dim(), m.dim());
            for (const auto& u : terms(t2, bs[p])) tri += u.c * (m.lmul_basis(u.v) * ei * m.lmul_basis(u.w));
            Vec rhs = a_coords(tri);
            c.expect(k2, vec_equal(lhs, rhs), at("b", p));
            harp.set_col(p, rhs);
        }
        c.add("b -> E <| b surjective onto A", rank(harp) == da, "rank " + std::to_string(rank(harp)));
        int k3 = c.open("E <| (sum_j alpha(x_j) (x) y_j) = alpha");
        for (int q = 0; q < da; ++q) {
            Mat tri(m.dim(), m.dim());
            for (int j = 0; j < sys.size(); ++j)
                tri += m.lmul(ch.a.basis[q] * sys.x[j]) * ei * m.lmul(sys.y[j]);
            c.expect(k3, tri == ch.a.basis[q], at("a", q));
        }
    }

    AntipodeSolve sa = solve_antipode(A), sb = solve_antipode(B);
    c.prefix = "A: ";
    c.append(sa.checks);
    c.prefix = "B: ";
    c.append(sb.checks);
    c.prefix = "";
    rep.s_a = sa.s;
    rep.s_b = sb.s;
    rep.s_a_kernel = sa.kernel_dim;
    rep.s_b_kernel = sb.kernel_dim;
    if (rep.s_a && rep.s_b) {
        rep.s_squared_identity = *rep.s_a * *rep.s_a == Mat::identity(da) && *rep.s_b * *rep.s_b == Mat::identity(db);
        c.add("<S(b), a> = <b, S(a)>", rep.s_b->transpose() * G == G * *rep.s_a);
    }
    (void)dr;
    rep.checks = std::move(c.out);
    return rep;
}

// ---------------------------------------------------------------- the irreducible case

bool HopfReport::ok() const { return !refused() && weak.ok() && all_ok(checks); }

HopfReport hopf_from_irreducible(const Extension& e, const Chain& ch, const FrobeniusSystem& sys, const Quasibasis& left,
                                 const ABialgebroid& abg, const BBialgebroid& bbg) {
    HopfReport rep;
    if (ch.r.alg.dim() != 1) {
        rep.refusal = "not irreducible: dim R = " + std::to_string(ch.r.alg.dim());
        return rep;
    }
    rep.weak = weak_hopf_verify(e, ch, sys, left, abg, bbg);
    if (rep.weak.refused()) {
        rep.refusal = rep.weak.refusal;
        return rep;
    }
    const WeakBialgebra& A = rep.weak.a;
    const Algebra& aa = A.alg;
    const Algebra& m = e.m;
    const int da = A.dim();
    const TensorQuotient& t2 = ch.t2;
    Mat ei = e.iota * sys.e;
    const Vec& ev = rep.weak.integral;
    Checks c;

    c.add("Delta(1) = 1 (x) 1", !A.genuinely_weak());
    {
        int k = c.open("eps(ab) = eps(a) eps(b)");
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                c.expect(k, A.counit(to_dense(aa.basis_product(i, j), da)) == A.eps[i] * A.eps[j], at("a", i, "b", j));
    }

    // psi(alpha) = sum_j alpha(x_j) y_j in K 1
    rep.psi = Vec(da);
    {
        int k = c.open("psi(alpha) in K 1");
        for (int q = 0; q < da; ++q) {
            Vec v(m.dim());
            for (int j = 0; j < sys.size(); ++j) v = v + m.mul(ch.a.basis[q] * sys.x[j], sys.y[j]);
            auto r = ch.r.from_ambient(v);
            if (!r) {
                c.fail(k, at("alpha", q));
                continue;
            }
            rep.psi[q] = dot(rep.weak.r_coords.phi, *r);
            c.expect(k, vec_equal(v, rep.psi[q] * m.unit()), at("alpha", q));
        }
    }
    auto psi = [&](const Vec& x) { return dot(rep.psi, x); };
    auto a_coords = [&](const Mat& f) {
        auto cc = ch.a.coords(f);
        if (!cc) throw std::logic_error("hopf_from_irreducible: map outside A");
        return *cc;
    };

    // dual bases {b_i^1 E(b_i^2 -)}, {beta_i}
    {
        std::vector<Vec> u, v;
        for (int i = 0; i < left.size(); ++i) {
            Mat tri(m.dim(), m.dim());
            for (const auto& t : terms(t2, left.b[i])) tri += t.c * (m.lmul_basis(t.v) * ei * m.lmul_basis(t.w));
            u.push_back(a_coords(tri));
            v.push_back(a_coords(left.beta[i]));
        }
        int k = c.open("psi Frobenius with dual bases b_i^1 E(b_i^2 -), beta_i");
        for (int q = 0; q < da; ++q) {
            Vec x = aa.basis(q), l(da), r(da);
            for (int i = 0; i < left.size(); ++i) {
                l = l + psi(aa.mul(x, u[i])) * v[i];
                r = r + psi(aa.mul(v[i], x)) * u[i];
            }
            c.expect(k, vec_equal(l, x) && vec_equal(r, x), at("alpha", q));
        }
    }
    {
        int k = c.open("a_(1) psi(a_(2)) = psi(a) 1_A");
        int k2 = c.open("psi(a E) = eps(a)");
        for (int q = 0; q < da; ++q) {
            Vec d = A.delta.col(q), l(da);
            for (int ij = 0; ij < da * da; ++ij)
                if (!d[ij].is_zero()) l = l + (d[ij] * rep.psi[ij % da]) * aa.basis(ij / da);
            c.expect(k, vec_equal(l, rep.psi[q] * aa.unit()), at("a", q));
            c.expect(k2, psi(aa.mul(aa.basis(q), ev)) == A.eps[q], at("a", q));
        }
    }

    // S(a) = sum_i psi(a beta_i) E(- b_i^1) b_i^2
    rep.s = Mat(da, da);
    {
        std::vector<Vec> first, second;
        for (int i = 0; i < left.size(); ++i) {
            Mat g(m.dim(), m.dim());
            for (const auto& t : terms(t2, left.b[i])) g += t.c * (m.rmul_basis(t.w) * ei * m.rmul_basis(t.v));
            first.push_back(a_coords(g));
            second.push_back(a_coords(left.beta[i]));
        }
        for (int q = 0; q < da; ++q) {
            Vec col(da);
            for (int i = 0; i < left.size(); ++i) col = col + psi(aa.mul(aa.basis(q), second[i])) * first[i];
            rep.s.set_col(q, col);
        }
        Vec de = A.coproduct(ev);
        int k = c.open("S(a) = E_(1) psi(a E_(2))");
        for (int q = 0; q < da; ++q) {
            Vec col(da);
            for (int ij = 0; ij < da * da; ++ij)
                if (!de[ij].is_zero()) col = col + (de[ij] * psi(aa.mul(aa.basis(q), aa.basis(ij % da)))) * aa.basis(ij / da);
            c.expect(k, vec_equal(col, rep.s.col(q)), at("a", q));
        }
    }
    {
        int k = c.open("S * id = id * S = u eps");
        for (int q = 0; q < da; ++q) {
            Vec d = A.delta.col(q), l(da), r(da);
            for (int ij = 0; ij < da * da; ++ij) {
                if (d[ij].is_zero()) continue;
                l = l + d[ij] * aa.mul(rep.s.col(ij / da), aa.basis(ij % da));
                r = r + d[ij] * aa.mul(aa.basis(ij / da), rep.s.col(ij % da));
            }
            Vec u = A.eps[q] * aa.unit();
            c.expect(k, vec_equal(l, u) && vec_equal(r, u), at("a", q));
        }
    }
    c.add("S from the formula equals the solved antipode", rep.weak.s_a && *rep.weak.s_a == rep.s);
    rep.checks = std::move(c.out);
    return rep;
}

std::vector<AxiomResult> conjugation_identity(const Extension& e, const Chain& ch, const Tower& t, const TowerMaps& maps,
                                              const HopfReport& h) {
    (void)ch;
    Checks c;
    if (h.refused()) {
        c.add("Hopf structure available", false, h.refusal);
        return c.out;
    }
    const Algebra& m = e.m;
    const Algebra& m1 = t.m1;
    const WeakBialgebra& A = h.weak.a;
    const int da = A.dim();
    int k = c.open("E_M(a m e_1) = a_(1) m S^(a_(2))");
    for (int q = 0; q < da; ++q) {
        Vec a = maps.psi_a.col(q), d = A.delta.col(q);
        for (int j = 0; j < m.dim(); ++j) {
            Vec mj = t.in_m1(m.basis(j));
            Vec lhs = t.in_m1(t.e_m * m1.mul(m1.mul(a, mj), t.e1));
            Vec rhs(m1.dim());
            for (int ij = 0; ij < da * da; ++ij) {
                if (d[ij].is_zero()) continue;
                Vec sa = maps.psi_a * (h.s * A.alg.basis(ij % da));
                rhs = rhs + d[ij] * m1.mul(m1.mul(maps.psi_a.col(ij / da), mj), sa);
            }
            c.expect(k, vec_equal(lhs, rhs), at("a", q, "m", j));
        }
    }
    return c.out;
}

// ---------------------------------------------------------------- the biseparable case

bool PairingIdentityReport::ok() const { return refusal.empty() && all_ok(checks); }

PairingIdentityReport biseparable_pairing_check(const Extension& e, const Chain& ch, const Profile& p, const Tower& t,
                                                const TowerMaps& maps) {
    PairingIdentityReport rep;
    if (ch.r.alg.dim() != 1)
        rep.refusal = "R not trivial";
    else if (!p.left_d2 || !p.right_d2)
        rep.refusal = "not D2";
    else if (!p.split || !p.separable)
        rep.refusal = "not biseparable";
    if (!rep.refusal.empty()) return rep;
    const Algebra& m = e.m;
    const Algebra& m2 = t.m2;
    const std::vector<Vec> bs = ch.b_space.basis();
    const int da = ch.a.alg.dim(), db = ch.b.dim();
    Vec e1e2 = m2.mul(t.e1_in_m2(), t.e2);
    Mat mu = multiplication_map(e, ch.t2);
    Checks c;
    int k = c.open("E_M E_{M_1}(psi_B(b) e_1 e_2 phi_A(a)) = b^1 a(b^2)");
    int k2 = c.open("E_{M_1}(e_2 psi_B(b)) = eps_B(b) 1");
    for (int p2 = 0; p2 < db; ++p2) {
        Vec pb = maps.psi_b.col(p2), left = m2.mul(pb, e1e2);
        for (int q = 0; q < da; ++q) {
            Vec lhs = t.e_m * (t.e_m1 * m2.mul(left, t.lift(maps.phi_a.col(q))));
            Vec rhs(m.dim());
            for (const auto& u : terms(ch.t2, bs[p2])) rhs = rhs + u.c * m.mul(m.basis(u.v), ch.a.basis[q] * m.basis(u.w));
            c.expect(k, vec_equal(lhs, rhs), at("b", p2, "a", q));
        }
        c.expect(k2, vec_equal(t.e_m1 * m2.mul(t.e2, pb), t.in_m1(mu * bs[p2])), at("b", p2));
    }
    rep.checks = std::move(c.out);
    return rep;
}

bool QfReport::ok() const { return all_ok(checks); }

QfReport qf_instance_check(const Profile& p) {
    QfReport rep;
    rep.d2 = p.left_d2 && p.right_d2;
    rep.biseparable = p.split && p.separable && p.left_projective && p.right_projective;
    Checks c;
    c.add("left D2 biseparable => left QF", !(p.left_d2 && rep.biseparable) || p.left_qf);
    c.add("right D2 biseparable => right QF", !(p.right_d2 && rep.biseparable) || p.right_qf);
    c.add("D2 => depth three", !rep.d2 || (p.left_d3 && p.right_d3));
    rep.checks = std::move(c.out);
    return rep;
}

bool SeparabilityReport::ok() const { return all_ok(checks); }

SeparabilityReport split_separable_criteria(const Extension& e, const Chain& ch, const FrobeniusSystem& sys, const Profile& p,
                                            const WeakHopfReport& w) {
    SeparabilityReport rep;
    rep.split = p.split;
    rep.separable = p.separable;
    rep.balanced = p.balanced;
    Checks c;
    if (w.refused()) {
        c.add("quantum structure available", false, w.refusal);
        rep.checks = std::move(c.out);
        return rep;
    }
    rep.a_separable = separability_idempotent(w.a.alg).has_value();
    rep.b_separable = separability_idempotent(w.b.alg).has_value();
    rep.left_integral_a = normalized_left_integral(w.a);
    rep.right_integral_b = normalized_right_integral(w.b);
    c.add("A separable <=> normalized left integral in A", rep.a_separable == rep.left_integral_a.has_value());
    c.add("B separable <=> normalized right integral in B", rep.b_separable == rep.right_integral_b.has_value());

    const Algebra& m = e.m;
    const int dr = ch.r.alg.dim();
    Mat ei = e.iota * sys.e;
    // d in R with E(d) = 1, then E(d -) is a normalized left integral
    {
        Mat er(m.dim(), dr);
        for (int k = 0; k < dr; ++k) er.set_col(k, ei * ch.r_elem(ch.r.alg.basis(k)));
        auto d = solve(er, m.unit());
        c.add("split <=> E(d) = 1 for some d in R", d.has_value() == rep.split);
        if (d) {
            auto l = ch.a.coords(ei * m.lmul(ch.r_elem(*d)));
            bool ok = l && vec_equal(w.a.pi_l(*l), w.a.alg.unit());
            if (ok)
                for (int q = 0; q < w.a.dim() && ok; ++q)
                    ok = vec_equal(w.a.alg.mul(w.a.alg.basis(q), *l), w.a.alg.mul(w.a.pi_l(w.a.alg.basis(q)), *l));
            c.add("E(d -) normalized left integral", ok);
        }
    }
    // d in R with sum_j x_j d y_j = 1, then sum_j x_j (x) d y_j is a normalized right integral
    {
        Mat xr(m.dim(), dr);
        for (int k = 0; k < dr; ++k) {
            Vec r = ch.r_elem(ch.r.alg.basis(k)), col(m.dim());
            for (int j = 0; j < sys.size(); ++j) col = col + m.mul(m.mul(sys.x[j], r), sys.y[j]);
            xr.set_col(k, col);
        }
        auto d = solve(xr, m.unit());
        c.add("separable <=> sum_j x_j d y_j = 1 for some d in R", d.has_value() == rep.separable);
        if (d) {
            Vec t(ch.t2.dim()), dm = ch.r_elem(*d);
            for (int j = 0; j < sys.size(); ++j) ch.t2.add_pure(t, e.field().one(), sys.x[j], m.mul(dm, sys.y[j]));
            auto l = ch.b_coords(t);
            bool ok = l && vec_equal(w.b.pi_r(*l), w.b.alg.unit());
            if (ok)
                for (int q = 0; q < w.b.dim() && ok; ++q)
                    ok = vec_equal(w.b.alg.mul(*l, w.b.alg.basis(q)), w.b.alg.mul(*l, w.b.pi_r(w.b.alg.basis(q))));
            c.add("sum_j x_j (x) d y_j normalized right integral", ok);
        }
    }
    c.add("split => A separable", !rep.split || rep.a_separable);
    c.add("separable => B separable", !rep.separable || rep.b_separable);
    if (rep.balanced) {
        c.add("A separable => split (M_N balanced)", !rep.a_separable || rep.split);
        c.add("B separable => separable (M_N balanced)", !rep.b_separable || rep.separable);
    }
    if (dr == 1 && e.field().rational()) c.add("irreducible, characteristic zero: split <=> separable", rep.split == rep.separable);
    rep.checks = std::move(c.out);
    return rep;
}

std::vector<IrreducibleHit> irreducible_search(int random_count, uint64_t seed) {
    std::vector<IrreducibleHit> hits;
    auto consider = [&](std::string name, Extension x) {
        Chain ch = build_chain(x);
        if (ch.r.alg.dim() != 1) return;
        if (!d2_quasibasis(x, ch, true) || !d2_quasibasis(x, ch, false)) return;
        if (!find_frobenius_system(x, seed).system) return;
        hits.push_back({std::move(name), std::move(x)});
    };
    for (const auto& g : gallery()) consider(g.name, gallery_extension(g.name, seed));
    for (int i = 0; i < random_count; ++i) {
        Extension x = random_extension(seed + static_cast<uint64_t>(i));
        consider("random:" + std::to_string(seed + i), std::move(x));
    }
    return hits;
}

}  // namespace d2
