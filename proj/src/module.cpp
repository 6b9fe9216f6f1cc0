#include "d2/module.hpp"

namespace d2 {

Mat Bimodule::left_action(const Vec& l) const {
    Mat m = Mat::identity(dim);
    if (left.empty()) return l.empty() ? m : l[0] * m;
    m = Mat(dim, dim);
    for (size_t k = 0; k < left.size(); ++k)
        if (!l[k].is_zero()) m += l[k] * left[k];
    return m;
}

Mat Bimodule::right_action(const Vec& r) const {
    Mat m = Mat::identity(dim);
    if (right.empty()) return r.empty() ? m : r[0] * m;
    m = Mat(dim, dim);
    for (size_t k = 0; k < right.size(); ++k)
        if (!r[k].is_zero()) m += r[k] * right[k];
    return m;
}

Bimodule make_bimodule(const Algebra* l, const Algebra* r, int dim, const std::function<Mat(int)>& left_basis,
                       const std::function<Mat(int)>& right_basis, std::string name) {
    Bimodule b;
    b.dim = dim;
    b.name = std::move(name);
    if (l) {
        for (int k = 0; k < l->dim(); ++k) b.left.push_back(left_basis(k));
        for (const auto& g : l->generators()) b.left_gen.push_back(b.left_action(g));
    }
    if (r) {
        for (int k = 0; k < r->dim(); ++k) b.right.push_back(right_basis(k));
        for (const auto& g : r->generators()) b.right_gen.push_back(b.right_action(g));
    }
    return b;
}

std::string check_bimodule(const Bimodule& x, const Algebra* l, const Algebra* r) {
    Mat id = Mat::identity(x.dim);
    if (l) {
        if (x.left_action(l->unit()) != id) return x.name + ": left action not unital";
        for (int i = 0; i < l->dim(); ++i)
            for (int j = 0; j < l->dim(); ++j)
                if (x.left_action(to_dense(l->basis_product(i, j), l->dim())) != x.left[i] * x.left[j])
                    return x.name + ": left action not associative";
    }
    if (r) {
        if (x.right_action(r->unit()) != id) return x.name + ": right action not unital";
        for (int i = 0; i < r->dim(); ++i)
            for (int j = 0; j < r->dim(); ++j)
                if (x.right_action(to_dense(r->basis_product(i, j), r->dim())) != x.right[j] * x.right[i])
                    return x.name + ": right action not associative";
    }
    for (const auto& a : x.left_gen)
        for (const auto& b : x.right_gen)
            if (a * b != b * a) return x.name + ": actions do not commute";
    return {};
}

namespace {

// equations of F A = B F for F: dim dx -> dy (row-major unknowns)
void intertwine(const Mat& ax, const Mat& by, int dx, int dy, std::vector<SparseVec>& eqs) {
    std::vector<SparseVec> acol(dx), brow(dy);
    for (int x = 0; x < dx; ++x) acol[x] = ax.sparse_col(x);
    for (int y = 0; y < dy; ++y) brow[y] = to_sparse(by.row(y));
    for (int y = 0; y < dy; ++y)
        for (int x = 0; x < dx; ++x) {
            std::vector<std::pair<int, Scalar>> t;
            for (const auto& [k, c] : acol[x]) t.emplace_back(y * dx + k, c);
            for (const auto& [k, c] : brow[y]) t.emplace_back(k * dx + x, -c);
            SparseVec e = make_sparse(std::move(t));
            if (!e.empty()) eqs.push_back(std::move(e));
        }
}

}  // namespace

HomSpace hom_bimodule(const Bimodule& x, const Bimodule& y, Exec exec) {
    if (x.left_gen.size() != y.left_gen.size() || x.right_gen.size() != y.right_gen.size())
        throw std::invalid_argument("hom_bimodule: acting algebras differ");
    std::vector<SparseVec> eqs;
    for (size_t g = 0; g < x.left_gen.size(); ++g) intertwine(x.left_gen[g], y.left_gen[g], x.dim, y.dim, eqs);
    for (size_t g = 0; g < x.right_gen.size(); ++g) intertwine(x.right_gen[g], y.right_gen[g], x.dim, y.dim, eqs);
    HomSpace h;
    h.rows = y.dim;
    h.cols = x.dim;
    h.flat = sparse_kernel(eqs, x.dim * y.dim, exec);
    for (const auto& v : h.flat.basis()) h.basis.push_back(Mat::unflatten(v, y.dim, x.dim));
    return h;
}

std::optional<SummandWitness> similar_summand(const Bimodule& x, const Bimodule& y) {
    if (y.dim == 0) return SummandWitness{};
    HomSpace h1 = hom_bimodule(x, y), h2 = hom_bimodule(y, x), end = hom_bimodule(y, y);
    if (h1.dim() == 0 || h2.dim() == 0) return std::nullopt;
    const auto& piv = end.flat.pivots();
    const int d = end.dim();
    Vec target(d);
    {
        Vec id = Mat::identity(y.dim).flatten();
        for (int i = 0; i < d; ++i) target[i] = id[piv[i]];
    }
    Subspace span(d, Exec::serial);
    std::vector<std::pair<int, int>> used;
    std::vector<Vec> used_coords;
    for (int i = 0; i < h1.dim(); ++i)
        for (int j = 0; j < h2.dim(); ++j) {
            const Mat& f = h1.basis[i];
            const Mat& g = h2.basis[j];
            Vec c(d);
            for (int t = 0; t < d; ++t) {
                int row = piv[t] / y.dim, col = piv[t] % y.dim;
                for (int k = 0; k < x.dim; ++k)
                    if (!f(row, k).is_zero() && !g(k, col).is_zero()) addmul(c[t], f(row, k), g(k, col));
            }
            if (!span.insert(c)) continue;
            used.emplace_back(i, j);
            used_coords.push_back(c);
            if (!span.contains(target)) continue;
            auto coef = express(used_coords, target);
            SummandWitness w;
            Mat sum(y.dim, y.dim);
            for (size_t u = 0; u < used.size(); ++u) {
                if ((*coef)[u].is_zero()) continue;
                w.f.push_back((*coef)[u] * h1.basis[used[u].first]);
                w.g.push_back(h2.basis[used[u].second]);
                sum += w.f.back() * w.g.back();
            }
            if (sum != Mat::identity(y.dim)) throw std::logic_error("similar_summand: witness does not verify");
            return w;
        }
    return std::nullopt;
}

bool h_equivalent(const Bimodule& x, const Bimodule& y) {
    return similar_summand(x, y).has_value() && similar_summand(y, x).has_value();
}

namespace {

bool invertible(const Mat& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

IsoResult isomorphic(const Bimodule& x, const Bimodule& y, uint64_t seed) {
    IsoResult r;
    if (x.dim != y.dim) {
        r.decision = Decision::no;
        r.reason = "dimensions differ";
        return r;
    }
    HomSpace h = hom_bimodule(x, y);
    if (x.dim == 0) {
        r.decision = Decision::yes;
        r.iso = Mat(0, 0);
        return r;
    }
    if (h.dim() == 0) {
        r.decision = Decision::no;
        r.reason = "no nonzero homomorphisms";
        return r;
    }
    uint32_t p = 0;
    for (const auto& b : h.basis)
        for (int i = 0; i < b.rows() && !p; ++i)
            for (int j = 0; j < b.cols() && !p; ++j) p = b(i, j).prime();
    Field f{p};
    auto combo = [&](const Vec& c) {
        Mat m(x.dim == 0 ? 0 : y.dim, x.dim);
        for (int i = 0; i < h.dim(); ++i)
            if (!c[i].is_zero()) m += c[i] * h.basis[i];
        return m;
    };
    for (const auto& c : candidate_forms(f, h.dim(), seed, 32)) {
        Mat m = combo(c);
        if (invertible(m)) {
            r.decision = Decision::yes;
            r.iso = m;
            return r;
        }
    }
    if (!similar_summand(x, y)) {
        r.decision = Decision::no;
        r.reason = "second module is not a summand of a power of the first";
        return r;
    }
    if (!similar_summand(y, x)) {
        r.decision = Decision::no;
        r.reason = "first module is not a summand of a power of the second";
        return r;
    }
    int exx = hom_bimodule(x, x).dim(), eyy = hom_bimodule(y, y).dim(), hyx = hom_bimodule(y, x).dim();
    if (exx != h.dim() || eyy != h.dim() || hyx != h.dim()) {
        r.decision = Decision::no;
        r.reason = "hom dimensions differ";
        return r;
    }
    // exhaustive evaluation: over F_p every point, over Q a grid fine enough for a
    // polynomial of degree dim in each variable
    long base = p ? p : x.dim + 1;
    long total = 1;
    for (int i = 0; i < h.dim() && total <= 20000; ++i) total *= base;
    if (total <= 20000) {
        for (long code = 1; code < total; ++code) {
            Vec c(h.dim());
            long t = code;
            for (int i = 0; i < h.dim(); ++i) {
                c[i] = f.of(t % base);
                t /= base;
            }
            Mat m = combo(c);
            if (invertible(m)) {
                r.decision = Decision::yes;
                r.iso = m;
                return r;
            }
        }
        r.decision = Decision::no;
        r.reason = "no invertible homomorphism on an exhaustive evaluation grid";
        return r;
    }
    r.decision = Decision::unknown;
    r.reason = "mutual summands with equal hom dimensions; search inconclusive";
    return r;
}

Bimodule direct_sum(const Bimodule& x, const Bimodule& y) {
    auto block = [](const Mat& a, const Mat& b) {
        Mat m(a.rows() + b.rows(), a.cols() + b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
        return m;
    };
    Bimodule s;
    s.dim = x.dim + y.dim;
    s.name = x.name + "+" + y.name;
    for (size_t k = 0; k < x.left.size(); ++k) s.left.push_back(block(x.left[k], y.left[k]));
    for (size_t k = 0; k < x.right.size(); ++k) s.right.push_back(block(x.right[k], y.right[k]));
    for (size_t k = 0; k < x.left_gen.size(); ++k) s.left_gen.push_back(block(x.left_gen[k], y.left_gen[k]));
    for (size_t k = 0; k < x.right_gen.size(); ++k) s.right_gen.push_back(block(x.right_gen[k], y.right_gen[k]));
    return s;
}

}  // namespace d2

namespace d2 {

DualizeReport dualize_via_phi(const Algebra& a, const FrobeniusCoordinates& c, const Bimodule& v) {
    Bimodule reg = make_bimodule(nullptr, &a, a.dim(), nullptr, [&](int i) { return a.rmul_basis(i); }, "A_A");
    HomSpace h = hom_bimodule(v, reg);
    DualizeReport r;
    r.hom_dim = h.dim();
    r.dual_dim = v.dim;
    Mat phi = Mat::from_rows({c.phi});
    auto back = [&](const Mat& g) {
        Mat f(a.dim(), v.dim);
        for (size_t i = 0; i < c.e.size(); ++i) {
            Mat ge = g * v.right_action(c.e[i]);
            f += Mat::from_cols({c.f[i]}) * ge;
        }
        return f;
    };
    bool ok = r.hom_dim == r.dual_dim;
    for (const auto& f : h.basis) {
        Mat g = phi * f;
        r.to_dual.push_back(g);
        ok = ok && back(g) == f;
    }
    for (int j = 0; j < v.dim; ++j) {
        Mat g(1, v.dim);
        g(0, j) = a.field().one();
        Mat f = back(g);
        r.from_dual.push_back(f);
        ok = ok && phi * f == g && h.coords(f).has_value();
    }
    r.verified = ok;
    return r;
}

}  // namespace d2
