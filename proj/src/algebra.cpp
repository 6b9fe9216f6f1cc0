#include "d2/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "d2/module.hpp"

namespace d2 {

namespace {

uint64_t splitmix(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SparseVec scaled_add(const SparseVec& a, const Scalar& s, const SparseVec& b) { return sparse_axpy(a, -s, b); }

}  // namespace

Vec random_element(const Field& f, int n, uint64_t& state, int range) {
    Vec v(n);
    for (int i = 0; i < n; ++i) {
        long x = static_cast<long>(splitmix(state) % (2 * range + 1)) - range;
        v[i] = f.of(x);
    }
    return v;
}

// ---------------------------------------------------------------- construction

Algebra Algebra::from_structure(Field f, int n, Vec unit, const std::vector<Entry>& mult, std::string name,
                                bool validate) {
    Algebra a;
    a.field_ = f;
    a.n_ = n;
    a.name_ = std::move(name);
    if (static_cast<int>(unit.size()) != n) throw AlgebraError("unit has wrong length");
    a.unit_.resize(n);
    for (int i = 0; i < n; ++i) a.unit_[i] = f.of(unit[i]);
    std::vector<std::vector<std::pair<int, Scalar>>> acc(static_cast<size_t>(n) * n);
    for (const auto& [i, j, k, c] : mult) {
        if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
            throw AlgebraError("structure constant index out of range");
        acc[static_cast<size_t>(i) * n + j].emplace_back(k, f.of(c));
    }
    a.table_.resize(acc.size());
    for (size_t t = 0; t < acc.size(); ++t) a.table_[t] = make_sparse(std::move(acc[t]));
    a.finish(validate);
    return a;
}

Algebra Algebra::from_products(Field f, int n, Vec unit, const std::function<Vec(int, int)>& prod, std::string name,
                               bool validate) {
    Algebra a;
    a.field_ = f;
    a.n_ = n;
    a.name_ = std::move(name);
    a.unit_ = std::move(unit);
    a.table_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.table_[static_cast<size_t>(i) * n + j] = to_sparse(prod(i, j));
    a.finish(validate);
    return a;
}

void Algebra::finish(bool validate) {
    if (n_ < 1 || is_zero(unit_)) throw AlgebraError("algebra must have 1 != 0");
    if (validate) {
        std::string err = check_laws();
        if (!err.empty()) throw AlgebraError(name_ + ": " + err);
    }
    compute_generators();
}

Algebra Algebra::matrix(Field f, int n) {
    std::vector<Entry> m;
    Vec unit(n * n);
    for (int i = 0; i < n; ++i) {
        unit[i * n + i] = f.one();
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) m.emplace_back(i * n + j, j * n + l, i * n + l, f.one());
    }
    return from_structure(f, n * n, unit, m, "M_" + std::to_string(n) + "(" + f.name() + ")");
}

Algebra Algebra::group(Field f, const std::vector<std::vector<int>>& table, std::string name) {
    int n = static_cast<int>(table.size());
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
        bool ok = static_cast<int>(table[i].size()) == n;
        for (int j = 0; ok && j < n; ++j) ok = table[i][j] == j && table[j][i] == j;
        if (ok) e = i;
    }
    if (e < 0) throw AlgebraError("group table has no identity element");
    std::vector<Entry> m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.emplace_back(i, j, table[i][j], f.one());
    Vec unit(n);
    unit[e] = f.one();
    return from_structure(f, n, unit, m, std::move(name));
}

Algebra Algebra::product(const Algebra& a, const Algebra& b) {
    if (!(a.field_ == b.field_)) throw AlgebraError("product of algebras over different fields");
    int n = a.n_ + b.n_;
    std::vector<Entry> m;
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j)
            for (const auto& [k, c] : a.basis_product(i, j)) m.emplace_back(i, j, k, c);
    for (int i = 0; i < b.n_; ++i)
        for (int j = 0; j < b.n_; ++j)
            for (const auto& [k, c] : b.basis_product(i, j)) m.emplace_back(a.n_ + i, a.n_ + j, a.n_ + k, c);
    Vec unit(a.unit_);
    unit.insert(unit.end(), b.unit_.begin(), b.unit_.end());
    return from_structure(a.field_, n, unit, m, a.name_ + "x" + b.name_);
}

Algebra Algebra::tensor(const Algebra& a, const Algebra& b) {
    if (!(a.field_ == b.field_)) throw AlgebraError("tensor of algebras over different fields");
    int nb = b.n_;
    std::vector<Entry> m;
    for (int i = 0; i < a.n_; ++i)
        for (int k = 0; k < a.n_; ++k)
            for (const auto& [p, c] : a.basis_product(i, k))
                for (int j = 0; j < nb; ++j)
                    for (int l = 0; l < nb; ++l)
                        for (const auto& [q, d] : b.basis_product(j, l)) m.emplace_back(i * nb + j, k * nb + l, p * nb + q, c * d);
    Vec unit(a.n_ * nb);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < nb; ++j) unit[i * nb + j] = a.unit_[i] * b.unit_[j];
    return from_structure(a.field_, a.n_ * nb, unit, m, a.name_ + "(x)" + b.name_);
}

Algebra Algebra::opposite(const Algebra& a) {
    Algebra o(a);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) o.table_[static_cast<size_t>(i) * a.n_ + j] = a.basis_product(j, i);
    o.name_ = a.name_ + "^op";
    o.compute_generators();
    return o;
}

// ---------------------------------------------------------------- arithmetic

Vec Algebra::basis(int i) const {
    Vec v(n_);
    v[i] = field_.one();
    return v;
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
    Vec r(n_);
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[j].is_zero()) continue;
            const SparseVec& t = basis_product(i, j);
            if (t.empty()) continue;
            Scalar ab = a[i] * b[j];
            for (const auto& [k, c] : t) addmul(r[k], ab, c);
        }
    }
    return r;
}

Mat Algebra::lmul(const Vec& a) const {
    Mat m(n_, n_);
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n_; ++j)
            for (const auto& [k, c] : basis_product(i, j)) addmul(m(k, j), a[i], c);
    }
    return m;
}

Mat Algebra::rmul(const Vec& a) const {
    Mat m(n_, n_);
    for (int i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n_; ++j)
            for (const auto& [k, c] : basis_product(j, i)) addmul(m(k, j), a[i], c);
    }
    return m;
}

Mat Algebra::lmul_basis(int i) const { return lmul(basis(i)); }
Mat Algebra::rmul_basis(int i) const { return rmul(basis(i)); }

bool Algebra::is_commutative() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            const auto& x = basis_product(i, j);
            const auto& y = basis_product(j, i);
            if (x.size() != y.size()) return false;
            for (size_t t = 0; t < x.size(); ++t)
                if (x[t].first != y[t].first || x[t].second != y[t].second) return false;
        }
    return true;
}

std::string Algebra::check_laws() const {
    for (int i = 0; i < n_; ++i) {
        Vec e = basis(i);
        if (!vec_equal(mul(unit_, e), e)) return "unit law fails: 1*e" + std::to_string(i) + " != e" + std::to_string(i);
        if (!vec_equal(mul(e, unit_), e)) return "unit law fails: e" + std::to_string(i) + "*1 != e" + std::to_string(i);
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const SparseVec& ij = basis_product(i, j);
            for (int k = 0; k < n_; ++k) {
                SparseVec lhs, rhs;
                for (const auto& [l, c] : ij) lhs = scaled_add(lhs, c, basis_product(l, k));
                for (const auto& [l, c] : basis_product(j, k)) rhs = scaled_add(rhs, c, basis_product(i, l));
                bool same = lhs.size() == rhs.size();
                for (size_t t = 0; same && t < lhs.size(); ++t)
                    same = lhs[t].first == rhs[t].first && lhs[t].second == rhs[t].second;
                if (!same) {
                    std::ostringstream os;
                    os << "associativity fails at basis triple (" << i << "," << j << "," << k << ")";
                    return os.str();
                }
            }
        }
    return {};
}

Subspace generated_subalgebra(const Algebra& a, const std::vector<Vec>& gens) {
    Subspace s(a.dim(), Exec::serial);
    std::vector<Vec> queue{a.unit()};
    s.insert(a.unit());
    for (size_t q = 0; q < queue.size(); ++q) {
        for (const auto& g : gens) {
            Vec w = a.mul(g, queue[q]);
            if (s.insert(w)) queue.push_back(w);
        }
    }
    return s;
}

void Algebra::compute_generators() {
    gens_.clear();
    Subspace s = generated_subalgebra(*this, gens_);
    for (int i = 0; i < n_ && s.dim() < n_; ++i) {
        Vec e = basis(i);
        if (s.contains(e)) continue;
        gens_.push_back(e);
        s = generated_subalgebra(*this, gens_);
    }
}

SubAlgebra subalgebra(const Algebra& a, const Subspace& s, std::string name) {
    std::vector<Vec> b = s.basis();
    int d = s.dim();
    auto unit = s.coords(a.unit());
    if (!unit) throw AlgebraError(name + ": subspace does not contain 1");
    SubAlgebra out;
    out.space = s;
    out.incl = Mat::from_cols(b, a.dim());
    out.alg = Algebra::from_products(
        a.field(), d, *unit,
        [&](int i, int j) {
            auto c = s.coords(a.mul(b[i], b[j]));
            if (!c) throw AlgebraError(name + ": subspace not closed under multiplication");
            return *c;
        },
        std::move(name), false);
    return out;
}

Mat MatrixAlgebra::to_mat(const Vec& c) const {
    Mat m(rows, cols);
    for (size_t i = 0; i < basis.size(); ++i)
        if (!c[i].is_zero()) m += c[i] * basis[i];
    return m;
}

MatrixAlgebra matrix_algebra(const Subspace& flat, int n, std::string name) {
    MatrixAlgebra out;
    out.space = flat;
    out.rows = out.cols = n;
    for (const auto& v : flat.basis()) out.basis.push_back(Mat::unflatten(v, n, n));
    auto unit = flat.coords(Mat::identity(n).flatten());
    if (!unit) throw AlgebraError(name + ": identity not in the span");
    uint32_t p = 0;
    for (const auto& row : flat.rows())
        for (const auto& e : row) p = p ? p : e.second.prime();
    out.alg = Algebra::from_products(
        Field{p}, flat.dim(), *unit,
        [&](int i, int j) {
            auto c = flat.coords((out.basis[i] * out.basis[j]).flatten());
            if (!c) throw AlgebraError(name + ": span not closed under composition");
            return *c;
        },
        std::move(name), false);
    return out;
}

std::string check_algebra_map(const Algebra& dom, const Algebra& cod, const Mat& m, bool anti) {
    if (m.rows() != cod.dim() || m.cols() != dom.dim()) return "map has wrong shape";
    if (!vec_equal(m * dom.unit(), cod.unit())) return "unit not preserved";
    std::vector<Vec> img;
    for (int i = 0; i < dom.dim(); ++i) img.push_back(m.col(i));
    for (int i = 0; i < dom.dim(); ++i)
        for (int j = 0; j < dom.dim(); ++j) {
            Vec lhs = m * to_dense(dom.basis_product(i, j), dom.dim());
            Vec rhs = anti ? cod.mul(img[j], img[i]) : cod.mul(img[i], img[j]);
            if (!vec_equal(lhs, rhs))
                return "not multiplicative on basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    return {};
}

// ---------------------------------------------------------------- center, separability

Subspace center(const Algebra& a) {
    std::vector<SparseVec> eqs;
    for (const auto& g : a.generators()) {
        Mat c = a.lmul(g) - a.rmul(g);
        for (int i = 0; i < c.rows(); ++i) eqs.push_back(to_sparse(c.row(i)));
    }
    return sparse_kernel(eqs, a.dim());
}

std::optional<Vec> separability_idempotent(const Algebra& a) {
    const int n = a.dim();
    std::vector<SparseVec> eqs;
    Vec rhs;
    for (const auto& g : a.generators()) {
        Mat l = a.lmul(g), r = a.rmul(g);
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < n; ++m) {
                std::vector<std::pair<int, Scalar>> t;
                for (int i = 0; i < n; ++i)
                    if (!l(k, i).is_zero()) t.emplace_back(i * n + m, l(k, i));
                for (int j = 0; j < n; ++j)
                    if (!r(m, j).is_zero()) t.emplace_back(k * n + j, -r(m, j));
                SparseVec e = make_sparse(std::move(t));
                if (!e.empty()) {
                    eqs.push_back(std::move(e));
                    rhs.push_back(Scalar());
                }
            }
    }
    std::vector<std::vector<std::pair<int, Scalar>>> mu(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, c] : a.basis_product(i, j)) mu[k].emplace_back(i * n + j, c);
    for (int k = 0; k < n; ++k) {
        eqs.push_back(make_sparse(std::move(mu[k])));
        rhs.push_back(a.unit()[k]);
    }
    return sparse_solve(eqs, rhs, n * n);
}

// ---------------------------------------------------------------- Frobenius forms

Scalar apply_form(const Vec& phi, const Vec& x) {
    Scalar s;
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero() && !phi[i].is_zero()) addmul(s, phi[i], x[i]);
    return s;
}

Mat gram(const Algebra& a, const Vec& phi) {
    const int n = a.dim();
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, c] : a.basis_product(i, j)) addmul(g(i, j), phi[k], c);
    return g;
}

std::string check_frobenius(const Algebra& a, const FrobeniusCoordinates& c) {
    if (c.e.size() != c.f.size()) return "dual bases of different lengths";
    for (int r = 0; r < a.dim(); ++r) {
        Vec x = a.basis(r);
        Vec s1(a.dim()), s2(a.dim());
        for (size_t i = 0; i < c.e.size(); ++i) {
            axpy(s1, apply_form(c.phi, a.mul(x, c.e[i])), c.f[i]);
            axpy(s2, apply_form(c.phi, a.mul(c.f[i], x)), c.e[i]);
        }
        if (!vec_equal(s1, x)) return "sum phi(r e_i) f_i != r at basis element " + std::to_string(r);
        if (!vec_equal(s2, x)) return "sum e_i phi(f_i r) != r at basis element " + std::to_string(r);
    }
    if (c.index_one) {
        Vec s(a.dim());
        for (size_t i = 0; i < c.e.size(); ++i) s = s + a.mul(c.e[i], c.f[i]);
        if (!vec_equal(s, a.unit())) return "sum e_i f_i != 1";
    }
    return {};
}

std::optional<FrobeniusCoordinates> coordinates_from_form(const Algebra& a, const Vec& phi) {
    auto gi = inverse(gram(a, phi));
    if (!gi) return std::nullopt;
    FrobeniusCoordinates c;
    c.phi = phi;
    for (int i = 0; i < a.dim(); ++i) {
        c.e.push_back(a.basis(i));
        c.f.push_back(gi->row(i));
    }
    return c;
}

std::vector<Vec> candidate_forms(const Field& f, int n, uint64_t seed, int random_count) {
    std::vector<Vec> out;
    for (int i = 0; i < n; ++i) {
        Vec v(n);
        v[i] = f.one();
        out.push_back(v);
    }
    out.push_back(Vec(n, f.one()));
    uint64_t st = seed;
    for (int t = 0; t < random_count; ++t) out.push_back(random_element(f, n, st));
    if (f.p && n <= 4) {
        long total = 1;
        for (int i = 0; i < n; ++i) total *= f.p;
        if (total <= 4096)
            for (long code = 1; code < total; ++code) {
                Vec v(n);
                long c = code;
                for (int i = 0; i < n; ++i) {
                    v[i] = f.of(c % f.p);
                    c /= f.p;
                }
                out.push_back(v);
            }
    }
    return out;
}

FrobeniusSearch frobenius_coordinates(const Algebra& a, uint64_t seed) {
    FrobeniusSearch res;
    for (const auto& phi : candidate_forms(a.field(), a.dim(), seed)) {
        if (auto c = coordinates_from_form(a, phi)) {
            res.coords = std::move(c);
            return res;
        }
    }
    // A is Frobenius iff A_A is isomorphic to its K-dual as a right A-module
    Bimodule reg = make_bimodule(nullptr, &a, a.dim(), nullptr, [&](int i) { return a.rmul_basis(i); }, "A_A");
    Bimodule dual = make_bimodule(nullptr, &a, a.dim(), nullptr, [&](int i) { return a.lmul_basis(i).transpose(); }, "D(A)_A");
    IsoResult iso = isomorphic(reg, dual, seed);
    if (iso.decision == Decision::yes) {
        Vec phi = *iso.iso * a.unit();
        if (auto c = coordinates_from_form(a, phi)) {
            res.coords = std::move(c);
            return res;
        }
    }
    res.certified_none = iso.decision == Decision::no;
    res.note = iso.reason;
    return res;
}

NondegeneracyFlags nondegenerate_form_check(const Algebra& a, const Vec& phi) {
    Mat g = gram(a, phi);
    NondegeneracyFlags fl;
    // left: phi(x A) = 0 forces x = 0, i.e. x^T G = 0 only for x = 0
    fl.left = kernel(g.transpose()).dim() == 0;
    fl.right = kernel(g).dim() == 0;
    return fl;
}

// ---------------------------------------------------------------- index one

namespace {

// returns n when a is M_n in the matrix-unit basis used by Algebra::matrix
int standard_matrix_size(const Algebra& a) {
    int n = 1;
    while (n * n < a.dim()) ++n;
    if (n * n != a.dim()) return 0;
    Algebra m = Algebra::matrix(a.field(), n);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const auto& x = a.basis_product(i, j);
            const auto& y = m.basis_product(i, j);
            if (x.size() != y.size()) return 0;
            for (size_t t = 0; t < x.size(); ++t)
                if (x[t].first != y[t].first || x[t].second != y[t].second) return 0;
        }
    return n;
}

bool is_split_commutative(const Algebra& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            const auto& x = a.basis_product(i, j);
            if (i == j) {
                if (x.size() != 1 || x[0].first != i || !x[0].second.is_one()) return false;
            } else if (!x.empty()) {
                return false;
            }
        }
    return vec_equal(a.unit(), Vec(a.dim(), a.field().one()));
}

// replace (phi, e, f) by (phi(d^-1 .), e, d f) for some invertible d with sum e_i d f_i = 1
std::optional<FrobeniusCoordinates> correct_index(const Algebra& a, const FrobeniusCoordinates& c, uint64_t seed) {
    const int n = a.dim();
    // column k of the system: sum_i e_i b_k f_i
    std::vector<Vec> cols;
    for (int k = 0; k < n; ++k) {
        Vec s(n);
        Vec bk = a.basis(k);
        for (size_t i = 0; i < c.e.size(); ++i) s = s + a.mul(a.mul(c.e[i], bk), c.f[i]);
        cols.push_back(s);
    }
    Mat sys = Mat::from_cols(cols, n);
    auto d0 = solve(sys, a.unit());
    if (!d0) return std::nullopt;
    Subspace ker = kernel(sys);
    uint64_t st = seed;
    for (int attempt = 0; attempt < 32; ++attempt) {
        Vec d = *d0;
        if (attempt > 0 && ker.dim() > 0) {
            Vec r = random_element(a.field(), ker.dim(), st);
            d = d + ker.combine(r);
        }
        auto linv = inverse(a.lmul(d));
        if (!linv) continue;
        Vec dinv = *linv * a.unit();
        FrobeniusCoordinates out;
        out.phi = Vec(n);
        // phi'(x) = phi(d^-1 x)
        Mat l = a.lmul(dinv);
        for (int j = 0; j < n; ++j) out.phi[j] = apply_form(c.phi, l.col(j));
        out.e = c.e;
        for (const auto& fi : c.f) out.f.push_back(a.mul(d, fi));
        out.index_one = true;
        if (check_frobenius(a, out).empty()) return out;
    }
    return std::nullopt;
}

}  // namespace

FrobeniusCoordinates m2_f2_coordinates(const Algebra& m2) {
    auto u = [&](int i, int j) { return m2.basis((i - 1) * 2 + (j - 1)); };
    FrobeniusCoordinates c;
    c.phi = Vec(4, m2.field().zero());
    c.phi[0] = c.phi[1] = c.phi[2] = m2.field().one();
    c.e = {u(1, 1), u(1, 2), u(1, 2), u(2, 2), u(2, 2), u(2, 1)};
    c.f = {u(2, 1), u(1, 1), u(2, 1), u(1, 2), u(2, 2), u(2, 2)};
    c.index_one = true;
    return c;
}

IndexOneResult index_one_coordinates(const Algebra& a, uint64_t seed) {
    IndexOneResult res;
    if (!separability_idempotent(a)) {
        res.note = "not separable";
        return res;
    }
    const Field& f = a.field();
    auto accept = [&](FrobeniusCoordinates c, std::string method) {
        c.index_one = true;
        if (check_frobenius(a, c).empty()) {
            res.coords = std::move(c);
            res.method = std::move(method);
            return true;
        }
        return false;
    };
    if (is_split_commutative(a)) {
        FrobeniusCoordinates c;
        c.phi = Vec(a.dim(), f.one());
        for (int i = 0; i < a.dim(); ++i) {
            c.e.push_back(a.basis(i));
            c.f.push_back(a.basis(i));
        }
        if (accept(c, "sum functional")) return res;
    }
    if (int n = standard_matrix_size(a)) {
        if (f.p == 2 && n == 2 && accept(m2_f2_coordinates(a), "char-2 matrix coordinates")) return res;
        // trace with matrix-unit dual bases, rescaled by D = diag(d_1, ..., d_n)
        Vec dvals(n, f.one());
        if (f.p == 0 || n % f.p != 0) {
            for (auto& x : dvals) x = f.one() / f.of(n);
        } else if (f.p >= 3) {
            dvals[0] = f.of(2);
        }
        Scalar tot;
        for (auto& x : dvals) tot += x;
        if (tot.is_one()) {
            FrobeniusCoordinates c;
            c.phi = Vec(n * n);
            for (int i = 0; i < n; ++i) c.phi[i * n + i] = f.one() / dvals[i];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    c.e.push_back(a.basis(i * n + j));
                    c.f.push_back(dvals[j] * a.basis(j * n + i));
                }
            if (accept(c, "corrected trace")) return res;
        }
    }
    for (const auto& phi : candidate_forms(f, a.dim(), seed)) {
        auto c = coordinates_from_form(a, phi);
        if (!c) continue;
        if (auto d = correct_index(a, *c, seed)) {
            res.coords = std::move(d);
            res.method = "search";
            return res;
        }
    }
    res.note = "separable, index-one coordinates not found";
    return res;
}

}  // namespace d2
