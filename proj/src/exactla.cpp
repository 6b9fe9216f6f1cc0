#include "d2/exactla.hpp"

#include <algorithm>
#include <stdexcept>

namespace d2 {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, int cols) {
    int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    Mat m(static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.r_; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, int rows) {
    int r = rows >= 0 ? rows : (cols.empty() ? 0 : static_cast<int>(cols[0].size()));
    Mat m(r, static_cast<int>(cols.size()));
    for (int j = 0; j < m.c_; ++j) {
        if (static_cast<int>(cols[j].size()) != r) throw std::invalid_argument("ragged columns");
        for (int i = 0; i < r; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Mat::row(int i) const { return Vec(a_.begin() + static_cast<size_t>(i) * c_, a_.begin() + static_cast<size_t>(i + 1) * c_); }

Vec Mat::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_col(int j, const Vec& v) {
    for (int i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

SparseVec Mat::sparse_col(int j) const {
    SparseVec s;
    for (int i = 0; i < r_; ++i)
        if (!(*this)(i, j).is_zero()) s.emplace_back(i, (*this)(i, j));
    return s;
}

Mat Mat::unflatten(const Vec& v, int r, int c) {
    if (static_cast<int>(v.size()) != r * c) throw std::invalid_argument("unflatten size");
    Mat m(r, c);
    m.a_ = v;
    return m;
}

Mat Mat::transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
    Mat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) addmul(m(i, j), x, b(k, j));
        }
    return m;
}

Vec operator*(const Mat& a, const Vec& v) {
    if (a.c_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec r(a.r_);
    for (int k = 0; k < a.c_; ++k) {
        if (v[k].is_zero()) continue;
        for (int i = 0; i < a.r_; ++i)
            if (!a(i, k).is_zero()) addmul(r[i], a(i, k), v[k]);
    }
    return r;
}

Mat operator+(const Mat& a, const Mat& b) {
    Mat m(a);
    return m += b;
}

Mat& Mat::operator+=(const Mat& b) {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix sum shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        if (!b.a_[i].is_zero()) a_[i] += b.a_[i];
    return *this;
}

Mat operator-(const Mat& a, const Mat& b) { return a + Scalar(-1) * b; }

Mat operator*(const Scalar& s, const Mat& a) {
    Mat m(a);
    for (auto& x : m.a_)
        if (!x.is_zero()) x *= s;
    return m;
}

bool operator==(const Mat& a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (a.a_[i] != b.a_[i]) return false;
    return true;
}

Vec zero_vec(int n) { return Vec(n); }

Vec unit_vec(int n, int i) {
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool vec_equal(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a);
    axpy(r, Scalar(1), b);
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a);
    axpy(r, Scalar(-1), b);
    return r;
}

Vec operator*(const Scalar& s, const Vec& a) {
    Vec r(a);
    for (auto& x : r)
        if (!x.is_zero()) x *= s;
    return r;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (y.size() != x.size()) throw std::invalid_argument("vector size mismatch");
    if (a.is_zero()) return;
    for (size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero()) addmul(y[i], a, x[i]);
}

SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (!v[i].is_zero()) s.emplace_back(i, v[i]);
    return s;
}

Vec to_dense(const SparseVec& v, int n) {
    Vec d(n);
    for (const auto& [i, x] : v) d[i] = x;
    return d;
}

SparseVec sparse_axpy(const SparseVec& r, const Scalar& a, const SparseVec& v) {
    SparseVec out;
    out.reserve(r.size() + v.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < v.size()) {
        if (j == v.size() || (i < r.size() && r[i].first < v[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || v[j].first < r[i].first) {
            Scalar x = -(a * v[j].second);
            if (!x.is_zero()) out.emplace_back(v[j].first, std::move(x));
            ++j;
        } else {
            Scalar x = r[i].second - a * v[j].second;
            if (!x.is_zero()) out.emplace_back(r[i].first, std::move(x));
            ++i;
            ++j;
        }
    }
    return out;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(int ambient, Exec exec) : n_(ambient), exec_(exec), roc_(ambient, -1) {}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vs, Exec exec) {
    Subspace s(ambient, exec);
    for (const auto& v : vs) s.insert(v);
    return s;
}

SparseVec Subspace::reduce(const SparseVec& v) const {
    bool hit = false;
    for (const auto& e : v)
        if (e.first >= n_) throw std::invalid_argument("vector exceeds ambient dimension");
        else if (roc_[e.first] >= 0) hit = true;
    if (!hit) return v;

    thread_local std::vector<Scalar> work;
    thread_local std::vector<char> mark;
    thread_local std::vector<int> touched;
    if (static_cast<int>(work.size()) < n_) {
        work.resize(n_);
        mark.resize(n_, 0);
    }
    touched.clear();
    auto touch = [&](int c) {
        if (!mark[c]) {
            mark[c] = 1;
            touched.push_back(c);
        }
    };
    for (const auto& [c, x] : v) {
        touch(c);
        work[c] = x;
    }
    for (const auto& [c, x] : v) {
        int r = roc_[c];
        if (r < 0) continue;
        for (const auto& [j, y] : rows_[r]) {
            touch(j);
            Scalar t = x * y;
            work[j] -= t;
        }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec out;
    for (int c : touched) {
        if (!work[c].is_zero()) out.emplace_back(c, work[c]);
        work[c] = Scalar();
        mark[c] = 0;
    }
    return out;
}

bool Subspace::insert(const SparseVec& v0) {
    SparseVec v = reduce(v0);
    if (v.empty()) return false;
    int p = v.front().first;
    Scalar inv = v.front().second.inverse();
    for (auto& e : v) e.second *= inv;

    // clear column p from the existing rows
    const int nr = static_cast<int>(rows_.size());
    auto clear = [&](int r) {
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), p, [](const auto& e, int c) { return e.first < c; });
        if (it == row.end() || it->first != p) return;
        Scalar a = it->second;
        row = sparse_axpy(row, a, v);
    };
    if (exec_ == Exec::parallel && nr >= 32) {
#pragma omp parallel for schedule(dynamic, 8)
        for (int r = 0; r < nr; ++r) clear(r);
    } else {
        for (int r = 0; r < nr; ++r) clear(r);
    }

    auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    piv_.insert(piv_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    for (int r = static_cast<int>(pos); r < static_cast<int>(rows_.size()); ++r) roc_[piv_[r]] = r;
    return true;
}

std::optional<Vec> Subspace::coords(const Vec& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("member: dimension mismatch");
    if (!reduce(to_sparse(v)).empty()) return std::nullopt;
    Vec c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = v[piv_[i]];
    return c;
}

Vec Subspace::combine(const Vec& coeffs) const {
    Vec out(n_);
    for (int i = 0; i < dim(); ++i) {
        if (coeffs[i].is_zero()) continue;
        for (const auto& [j, y] : rows_[i]) addmul(out[j], coeffs[i], y);
    }
    return out;
}

std::vector<int> Subspace::nonpivots() const {
    std::vector<int> np;
    for (int c = 0; c < n_; ++c)
        if (roc_[c] < 0) np.push_back(c);
    return np;
}

std::vector<Vec> Subspace::basis() const {
    std::vector<Vec> b;
    for (int i = 0; i < dim(); ++i) b.push_back(basis_vec(i));
    return b;
}

Mat Subspace::basis_matrix() const { return Mat::from_rows(basis(), n_); }

Subspace Subspace::null_space() const {
    std::vector<SparseVec> cols(n_);
    for (int r = 0; r < dim(); ++r)
        for (const auto& [j, y] : rows_[r])
            if (roc_[j] < 0) cols[j].emplace_back(piv_[r], -y);
    Subspace k(n_, exec_);
    for (int f = 0; f < n_; ++f) {
        if (roc_[f] >= 0) continue;
        SparseVec v = cols[f];
        v.emplace_back(f, Scalar(1));
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        k.insert(v);
    }
    return k;
}

Subspace Subspace::sum(const Subspace& o) const {
    Subspace s(*this);
    for (const auto& r : o.rows_) s.insert(r);
    return s;
}

Subspace Subspace::intersect(const Subspace& o) const {
    return null_space().sum(o.null_space()).null_space();
}

bool Subspace::contains(const Subspace& o) const {
    for (const auto& r : o.rows_)
        if (!contains(r)) return false;
    return true;
}

bool operator==(const Subspace& a, const Subspace& b) {
    if (a.n_ != b.n_ || a.piv_ != b.piv_) return false;
    for (size_t i = 0; i < a.rows_.size(); ++i) {
        if (a.rows_[i].size() != b.rows_[i].size()) return false;
        for (size_t j = 0; j < a.rows_[i].size(); ++j)
            if (a.rows_[i][j].first != b.rows_[i][j].first || a.rows_[i][j].second != b.rows_[i][j].second)
                return false;
    }
    return true;
}

// ---------------------------------------------------------------- dense kernels

namespace {

uint32_t prime_of(const Mat& a) {
    uint32_t p = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j).prime()) {
                if (p && p != a(i, j).prime()) throw std::invalid_argument("mixed characteristic matrix");
                p = a(i, j).prime();
            }
    return p;
}

Rref rref_rational(const Mat& a, Exec exec) {
    const int r = a.rows(), c = a.cols();
    std::vector<std::vector<mpz_class>> m(r, std::vector<mpz_class>(c));
    for (int i = 0; i < r; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < c; ++j)
            if (!a(i, j).is_integer()) l = lcm(l, a(i, j).to_mpq().get_den());
        for (int j = 0; j < c; ++j) {
            if (a(i, j).is_zero()) continue;
            mpq_class q = a(i, j).to_mpq();
            m[i][j] = q.get_num() * (l / q.get_den());
        }
    }

    std::vector<int> piv;
    mpz_class prev = 1;
    int k = 0;
    for (int col = 0; col < c && k < r; ++col) {
        int sel = -1;
        for (int i = k; i < r; ++i)
            if (m[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[k]);
        const mpz_class pk = m[k][col];
        auto step = [&](int i) {
            auto& row = m[i];
            const mpz_class f = row[col];
            if (f == 0) {
                // a zero multiplier still needs the determinant rescaling
                for (int j = col + 1; j < c; ++j)
                    if (row[j] != 0) {
                        row[j] *= pk;
                        mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
                    }
                return;
            }
            for (int j = col + 1; j < c; ++j) {
                row[j] = row[j] * pk - f * m[k][j];
                mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
            }
            row[col] = 0;
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
            for (int i = k + 1; i < r; ++i) step(i);
        } else {
            for (int i = k + 1; i < r; ++i) step(i);
        }
        prev = pk;
        piv.push_back(col);
        ++k;
    }

    Mat out(k, c);
    for (int i = 0; i < k; ++i) {
        mpq_class lead(m[i][piv[i]]);
        for (int j = 0; j < c; ++j)
            if (m[i][j] != 0) out(i, j) = Scalar(mpq_class(m[i][j]) / lead);
    }
    for (int i = k - 1; i >= 0; --i) {
        auto back = [&](int h) {
            Scalar f = out(h, piv[i]);
            if (f.is_zero()) return;
            for (int j = piv[i]; j < c; ++j)
                if (!out(i, j).is_zero()) out(h, j) -= f * out(i, j);
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
            for (int h = 0; h < i; ++h) back(h);
        } else {
            for (int h = 0; h < i; ++h) back(h);
        }
    }
    return {std::move(out), std::move(piv)};
}

Rref rref_modp(const Mat& a, uint32_t p, Exec exec) {
    const int r = a.rows(), c = a.cols();
    std::vector<std::vector<uint64_t>> m(r, std::vector<uint64_t>(c, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            Scalar s = a(i, j).in_field(p);
            m[i][j] = static_cast<uint64_t>(std::stoll(s.str()));
        }
    auto inv = [p](uint64_t x) {
        uint64_t res = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) res = res * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return res;
    };
    std::vector<int> piv;
    int k = 0;
    for (int col = 0; col < c && k < r; ++col) {
        int sel = -1;
        for (int i = k; i < r; ++i)
            if (m[i][col]) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[k]);
        uint64_t iv = inv(m[k][col]);
        for (int j = col; j < c; ++j) m[k][j] = m[k][j] * iv % p;
        auto step = [&](int i) {
            if (i == k || !m[i][col]) return;
            uint64_t f = m[i][col];
            for (int j = col; j < c; ++j)
                if (m[k][j]) m[i][j] = (m[i][j] + (p - f) * m[k][j]) % p;
        };
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < r; ++i) step(i);
        } else {
            for (int i = 0; i < r; ++i) step(i);
        }
        piv.push_back(col);
        ++k;
    }
    Mat out(k, c);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < c; ++j) out(i, j) = Scalar::residue(static_cast<long long>(m[i][j]), p);
    return {std::move(out), std::move(piv)};
}

}  // namespace

Rref rref(const Mat& a, Exec exec) {
    uint32_t p = prime_of(a);
    return p ? rref_modp(a, p, exec) : rref_rational(a, exec);
}

int rank(const Mat& a) { return rref(a).rank(); }

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.rows() != static_cast<int>(b.size())) throw std::invalid_argument("solve: dimension mismatch");
    Mat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Rref e = rref(aug);
    Vec x(a.cols());
    for (int i = 0; i < e.rank(); ++i) {
        if (e.pivots[i] == a.cols()) return std::nullopt;
        x[e.pivots[i]] = e.rows(i, a.cols());
    }
    return x;
}

Subspace kernel(const Mat& a) {
    Rref e = rref(a);
    Subspace s(a.cols());
    for (int i = 0; i < e.rank(); ++i) s.insert(e.rows.row(i));
    return s.null_space();
}

std::optional<Vec> member(const Subspace& s, const Vec& v) { return s.coords(v); }

Subspace span_of_products(const std::vector<Mat>& f, const std::vector<Mat>& g) {
    if (f.empty() || g.empty()) {
        int amb = 0;
        if (!f.empty() && !g.empty()) amb = f[0].rows() * g[0].cols();
        return Subspace(amb);
    }
    const int r = f[0].rows(), c = g[0].cols();
    Subspace s(r * c);
    for (const auto& x : f)
        for (const auto& y : g) {
            if (x.cols() != y.rows() || x.rows() != r || y.cols() != c)
                throw std::invalid_argument("span_of_products: shape mismatch");
            s.insert((x * y).flatten());
            if (s.dim() == r * c) return s;
        }
    return s;
}

Subspace sparse_kernel(const std::vector<SparseVec>& eqs, int nvars, Exec exec) {
    Subspace s(nvars, exec);
    for (const auto& e : eqs) {
        s.insert(e);
        if (s.dim() == nvars) break;
    }
    return s.null_space();
}

std::optional<Mat> inverse(const Mat& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    const int n = a.rows();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = Scalar(1);
    }
    Rref e = rref(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = e.rows(i, n + j);
    return inv;
}

std::string to_string(const Vec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + "]";
}

}  // namespace d2

namespace d2 {

SparseVec make_sparse(std::vector<std::pair<int, Scalar>> terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [i, x] : terms) {
        if (!out.empty() && out.back().first == i)
            out.back().second += x;
        else
            out.emplace_back(i, std::move(x));
    }
    SparseVec clean;
    for (auto& e : out)
        if (!e.second.is_zero()) clean.push_back(std::move(e));
    return clean;
}

std::optional<Vec> sparse_solve(const std::vector<SparseVec>& eqs, const Vec& rhs, int nvars, Exec exec) {
    if (eqs.size() != rhs.size()) throw std::invalid_argument("sparse_solve: dimension mismatch");
    Subspace s(nvars + 1, exec);
    for (size_t i = 0; i < eqs.size(); ++i) {
        SparseVec row = eqs[i];
        if (!rhs[i].is_zero()) row.emplace_back(nvars, rhs[i]);
        s.insert(row);
    }
    Vec x(nvars);
    for (int r = 0; r < s.dim(); ++r) {
        int p = s.pivots()[r];
        if (p == nvars) return std::nullopt;
        const auto& row = s.rows()[r];
        if (row.back().first == nvars) x[p] = row.back().second;
    }
    return x;
}

std::optional<Vec> express(const std::vector<Vec>& gens, const Vec& v) {
    if (gens.empty()) return is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
    return solve(Mat::from_cols(gens, static_cast<int>(v.size())), v);
}

}  // namespace d2
