#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "d2/scalar.hpp"

namespace d2 {

using Vec = std::vector<Scalar>;
// sorted by index, no explicit zeros
using SparseVec = std::vector<std::pair<int, Scalar>>;

enum class Exec { serial, parallel };

struct Field {
    uint32_t p = 0;
    bool rational() const { return p == 0; }
    Scalar zero() const { return p ? Scalar::residue(0, p) : Scalar(0); }
    Scalar one() const { return p ? Scalar::residue(1, p) : Scalar(1); }
    Scalar of(long v) const { return p ? Scalar::residue(v, p) : Scalar(v); }
    Scalar of(const Scalar& s) const { return s.in_field(p); }
    bool operator==(const Field&) const = default;
    std::string name() const { return p ? "F_" + std::to_string(p) : "Q"; }
};

class Mat {
public:
    Mat() = default;
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}
    static Mat identity(int n);
    static Mat from_rows(const std::vector<Vec>& rows, int cols = -1);
    static Mat from_cols(const std::vector<Vec>& cols, int rows = -1);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec row(int i) const;
    Vec col(int j) const;
    void set_col(int j, const Vec& v);
    Vec flatten() const { return a_; }
    static Mat unflatten(const Vec& v, int r, int c);
    Mat transpose() const;
    bool is_zero() const;
    SparseVec sparse_col(int j) const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Vec operator*(const Mat& a, const Vec& v);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Scalar& s, const Mat& a);
    Mat& operator+=(const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b);
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

Vec zero_vec(int n);
Vec unit_vec(int n, int i);
bool is_zero(const Vec& v);
bool vec_equal(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& s, const Vec& a);
void axpy(Vec& y, const Scalar& a, const Vec& x);

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, int n);
// r - a*v on sorted sparse vectors
SparseVec sparse_axpy(const SparseVec& r, const Scalar& a, const SparseVec& v);

// Canonical subspace: rows kept in reduced row echelon form, ordered by pivot column,
// each pivot being the leading entry of its row.
class Subspace {
public:
    explicit Subspace(int ambient = 0, Exec exec = Exec::parallel);
    static Subspace span(int ambient, const std::vector<Vec>& vs, Exec exec = Exec::parallel);

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    // true iff the dimension grew
    bool insert(const SparseVec& v);
    bool insert(const Vec& v) { return insert(to_sparse(v)); }

    // normal form modulo the subspace; supported on non-pivot columns
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const Vec& v) const { return reduce(to_sparse(v)).empty(); }
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::optional<Vec> coords(const Vec& v) const;
    Vec combine(const Vec& coeffs) const;

    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }
    int row_of_col(int c) const { return roc_[c]; }
    std::vector<int> nonpivots() const;
    Vec basis_vec(int i) const { return to_dense(rows_[i], n_); }
    std::vector<Vec> basis() const;
    Mat basis_matrix() const;

    // orthogonal-complement style solution set {x : <row, x> = 0 for all rows}
    Subspace null_space() const;
    Subspace intersect(const Subspace& o) const;
    Subspace sum(const Subspace& o) const;
    bool contains(const Subspace& o) const;

    friend bool operator==(const Subspace& a, const Subspace& b);
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    int n_;
    Exec exec_;
    std::vector<SparseVec> rows_;
    std::vector<int> piv_;
    std::vector<int> roc_;
};

struct Rref {
    Mat rows;  // rank x cols, reduced echelon
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

// Dense reduced echelon form. Over Q: fraction-free elimination on integer rows
// followed by back substitution; over F_p: plain Gauss-Jordan.
Rref rref(const Mat& a, Exec exec = Exec::parallel);
int rank(const Mat& a);

std::optional<Vec> solve(const Mat& a, const Vec& b);
Subspace kernel(const Mat& a);
std::optional<Vec> member(const Subspace& s, const Vec& v);
Subspace span_of_products(const std::vector<Mat>& f, const std::vector<Mat>& g);

// Kernel of a sparse linear system given by equation rows over `nvars` unknowns.
Subspace sparse_kernel(const std::vector<SparseVec>& eqs, int nvars, Exec exec = Exec::parallel);

// Solve a sparse system eqs[i] . x = rhs[i].
std::optional<Vec> sparse_solve(const std::vector<SparseVec>& eqs, const Vec& rhs, int nvars,
                                Exec exec = Exec::parallel);
// Sort by index and merge repeated indices.
SparseVec make_sparse(std::vector<std::pair<int, Scalar>> terms);
// Coefficients of v against an explicit (not necessarily independent) generating list.
std::optional<Vec> express(const std::vector<Vec>& gens, const Vec& v);

// Inverse of a square matrix, or nothing when singular.
std::optional<Mat> inverse(const Mat& a);

std::string to_string(const Vec& v);

}  // namespace d2
