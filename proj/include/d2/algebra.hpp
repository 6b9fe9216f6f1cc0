#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "d2/exactla.hpp"

namespace d2 {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-dimensional unital associative algebra given by structure constants
// e_i e_j = sum_k c_ij^k e_k.
class Algebra {
public:
    using Entry = std::tuple<int, int, int, Scalar>;

    Algebra() = default;
    static Algebra from_structure(Field f, int n, Vec unit, const std::vector<Entry>& mult,
                                  std::string name = "structure", bool validate = true);
    // products given by a callback on basis pairs (coordinates)
    static Algebra from_products(Field f, int n, Vec unit, const std::function<Vec(int, int)>& prod,
                                 std::string name, bool validate = true);
    static Algebra matrix(Field f, int n);
    // table[i][j] = index of g_i g_j; element 0 need not be the identity
    static Algebra group(Field f, const std::vector<std::vector<int>>& table, std::string name = "group");
    static Algebra product(const Algebra& a, const Algebra& b);
    static Algebra tensor(const Algebra& a, const Algebra& b);
    static Algebra opposite(const Algebra& a);

    const Field& field() const { return field_; }
    int dim() const { return n_; }
    const Vec& unit() const { return unit_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const SparseVec& basis_product(int i, int j) const { return table_[static_cast<size_t>(i) * n_ + j]; }
    Vec mul(const Vec& a, const Vec& b) const;
    Vec basis(int i) const;
    Vec zero() const { return Vec(n_); }
    Mat lmul(const Vec& a) const;  // x -> a x
    Mat rmul(const Vec& a) const;  // x -> x a
    Mat lmul_basis(int i) const;
    Mat rmul_basis(int i) const;
    // a small generating set, as coordinate vectors
    const std::vector<Vec>& generators() const { return gens_; }
    bool is_commutative() const;
    // first failing (i,j,k) triple or unit violation; empty when valid
    std::string check_laws() const;

private:
    Field field_;
    int n_ = 0;
    std::string name_;
    Vec unit_;
    std::vector<SparseVec> table_;
    std::vector<Vec> gens_;

    void finish(bool validate);
    void compute_generators();
};

// Subalgebra spanned by a closed subspace S containing 1, in the RREF basis of S.
struct SubAlgebra {
    Algebra alg;
    Subspace space;
    Mat incl;  // ambient x sub, columns are the basis vectors
    Vec to_ambient(const Vec& c) const { return incl * c; }
    std::optional<Vec> from_ambient(const Vec& v) const { return space.coords(v); }
};
SubAlgebra subalgebra(const Algebra& a, const Subspace& s, std::string name);
Subspace generated_subalgebra(const Algebra& a, const std::vector<Vec>& gens);

// Algebra of matrices closed under composition, in the canonical basis of its span.
struct MatrixAlgebra {
    Algebra alg;
    Subspace space;  // flattened matrices
    std::vector<Mat> basis;
    int rows = 0, cols = 0;
    Mat to_mat(const Vec& c) const;
    std::optional<Vec> coords(const Mat& m) const { return space.coords(m.flatten()); }
};
MatrixAlgebra matrix_algebra(const Subspace& flat, int n, std::string name);

struct AlgebraMap {
    Mat matrix;  // dim(codomain) x dim(domain)
    Vec operator()(const Vec& x) const { return matrix * x; }
};
// verify multiplicativity on basis pairs and unit preservation; empty when valid
std::string check_algebra_map(const Algebra& dom, const Algebra& cod, const Mat& m, bool anti = false);

Subspace center(const Algebra& a);
// element of A (x) A indexed i*n+j with a e = e a and mu(e) = 1
std::optional<Vec> separability_idempotent(const Algebra& a);

struct FrobeniusCoordinates {
    Vec phi;  // phi(e_i) = phi[i]
    std::vector<Vec> e, f;
    bool index_one = false;
};

struct FrobeniusSearch {
    std::optional<FrobeniusCoordinates> coords;
    bool certified_none = false;
    std::string note;
};

Scalar apply_form(const Vec& phi, const Vec& x);
// Gram matrix G_ij = phi(e_i e_j)
Mat gram(const Algebra& a, const Vec& phi);
std::string check_frobenius(const Algebra& a, const FrobeniusCoordinates& c);
std::optional<FrobeniusCoordinates> coordinates_from_form(const Algebra& a, const Vec& phi);
FrobeniusSearch frobenius_coordinates(const Algebra& a, uint64_t seed = 1);

struct IndexOneResult {
    std::optional<FrobeniusCoordinates> coords;
    std::string method;  // preset name or "search"
    std::string note;
};
IndexOneResult index_one_coordinates(const Algebra& a, uint64_t seed = 1);
// the coordinates quoted for M_2 over F_2
FrobeniusCoordinates m2_f2_coordinates(const Algebra& m2);

struct NondegeneracyFlags {
    bool left = false, right = false;
};
NondegeneracyFlags nondegenerate_form_check(const Algebra& a, const Vec& phi);

// seeded candidate forms: coordinate forms, all-ones, random, and exhaustive for tiny F_p
std::vector<Vec> candidate_forms(const Field& f, int n, uint64_t seed, int random_count = 64);
Vec random_element(const Field& f, int n, uint64_t& state, int range = 3);

}  // namespace d2
