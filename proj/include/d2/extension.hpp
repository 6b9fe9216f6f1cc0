#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2/tensor.hpp"

namespace d2 {

// unital algebra map iota: N -> M
struct Extension {
    Algebra n, m;
    Mat iota;  // dim M x dim N
    std::string name;

    const Field& field() const { return m.field(); }
    Vec image(const Vec& x) const { return iota * x; }
    bool proper() const { return rank(iota) == n.dim(); }
};
Extension make_extension(Algebra n, Algebra m, Mat iota, std::string name);
Extension extension_from_subalgebra(const Algebra& m, const Subspace& s, std::string name);

// which ring acts on a side: scalars only, N through iota, or M
enum class Side { K, N, M };

// restriction of an M-M bimodule (actions stored per M-basis element) to the given sides
Bimodule sided(const Extension& e, const Bimodule& mm, Side l, Side r);
Bimodule m_module(const Extension& e, Side l, Side r);
// N with its regular actions
Bimodule n_module(const Extension& e, Side l, Side r);

// M (x)_N M with its M-M actions, and (M (x)_N M) (x)_N M
TensorQuotient tensor_square(const Extension& e);
TensorQuotient tensor_cube(const Extension& e, const TensorQuotient& t2);
// multiplication M (x)_N M -> M on quotient coordinates, dim M x dim t2
Mat multiplication_map(const Extension& e, const TensorQuotient& t2);

// R = C_M(N), A = End_N M_N, B = (M (x)_N M)^N
struct Chain {
    TensorQuotient t2;
    SubAlgebra r;
    HomSpace a_hom;
    MatrixAlgebra a;
    Subspace b_space;  // t2 coordinates
    Algebra b;

    Vec b_elem(const Vec& coords) const { return b_space.combine(coords); }
    std::optional<Vec> b_coords(const Vec& x) const { return b_space.coords(x); }
    Vec r_elem(const Vec& coords) const { return r.to_ambient(coords); }
    // lambda(r), rho(r) in A coordinates, dim A x dim R
    Mat lambda_r, rho_r;
};
Subspace centralizer(const Extension& e);
Chain build_chain(const Extension& e);
// b b' = b'^1 b^1 (x) b^2 b'^2 on t2 coordinates
Vec b_product(const Extension& e, const TensorQuotient& t2, const Vec& x, const Vec& y);

struct Quasibasis {
    bool left = true;
    std::vector<Vec> b;     // elements of B, t2 coordinates
    std::vector<Mat> beta;  // elements of A, as maps on M
    int size() const { return static_cast<int>(b.size()); }
};
// left: sum_i b_i^1 (x) b_i^2 beta_i(m) = m (x) 1; right: sum_i gamma_i(m) c_i^1 (x) c_i^2 = 1 (x) m
std::optional<Quasibasis> d2_quasibasis(const Extension& e, const Chain& c, bool left);
std::string check_quasibasis(const Extension& e, const Chain& c, const Quasibasis& q);
// the module formulation: _N M (x)_N M_M | (_N M_M)^n, resp. the right-hand version
bool d2_by_summand(const Extension& e, const Chain& c, bool left);

struct Profile {
    int dim_n = 0, dim_m = 0, dim_r = 0, dim_a = 0, dim_b = 0, dim_t2 = 0;
    bool proper = false;
    bool left_d2 = false, right_d2 = false;
    bool h_separable = false, centrally_projective = false;
    bool split = false, separable = false;
    bool left_projective = false, right_projective = false;  // _N M, M_N
    bool left_qf = false, right_qf = false;
    bool balanced = false;
    bool left_d3 = false, right_d3 = false;
    std::optional<Quasibasis> left_qb, right_qb;
    std::optional<Mat> split_map;         // E: M -> N with E iota = id
    std::optional<Vec> separability;      // element of (M (x)_N M)^M with mu = 1
    std::optional<Vec> h_separable_unit;  // 1 (x) 1 when it generates
};
struct ClassifyOptions {
    bool depth_three = true;
    bool qf = true;
};
Profile classify(const Extension& e, const Chain& c, const ClassifyOptions& o = {});

// End M_N = { f : f(m n) = f(m) n } and End _N M, as spans of matrices on M
HomSpace end_right(const Extension& e);
HomSpace end_left(const Extension& e);
// M* = Hom(M_N, N_N) as an N-M-bimodule and *M = Hom(_N M, _N N) as an M-N-bimodule
Bimodule right_dual_module(const Extension& e);
Bimodule left_dual_module(const Extension& e);
bool is_balanced(const Extension& e);

struct IsoCheck {
    std::string name;
    int dim_domain = 0, dim_codomain = 0;
    bool ok = false;
    std::string failure;
};
// End _N M ~ A (x)_R M, End M_N ~ M (x)_R A, A (x)_R A ~ Hom_{N-N}(M (x)_N M, M) with their inverses,
// and the summand relations for End _N M and End M_N
std::vector<IsoCheck> end_iso_props(const Extension& e, const Chain& c, const Quasibasis* left, const Quasibasis* right);

// A (x)_R A with alpha r = rho(r) alpha and r beta = lambda(r) beta
TensorQuotient a_tensor_a(const Extension& e, const Chain& c);

}  // namespace d2
