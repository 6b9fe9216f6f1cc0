#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d2/algebra.hpp"

namespace d2 {

// L-R bimodule on K^dim. Actions are stored per basis element of each acting
// algebra, together with the actions of their generating sets.
struct Bimodule {
    int dim = 0;
    std::vector<Mat> left, right;
    std::vector<Mat> left_gen, right_gen;
    std::string name;

    Mat left_action(const Vec& l) const;
    Mat right_action(const Vec& r) const;
};

// L or R may be null, meaning only scalars act on that side.
Bimodule make_bimodule(const Algebra* l, const Algebra* r, int dim, const std::function<Mat(int)>& left_basis,
                       const std::function<Mat(int)>& right_basis, std::string name);
// unitality on generators, commuting actions, multiplicativity on basis pairs
std::string check_bimodule(const Bimodule& x, const Algebra* l, const Algebra* r);

struct HomSpace {
    int rows = 0, cols = 0;
    Subspace flat;
    std::vector<Mat> basis;
    int dim() const { return static_cast<int>(basis.size()); }
    std::optional<Vec> coords(const Mat& m) const { return flat.coords(m.flatten()); }
};

// linear maps F: X -> Y with F l = l F and F r = r F on generators
HomSpace hom_bimodule(const Bimodule& x, const Bimodule& y, Exec exec = Exec::parallel);

struct SummandWitness {
    std::vector<Mat> f;  // X -> Y
    std::vector<Mat> g;  // Y -> X, with sum_i f_i g_i = id_Y
};
// Y is a direct summand of some X^n iff id_Y lies in the span of composites f g.
std::optional<SummandWitness> similar_summand(const Bimodule& x, const Bimodule& y);
bool h_equivalent(const Bimodule& x, const Bimodule& y);

enum class Decision { yes, no, unknown };
struct IsoResult {
    Decision decision = Decision::unknown;
    std::optional<Mat> iso;  // X -> Y when found
    std::string reason;
};
IsoResult isomorphic(const Bimodule& x, const Bimodule& y, uint64_t seed = 1);

// Hom_A(V, A) ~ Hom_K(V, K) through f -> phi o f, inverse g -> sum_i g(- e_i) f_i,
// for a right A-module V over a Frobenius algebra A
struct DualizeReport {
    int hom_dim = 0, dual_dim = 0;
    bool verified = false;
    std::vector<Mat> to_dual;    // images phi o f of the Hom_A basis (1 x dim V)
    std::vector<Mat> from_dual;  // images of the unit forms (dim A x dim V)
};
DualizeReport dualize_via_phi(const Algebra& a, const FrobeniusCoordinates& c, const Bimodule& v);

Bimodule direct_sum(const Bimodule& x, const Bimodule& y);

}  // namespace d2
