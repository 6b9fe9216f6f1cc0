#pragma once

#include <string>
#include <utility>
#include <vector>

#include "d2/module.hpp"

namespace d2 {

// V (x)_S W for a right S-module V and a left S-module W, realized as the quotient of
// V (x)_K W (index v*dim W + w) by the span of v s (x) w - v (x) s w over generators s.
// The quotient basis consists of pure basis tensors, so every class has a canonical
// representative supported on them.
struct TensorQuotient {
    Field field;
    int dv = 0, dw = 0;
    std::string label;
    Subspace rel;
    std::vector<int> qbasis;              // quotient index -> ambient index
    std::vector<int> qindex;              // ambient index -> quotient index or -1
    std::vector<SparseVec> nf;            // class of each ambient basis tensor, in quotient coordinates
    Bimodule module;                      // left action from V, right action from W

    int dim() const { return static_cast<int>(qbasis.size()); }
    int ambient() const { return dv * dw; }
    std::pair<int, int> section(int q) const { return {qbasis[q] / dw, qbasis[q] % dw}; }
    Vec project(const SparseVec& amb) const;
    Vec project(const Vec& amb) const { return project(to_sparse(amb)); }
    // class of x (x) y
    Vec pure(const Vec& x, const Vec& y) const;
    void add_pure(Vec& out, const Scalar& c, const Vec& x, const Vec& y) const;
    void add_pure(Vec& out, const Scalar& c, const SparseVec& x, const SparseVec& y) const;
    // map induced by fv (x) fw; both must preserve the relations
    Mat induced(const Mat& fv, const Mat& fw) const;
    // the canonical representative of a class, in ambient coordinates
    Vec lift(const Vec& q) const;
};

TensorQuotient tensor_over(const Field& f, const Bimodule& v, const Bimodule& w, std::string label);

void require_label(const TensorQuotient& t, const std::string& label);

// fv (x) fw from one quotient to another, fv: V -> V', fw: W -> W'
Mat map_between(const TensorQuotient& from, const TensorQuotient& to, const Mat& fv, const Mat& fw);

struct PureTerm {
    int v, w;
    Scalar c;
};
// the canonical representative of a class as a sum of pure basis tensors
std::vector<PureTerm> terms(const TensorQuotient& t, const Vec& q);

}  // namespace d2
