#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2/extension.hpp"

namespace d2 {

// Left bialgebroid: R-R structure r.a.r' = s(r)t(r')a. Right: r.a.r' = a t(r)s(r').
// s is a homomorphism R -> A and t an anti-homomorphism, both for left and right.
struct Bialgebroid {
    bool left = true;
    Algebra total, base;
    Mat s, t;           // dim A x dim R
    Bimodule bimodule;  // the R-R structure on A, per R basis element and generator
    TensorQuotient tt;  // A (x)_R A for that structure
    Mat delta;          // dim tt x dim A
    Mat eps;            // dim R x dim A
    std::string name;

    int dim() const { return total.dim(); }
    Vec s_of(const Vec& r) const { return s * r; }
    Vec t_of(const Vec& r) const { return t * r; }
};

std::string tensor_label(bool left);
// everything except delta and eps
Bialgebroid bialgebroid_frame(bool left, Algebra total, Algebra base, Mat s, Mat t, std::string name);

struct AxiomResult {
    std::string name;
    bool ok = true;
    std::string where;  // first failing basis tuple
};
struct AxiomReport {
    std::vector<AxiomResult> results;
    bool ok() const;
    const AxiomResult& operator[](const std::string& name) const;
    std::vector<std::string> failures() const;
};
AxiomReport verify_axioms(const Bialgebroid& b);

// left: {X | X(t(r) (x) 1) = X(1 (x) s(r))}, right: {X | (s(r) (x) 1)X = (1 (x) t(r))X}
Subspace takeuchi_product(const Bialgebroid& b);

// A^op with s' = t, t' = s and the same coproduct, of the other handedness
Bialgebroid opposite_bialgebroid(const Bialgebroid& b);

// an action of a bialgebroid on an algebra, act[k] the action of the k-th basis element
struct ActionData {
    bool left = true;
    Algebra acted;
    std::vector<Mat> act;
    std::string name;
    Mat of(const Vec& a) const;
};
std::vector<AxiomResult> verify_action(const Bialgebroid& b, const ActionData& a);
// {n | a.n = s(eps(a)).n}, or with t in place of s
Subspace invariants(const Bialgebroid& b, const ActionData& a, bool use_t = false);

struct SmashProduct {
    TensorQuotient space;  // M (x)_R A
    Algebra alg;
    Mat iota_m, iota_a;
    bool iota_m_injective = false, iota_a_injective = false, faithful = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty() && iota_m_injective; }
};
SmashProduct smash_product(const Bialgebroid& b, const ActionData& a);

struct DualBialgebroid {
    Bialgebroid bg;
    HomSpace space;                    // functionals as dim R x dim A matrices
    std::vector<Vec> dual_a;           // dual bases: elements of A
    std::vector<Mat> dual_f;           // and functionals
    Mat functional(const Vec& b) const;
    Vec pair(const Vec& b, const Vec& a) const { return functional(b) * a; }
};
// A* = Hom(A_R, R_R) and *A = Hom(_R A, _R R), both right bialgebroids; empty without a projectivity witness
std::optional<DualBialgebroid> right_dual(const Bialgebroid& a);
std::optional<DualBialgebroid> left_dual(const Bialgebroid& a);
// the symmetry relations and the two defining relations of the pairing
std::vector<AxiomResult> right_dual_relations(const Bialgebroid& a, const DualBialgebroid& d);
std::vector<AxiomResult> left_dual_relations(const Bialgebroid& a, const DualBialgebroid& d);
// A -> Hom((*A)_R, R_R) bijective, and the pairing relations read from the other side
std::vector<AxiomResult> double_dual_check(const Bialgebroid& a, const DualBialgebroid& left);

// f: from -> to on total coordinates; bijective, unital, multiplicative, s, t, delta, eps preserved
std::vector<AxiomResult> check_morphism(const Bialgebroid& from, const Bialgebroid& to, const Mat& f);

// A = End_N M_N over R
struct ABialgebroid {
    Bialgebroid bg;
    ActionData action;  // on M
    bool coproducts_agree = false;
    bool lu_ok = false;
};
ABialgebroid bialgebroid_A(const Extension& e, const Chain& c, const Quasibasis& left, const Quasibasis& right);

struct InvariantsA {
    Subspace by_counit, by_rho, by_lambda;
    bool agree = false;
    bool equals_n = false;
    bool closed = false;  // a subalgebra
};
InvariantsA invariants_A(const Extension& e, const ABialgebroid& a);

// B = (M (x)_N M)^N over R, acting on End _N M
struct BBialgebroid {
    Bialgebroid bg;
    MatrixAlgebra end_left;
    ActionData action;
    Mat iota;  // B (x)_R B -> (M (x)_N M (x)_N M)^N, cube coordinates
    bool iota_ok = false;
    bool delta_via_iota = false;
    bool invariants_are_rho = false;
};
BBialgebroid bialgebroid_B(const Extension& e, const Chain& c, const Quasibasis& left);

struct PairingReport {
    int eta_rank = 0;
    std::vector<AxiomResult> eta, psi;
    bool ok() const;
};
// eta(b) = <b, -> = b^1 (-)(b^2) into A*, psi(b) = (-)(b^1) b^2 into *A
PairingReport duality_pairing_check(const Extension& e, const Chain& c, const ABialgebroid& a, const BBialgebroid& b);

struct SmashIso {
    SmashProduct smash;
    MatrixAlgebra end_right;
    Mat pi;
    bool bijective = false;
    std::string map_failure;
    bool ok() const { return smash.ok() && bijective && map_failure.empty(); }
};
// m x alpha -> lambda(m) alpha onto End M_N
SmashIso smash_end_iso(const Extension& e, const ABialgebroid& a);

}  // namespace d2
