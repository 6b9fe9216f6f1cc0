#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2/frobtower.hpp"

namespace d2 {

// Coproduct into A (x)_K A (index i*n+j) and a K-valued counit.
struct WeakBialgebra {
    Algebra alg;
    Mat delta;  // n*n x n
    Vec eps;    // eps(e_i)
    std::string name;

    int dim() const { return alg.dim(); }
    Vec coproduct(const Vec& a) const { return delta * a; }
    Scalar counit(const Vec& a) const;
    // eps(1_(1) a) 1_(2) and 1_(1) eps(a 1_(2))
    Vec pi_l(const Vec& a) const;
    Vec pi_r(const Vec& a) const;
    bool genuinely_weak() const;  // Delta(1) != 1 (x) 1
};
// coassociativity, counit, multiplicativity, the Delta^2(1) and weak counit identities
std::vector<AxiomResult> verify_weak_bialgebra(const WeakBialgebra& w);

// left: Delta(a) = sum_i t(e_i) a_(1) (x) s(f_i) a_(2); right: sum_i a_(1) s(e_i) (x) a_(2) t(f_i); eps = phi eps_R
std::optional<WeakBialgebra> weak_bialgebra_lift(const Bialgebroid& b, const FrobeniusCoordinates& r, std::string* why = nullptr);

// S(a_(1)) a_(2) = Pi^R(a), a_(1) S(a_(2)) = Pi^L(a) and S(a) = S(a_(1)) Pi^L(a_(2)) = Pi^R(a_(1)) S(a_(2))
// solved for S, then all three antipode axioms checked
struct AntipodeSolve {
    std::optional<Mat> s;
    int kernel_dim = 0;
    std::vector<AxiomResult> checks;
};
AntipodeSolve solve_antipode(const WeakBialgebra& w);
std::vector<AxiomResult> antipode_axioms(const WeakBialgebra& w, const Mat& s);

// l with a l = Pi^L(a) l for all a (left) or l a = l Pi^R(a) (right), normalized by Pi^L(l) = 1, resp. Pi^R(l) = 1
Subspace left_integrals(const WeakBialgebra& w);
Subspace right_integrals(const WeakBialgebra& w);
std::optional<Vec> normalized_left_integral(const WeakBialgebra& w);
std::optional<Vec> normalized_right_integral(const WeakBialgebra& w);

// A and B over K for a D2 Frobenius extension with separable centralizer
struct WeakHopfReport {
    std::string refusal;
    FrobeniusCoordinates r_coords;
    std::string r_method;
    WeakBialgebra a, b;
    Mat gram;  // <b_k, a_l> = phi(b^1 a(b^2)), dim B x dim A
    std::optional<Mat> s_a, s_b;
    int s_a_kernel = 0, s_b_kernel = 0;
    bool s_squared_identity = false;
    Vec integral;  // E in A coordinates
    std::vector<AxiomResult> checks;
    bool refused() const { return !refusal.empty(); }
    bool ok() const;
};
WeakHopfReport weak_hopf_verify(const Extension& e, const Chain& c, const FrobeniusSystem& sys, const Quasibasis& left,
                                const ABialgebroid& a, const BBialgebroid& b, uint64_t seed = 1);

// R = K 1: psi(alpha) = sum_j alpha(x_j) y_j, S(a) = E_(1) psi(a E_(2))
struct HopfReport {
    std::string refusal;
    WeakHopfReport weak;
    Vec psi;  // on A coordinates
    Mat s;
    std::vector<AxiomResult> checks;
    bool refused() const { return !refusal.empty(); }
    bool ok() const;
};
HopfReport hopf_from_irreducible(const Extension& e, const Chain& c, const FrobeniusSystem& sys, const Quasibasis& left,
                                 const ABialgebroid& a, const BBialgebroid& b);

// E_M(a m e_1) = a_(1) m S^(a_(2)) for a in M_1^N, m in M, with the Hopf structure moved along psi_A
std::vector<AxiomResult> conjugation_identity(const Extension& e, const Chain& c, const Tower& t, const TowerMaps& maps,
                                              const HopfReport& h);

// <phi_A(a), psi_B(b)>' = E_M E_{M_1}(psi_B(b) e_1 e_2 phi_A(a)) = <b, a> and eps^(psi_B(b)) = eps_B(b) 1
struct PairingIdentityReport {
    std::string refusal;
    std::vector<AxiomResult> checks;
    bool ok() const;
};
PairingIdentityReport biseparable_pairing_check(const Extension& e, const Chain& c, const Profile& p, const Tower& t,
                                                const TowerMaps& maps);

// D2 + biseparable => QF, D2 => depth three
struct QfReport {
    bool d2 = false, biseparable = false;
    std::vector<AxiomResult> checks;
    bool ok() const;
};
QfReport qf_instance_check(const Profile& p);

struct SeparabilityReport {
    bool split = false, separable = false, balanced = false;
    bool a_separable = false, b_separable = false;
    std::optional<Vec> left_integral_a, right_integral_b;  // normalized
    std::vector<AxiomResult> checks;
    bool ok() const;
};
// split <=> A separable <=> normalized left integral in A; separable <=> B separable <=> normalized right integral in B
// with the witnesses E(d -) for E(d) = 1 and sum_j x_j (x) d y_j for sum_j x_j d y_j = 1, d in R
SeparabilityReport split_separable_criteria(const Extension& e, const Chain& c, const FrobeniusSystem& sys, const Profile& p,
                                            const WeakHopfReport& w);

// gallery and seeded random extensions with R = K 1, D2 on both sides and a Frobenius system
struct IrreducibleHit {
    std::string name;
    Extension ext;
};
std::vector<IrreducibleHit> irreducible_search(int random_count, uint64_t seed);

}  // namespace d2
