#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2/bialgd.hpp"

namespace d2 {

// E in Hom_{N-N}(M, N) with sum_i x_i E(y_i m) = m = sum_i E(m x_i) y_i
struct FrobeniusSystem {
    Mat e;  // dim N x dim M
    std::vector<Vec> x, y;
    int size() const { return static_cast<int>(x.size()); }
};
// empty when valid
std::string check_frobenius_system(const Extension& ext, const FrobeniusSystem& s);
// dual bases for a given E, when m -> E(m -) is bijective onto Hom(M_N, N_N)
std::optional<FrobeniusSystem> system_from_hom(const Extension& ext, const Mat& e);

struct FrobeniusSystemSearch {
    std::optional<FrobeniusSystem> system;
    bool certified_none = false;
    std::string note;
};
FrobeniusSystemSearch find_frobenius_system(const Extension& ext, uint64_t seed = 1);

// N -> M -> M_1 -> M_2 with M_1 = M (x)_N M and M_2 = M (x)_N M (x)_N M under E-multiplication
struct Tower {
    FrobeniusSystem sys;
    TensorQuotient t2, t3;
    Algebra m1, m2;
    Mat m_to_m1, m1_to_m2, m_to_m2;
    Mat e_m;   // E_M = mu: M_1 -> M, dim M x dim M_1
    Mat e_m1;  // E_{M_1}: M_2 -> M_1
    Vec e1, e2;  // e_1 in M_1, e_2 in M_2
    Subspace a_hat, b_hat, c_hat;  // M_1^N, M_2^M, M_2^N

    Vec e1_in_m2() const { return m1_to_m2 * e1; }
    Vec in_m1(const Vec& m) const { return m_to_m1 * m; }
    Vec in_m2(const Vec& m) const { return m_to_m2 * m; }
    Vec lift(const Vec& m1) const { return m1_to_m2 * m1; }
};
Tower build_tower(const Extension& ext, const FrobeniusSystem& sys);
// key identities, Temperley-Lieb, Pimsner-Popa, E_M and E_{M_1} as Frobenius homomorphisms
std::vector<AxiomResult> verify_tower(const Extension& ext, const Tower& t);

// F: End M_N -> M_1, phi: End _N M -> M_1 (anti), psi_A, phi_A: A -> M_1^N, psi_B, phi_B: B -> M_2^M
struct TowerMaps {
    MatrixAlgebra end_right, end_left;
    Mat f, phi, psi_a, phi_a, psi_b, phi_b;  // codomain coordinates of M_1 or M_2
    std::vector<AxiomResult> checks;
    bool ok() const;
};
TowerMaps tower_maps(const Extension& ext, const Chain& c, const Tower& t);

struct D2FrobeniusReport {
    std::vector<AxiomResult> checks;
    bool m1_left_d2 = false, m1_right_d2 = false;
    bool c_hat_generated = false;  // M_2^N = A^ e_2 A^
    bool ok() const;
};
D2FrobeniusReport d2_frobenius_props(const Extension& ext, const Chain& c, const Tower& t, const TowerMaps& maps,
                                     const Quasibasis& left, const ABialgebroid& a);

// a > m = E_M(a m e_1), the triangle Pi = F pi, and E_{M_1}(phi_B(b) phi(f) e_2) = phi(f <| b)
std::vector<AxiomResult> os_actions(const Extension& ext, const Tower& t, const TowerMaps& maps, const ABialgebroid& a,
                                    const BBialgebroid& b);

}  // namespace d2
