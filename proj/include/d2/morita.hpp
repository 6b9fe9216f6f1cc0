#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d2/extension.hpp"

namespace d2 {

struct MapCheck {
    std::string name;
    int dim_domain = 0, dim_codomain = 0, rank = 0;
    bool bijective = false;
    std::optional<bool> inverse_ok;  // set when an explicit inverse was composed with the map
    std::string failure;
    bool ok() const { return bijective && inverse_ok.value_or(true) && failure.empty(); }
};

// C = End_N(M (x)_N M)_M with the bimodules _C B_R, _R A_C and the pairings between them
struct MoritaContext {
    HomSpace c;            // matrices on M (x)_N M
    TensorQuotient b_a;    // B (x)_R A
    Mat mu_r;              // B (x)_R A -> C, C coordinates
    bool mu_surjective = false;
    std::vector<MapCheck> maps;
    std::vector<std::string> failures;  // context laws
    bool ok() const;
};
// mu_R is always built; the inverses need a left quasibasis
MoritaContext build_context(const Extension& e, const Chain& ch, const Quasibasis* left);

struct ProgeneratorReport {
    bool dual_basis_ok = false;  // alpha = sum_i lambda(psi(b_i)(alpha)) beta_i
    bool a_generator = false, a_projective = false;  // _R A
    bool b_generator = false, b_projective = false;  // B_R
    bool ok() const { return dual_basis_ok && a_generator && a_projective && b_generator && b_projective; }
};
ProgeneratorReport progenerator_checks(const Extension& e, const Chain& ch, const Quasibasis& left);

// B ~ Hom(A_R, R_R), C ~ End A_R and M (x)_R B ~ M (x)_N M for right D2 extensions
std::vector<MapCheck> right_side_duals(const Extension& e, const Chain& ch, const Quasibasis& right);

// <alpha, b> = alpha(b^1) b^2 in R, and <b, alpha> = b^1 alpha(b^2), as elements of M
Vec pair_left(const Extension& e, const Chain& ch, const Mat& alpha, const Vec& b);
Vec pair_right(const Extension& e, const Chain& ch, const Vec& b, const Mat& alpha);

}  // namespace d2
