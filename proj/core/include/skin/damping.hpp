#pragma once

#include <vector>

#include "skin/model.hpp"
#include "skin/types.hpp"

namespace skin {

// ΔG(t) = e^{Xt} ΔG(0) e^{X†t} for G_mn = Tr(d_m† d_n ρ).
struct DampingMatrix {
    Mat X;

    Mat h_eff() const { return -I * X; }
    int n_sites() const { return static_cast<int>(X.rows()); }
};

// Closed form for the SSH chain with the cellular loss/gain jumps.
DampingMatrix build_damping_matrix(const SshParams& params, Boundary bc);

// X = i hᵀ − Σ c⁻ c⁻† − conj(Σ c⁺ c⁺†). Every jump must be pure loss or pure
// gain; mixed jumps throw UnsupportedRegime.
Mat damping_matrix(const ModelSpec& model);
// Constant source S = 2 conj(Σ c⁺ c⁺†) in dG/dt = X G + G X† + S.
Mat gain_source(const ModelSpec& model);

Mat propagate_deviation(const Mat& X, const Mat& dG0, double t);

// Solves X G + G X† + S = 0; throws UnstableDrift if X is not strictly stable.
Mat steady_state_correlation(const ModelSpec& model);

struct SkinVerdict {
    bool absent = false;
    double residual = 0.0;  // |X₁₂| − |X₂₁| on the first cell
};

// No skin effect iff t₁ = 0 or γ_l sinφ sinθ cosθ = γ_g sinφ′ sinθ′ cosθ′.
SkinVerdict skin_absent(const SshParams& params, double tol = 1e-12);

struct BoundarySpectra {
    std::vector<cplx> obc;
    std::vector<cplx> pbc;
    // Per OBC eigenvector: Σ_m |v_m|⁴ x_m / Σ_m |v_m|⁴ with x_m ∈ [−1, 1] the
    // site position. Near ±1 for edge pile-up, near 0 for extended states.
    std::vector<double> localization;
};

BoundarySpectra obc_pbc_spectra(const SshParams& params);

}  // namespace skin
