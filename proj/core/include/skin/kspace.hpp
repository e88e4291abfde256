#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "skin/majorana.hpp"
#include "skin/model.hpp"
#include "skin/types.hpp"

namespace skin {

// L⁽⁺⁾_k = C_k† drift C_k + C_k† pump (C_k†)ᵀ on one momentum sector.
struct KBlock {
    double k = 0.0;
    Mat drift;  // 4×4
    Mat pump;   // 4×4
    double R = 0.0;  // t₁ + t₂ cos k
    double Im = 0.0; // −t₂ sin k
    MajoranaForm form;
};

// Two-mode (A, B) model of one momentum with h_k = [[0, t₁+t₂e^{−ik}], [c.c., 0]]
// and the per-cell jump coefficients.
ModelSpec k_model(const SshParams& params, double k);
KBlock k_block(const SshParams& params, double k);

// λ₁..λ₄ = (λ₁, −λ₁, λ₃, −λ₃), with λ₁ the faster rapidity of the s₁ pair and
// λ₃ the slower one of the s₃ pair. This labelling gives the two zeros at
// k = π for t₁ = t₂, which the principal branch alone loses to rounding in sin π.
std::array<cplx, 4> closed_form_eigenvalues(const SshParams& params, double k);
// The four rapidities (γ₊ ∓ i s₁)/4, (γ₊ ∓ i s₃)/4 of the block; together with
// their negatives they form the spectrum of the 8×8 structure matrix.
std::array<cplx, 4> closed_form_rapidities(const SshParams& params, double k);

// (G̃₁₁, G̃₁₂, G̃₂₁, G̃₂₂) with d̃₁,₂ = (d_A ∓ i d_B)/√2.
struct TildeCorrelation {
    std::array<cplx, 4> g{};

    void validate(double tol = 1e-8) const;
    static TildeCorrelation from_site_correlation(const Mat& Gk);  // 2×2, ⟨d_a† d_b⟩
    static TildeCorrelation unit_filling();
    Mat site_correlation() const;
};

std::pair<double, double> g_k_from_tilde(const TildeCorrelation& g);

Mat eom_matrix(const SshParams& params, double k, double gamma);
// Default γ = γ₊/2 (see calibrate_eom_gamma). Requires γ₋ = 0 and the standard
// jump angles; otherwise throws UnsupportedRegime.
std::vector<TildeCorrelation> eom_evolve(const SshParams& params, double k, const TildeCorrelation& g0,
                                         std::span<const double> times, double gamma = -1.0);
// Throws UnsupportedRegime when h_k = 0 leaves d̃₂ dark.
TildeCorrelation eom_steady_state(const SshParams& params, double k, double gamma = -1.0);

// ⟨d_{k,a}† d_{k,b}⟩(t) from the normal-mode expansion of the k block.
std::vector<Mat> adjoint_evolve_k(const SshParams& params, double k, const Mat& Gk0, std::span<const double> times);
// Same quantity from the per-k damping matrix; tolerates exceptional points.
std::vector<Mat> damping_evolve_k(const SshParams& params, double k, const Mat& Gk0, std::span<const double> times);

struct GammaCalibration {
    double factor = 0.0;  // γ = factor · γ₊
    double gamma = 0.0;
    double residual = 0.0;
};

// Picks the γ/γ₊ ratio from `candidates` that best reproduces adjoint_evolve_k
// for unit filling at momentum k and times `probe`.
GammaCalibration calibrate_eom_gamma(const SshParams& params, double k, std::span<const double> probe,
                                     std::span<const double> candidates = {});

// k_n = 2πn/n_cells.
std::vector<double> k_grid(int n_cells);

// ⟨d_{k,a}† d_{k,b}⟩ from the real-space correlation, d_k = Σ_m e^{−ikm} d_m/√n_cells.
Mat k_correlation(const Mat& G, double k);

struct OccupationProfile {
    RVec occupations;  // site order A₀, B₀, A₁, ...
    double spread = 0.0;  // largest max−min over the A and over the B sublattice
};

OccupationProfile real_space_occupations_pbc(const SshParams& params, double t,
                                             const TildeCorrelation& g0 = TildeCorrelation::unit_filling());

}  // namespace skin
