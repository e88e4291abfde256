#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "skin/model.hpp"
#include "skin/thirdq.hpp"
#include "skin/types.hpp"

namespace skin {

// Even-parity Gaussian state given by its Majorana covariance ⟨w_m w_n⟩.
struct InitialGaussianState {
    Mat covariance;

    int n_sites() const { return static_cast<int>(covariance.rows() / 2); }
    // Throws CARViolation unless C + Cᵀ = 2I and C = C†.
    void validate(double tol = 1e-10) const;

    static InitialGaussianState from_correlation(const Mat& G);  // G_mn = ⟨d_m† d_n⟩
    static InitialGaussianState unit_filling(int n_sites);
    static InitialGaussianState identity(int n_sites);  // ρ ∝ 1, i.e. G = I/2
};

// ⟨d_m† d_n⟩ from a Majorana covariance.
Mat correlation_from_covariance(const Mat& C);

// Q_ab = (1|A_a A_b|ρ(0)).
Mat adjoint_two_point_table(const InitialGaussianState& state);

struct ModeAmplitudes {
    Mat F2;  // F⁽²⁾_{jk} = (1|B_j B_k|ρ(0)), antisymmetric
};

ModeAmplitudes f2_coefficients(const RapidityDecomposition& dec, const Mat& Q);

// ΔG_m(t) = Σ_{j<k} D_{j,k,m} e^{ω_{j,k} t}.
struct SpectralAmplitudes {
    std::vector<std::pair<int, int>> pairs;
    Vec omega;  // per pair
    Mat D;      // pairs × sites

    int n_pairs() const { return static_cast<int>(pairs.size()); }
    int n_sites() const { return static_cast<int>(D.cols()); }
};

SpectralAmplitudes interference_amplitudes(const RapidityDecomposition& dec, const ModeAmplitudes& amps);

struct TimeSeries {
    RVec times;
    RMat values;  // times × columns
};

// Pair indices ordered by decreasing Im ω, ties kept in (j, k) order.
std::vector<int> frequency_order(const SpectralAmplitudes& spec);

TimeSeries delta_g_timeseries(const SpectralAmplitudes& spec, std::span<const double> times);

// Full correlation matrices from the normal-mode expansion.
Mat ness_correlation(const RapidityDecomposition& dec);
Mat spectral_correlation(const RapidityDecomposition& dec, const ModeAmplitudes& amps, double t);

// Coefficients (c0, c1, c2) of G_mm(Δt) = c0 + c1 Δt + c2 Δt² + O(Δt³) from
// the damping-matrix generator, for site m (zero-based) and initial G0.
std::array<double, 3> short_time_expansion(const ModelSpec& model, int site, const Mat& G0, int order = 2);

// e^{−ω_Re t} ΔG(t) = D0 + 2 D± cos(ω0 t) with D± = 1/4 − D0/2. In-phase traces
// need 0 < D0 ≤ 1/2; out_of_phase accepts D0 > 1/2, where D± < 0.
TimeSeries three_mode_demo(double D0, double omega0, std::span<const double> times, bool out_of_phase = false);

// Evenly spaced samples on [0, t_max].
std::vector<double> linspace(double t0, double t1, int samples);

}  // namespace skin
