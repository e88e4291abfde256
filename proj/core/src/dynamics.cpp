#include "skin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "skin/damping.hpp"
#include "skin/errors.hpp"

namespace skin {

void InitialGaussianState::validate(double tol) const {
    const auto n = covariance.rows();
    if (n == 0 || n % 2 != 0 || covariance.cols() != n)
        throw CARViolation("dynamics", "covariance must be a 2N×2N matrix", tol);
    const double car = (covariance + covariance.transpose() - 2.0 * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    const double herm = (covariance - covariance.adjoint()).cwiseAbs().maxCoeff();
    if (car > tol) throw CARViolation("dynamics", "covariance violates C + Cᵀ = 2I", tol);
    if (herm > tol) throw CARViolation("dynamics", "covariance is not Hermitian", tol);
}

InitialGaussianState InitialGaussianState::from_correlation(const Mat& G) {
    const auto n = G.rows();
    Mat C(2 * n, 2 * n);
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double delta = m == k ? 1.0 : 0.0;
            C(2 * m, 2 * k) = delta - G(k, m) + G(m, k);
            C(2 * m, 2 * k + 1) = I * (G(m, k) - delta + G(k, m));
            C(2 * m + 1, 2 * k) = I * (delta - G(k, m) - G(m, k));
            C(2 * m + 1, 2 * k + 1) = delta - G(k, m) + G(m, k);
        }
    }
    return {C};
}

InitialGaussianState InitialGaussianState::unit_filling(int n_sites) {
    return from_correlation(Mat::Identity(n_sites, n_sites));
}

InitialGaussianState InitialGaussianState::identity(int n_sites) {
    return {Mat::Identity(2 * n_sites, 2 * n_sites)};
}

Mat correlation_from_covariance(const Mat& C) {
    const auto n = C.rows() / 2;
    Mat G(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k)
            G(m, k) = 0.25 * (C(2 * m, 2 * k) - I * C(2 * m, 2 * k + 1) + I * C(2 * m + 1, 2 * k) +
                              C(2 * m + 1, 2 * k + 1));
    return G;
}

Mat adjoint_two_point_table(const InitialGaussianState& state) {
    state.validate();
    const Mat& C = state.covariance;
    const auto n = C.rows();
    Mat Q(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            Q(2 * a, 2 * b) = 0.5 * C(a, b);
            Q(2 * a + 1, 2 * b) = 0.5 * I * C(a, b);
            Q(2 * a, 2 * b + 1) = -0.5 * I * C(b, a);
            Q(2 * a + 1, 2 * b + 1) = 0.5 * C(b, a);
        }
    }
    return Q;
}

ModeAmplitudes f2_coefficients(const RapidityDecomposition& dec, const Mat& Q) {
    if (Q.rows() != dec.V.cols()) throw std::invalid_argument("dynamics: Q table size differs from V");
    const Mat B = dec.b_rows();
    Mat F = B * Q * B.transpose();
    return {0.5 * (F - F.transpose())};
}

SpectralAmplitudes interference_amplitudes(const RapidityDecomposition& dec, const ModeAmplitudes& amps) {
    const int modes = dec.n_normal_modes();
    const int sites = dec.n_sites();
    const Mat Bt = dec.bt_rows();
    SpectralAmplitudes out;
    const int npairs = modes * (modes - 1) / 2;
    out.pairs.reserve(npairs);
    out.omega.resize(npairs);
    out.D.resize(npairs, sites);
    int p = 0;
    for (int j = 0; j < modes; ++j) {
        for (int k = j + 1; k < modes; ++k) {
            out.pairs.emplace_back(j, k);
            out.omega(p) = -2.0 * (dec.betas(j) + dec.betas(k));
            const cplx f = amps.F2(j, k);
            for (int m = 0; m < sites; ++m) {
                const int a = 4 * m;
                const int b = 4 * m + 2;
                out.D(p, m) = -I * (Bt(j, a) * Bt(k, b) - Bt(j, b) * Bt(k, a)) * f;
            }
            ++p;
        }
    }
    return out;
}

std::vector<int> frequency_order(const SpectralAmplitudes& spec) {
    std::vector<int> order(spec.n_pairs());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return spec.omega(a).imag() > spec.omega(b).imag(); });
    return order;
}

TimeSeries delta_g_timeseries(const SpectralAmplitudes& spec, std::span<const double> times) {
    TimeSeries ts;
    ts.times.resize(static_cast<Eigen::Index>(times.size()));
    ts.values.resize(static_cast<Eigen::Index>(times.size()), spec.n_sites());
    const Mat Dt = spec.D.transpose();
    Vec e(spec.n_pairs());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("dynamics: times must be finite and ≥ 0");
        if (i > 0 && !(t > times[i - 1])) throw std::invalid_argument("dynamics: times must be strictly increasing");
        ts.times(static_cast<Eigen::Index>(i)) = t;
        for (int p = 0; p < spec.n_pairs(); ++p) e(p) = std::exp(spec.omega(p) * t);
        const Vec g = Dt * e;
        for (Eigen::Index m = 0; m < g.size(); ++m) {
            if (std::abs(g(m).imag()) > 1e-6)
                throw ResidueTooLarge("dynamics", "ΔG_m(t) has a large imaginary part", 1e-6);
            ts.values(static_cast<Eigen::Index>(i), m) = g(m).real();
        }
    }
    return ts;
}

namespace {

// Restriction of (1|A_a A_b|·) to the left-multiplication rows, i.e. ⟨w_p w_q⟩/2.
Mat even_block(const Mat& q) {
    const auto n = q.rows() / 2;
    Mat out(n, n);
    for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index r = 0; r < n; ++r) out(p, r) = q(2 * p, 2 * r);
    return out;
}

}  // namespace

Mat ness_correlation(const RapidityDecomposition& dec) {
    const Mat S = dec.bt_rows().transpose() * dec.b_rows();
    return correlation_from_covariance(2.0 * even_block(S));
}

Mat spectral_correlation(const RapidityDecomposition& dec, const ModeAmplitudes& amps, double t) {
    const Mat Bt = dec.bt_rows();
    const Mat S = Bt.transpose() * dec.b_rows();
    const int modes = dec.n_normal_modes();
    Mat EF(modes, modes);
    for (int j = 0; j < modes; ++j)
        for (int k = 0; k < modes; ++k) EF(j, k) = std::exp(-2.0 * (dec.betas(j) + dec.betas(k)) * t) * amps.F2(j, k);
    const Mat q = S + Bt.transpose() * EF * Bt;
    return correlation_from_covariance(2.0 * even_block(q));
}

std::array<double, 3> short_time_expansion(const ModelSpec& model, int site, const Mat& G0, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("dynamics: expansion order must be 0, 1 or 2");
    if (site < 0 || site >= model.n_modes()) throw std::out_of_range("dynamics: site out of range");
    const Mat X = damping_matrix(model);
    const Mat S = gain_source(model);
    const Mat G1 = X * G0 + G0 * X.adjoint() + S;
    const Mat G2 = X * G1 + G1 * X.adjoint();
    std::array<double, 3> c{G0(site, site).real(), 0.0, 0.0};
    if (order >= 1) c[1] = G1(site, site).real();
    if (order >= 2) c[2] = 0.5 * G2(site, site).real();
    return c;
}

TimeSeries three_mode_demo(double D0, double omega0, std::span<const double> times, bool out_of_phase) {
    if (!std::isfinite(D0) || !std::isfinite(omega0)) throw std::invalid_argument("dynamics: non-finite input");
    if (!out_of_phase && !(D0 > 0.0 && D0 <= 0.5))
        throw std::invalid_argument("dynamics: in-phase three-mode trace needs 0 < D0 <= 1/2");
    if (out_of_phase && !(D0 > 0.5)) throw std::invalid_argument("dynamics: out-of-phase trace needs D0 > 1/2");
    const double Dpm = 0.25 - 0.5 * D0;
    TimeSeries ts;
    ts.times.resize(static_cast<Eigen::Index>(times.size()));
    ts.values.resize(static_cast<Eigen::Index>(times.size()), 1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        ts.times(static_cast<Eigen::Index>(i)) = times[i];
        ts.values(static_cast<Eigen::Index>(i), 0) = D0 + 2.0 * Dpm * std::cos(omega0 * times[i]);
    }
    return ts;
}

std::vector<double> linspace(double t0, double t1, int samples) {
    if (samples < 2) throw std::invalid_argument("linspace: need at least two samples");
    std::vector<double> out(samples);
    for (int i = 0; i < samples; ++i) out[i] = t0 + (t1 - t0) * i / (samples - 1);
    return out;
}

}  // namespace skin
