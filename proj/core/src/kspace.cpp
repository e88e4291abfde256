#include "skin/kspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/LU>

#include "skin/damping.hpp"
#include "skin/dynamics.hpp"
#include "skin/errors.hpp"
#include "skin/linalg.hpp"
#include "skin/thirdq.hpp"

namespace skin {

namespace {

cplx hopping(const SshParams& p, double k) { return p.t1 + p.t2 * std::exp(-I * k); }

double default_gamma(const SshParams& p, double gamma) { return gamma < 0.0 ? 0.5 * p.gamma_plus() : gamma; }

void require_symmetric_standard(const SshParams& p) {
    if (std::abs(p.gamma_minus()) > 1e-14)
        throw UnsupportedRegime("kspace", "the tilde-basis EOM is only available for γ₋ = 0", 1e-14);
    if (!p.standard_angles(1e-12))
        throw UnsupportedRegime("kspace", "the tilde-basis EOM assumes the standard jump angles", 1e-12);
}

}  // namespace

ModelSpec k_model(const SshParams& params, double k) {
    SshParams cell = params;
    cell.n_cells = 1;
    const cplx A = hopping(params, k);
    Mat h = Mat::Zero(2, 2);
    h(0, 1) = A;
    h(1, 0) = std::conj(A);
    ModelSpec m{{h}, build_general_jumps(cell), Boundary::Periodic};
    m.validate();
    return m;
}

KBlock k_block(const SshParams& params, double k) {
    KBlock b;
    b.k = k;
    b.R = params.t1 + params.t2 * std::cos(k);
    b.Im = -params.t2 * std::sin(k);
    b.form = to_majorana(k_model(params, k));
    b.drift = -2.0 * build_drift_matrix(b.form);
    b.pump = 2.0 * (b.form.M - b.form.M.transpose());
    return b;
}

std::array<cplx, 4> closed_form_eigenvalues(const SshParams& params, double k) {
    const auto r = closed_form_rapidities(params, k);
    // Each square root fixes a ± pair of rapidities; λ₁ is the faster member of
    // the s₁ pair and λ₃ the slower member of the s₃ pair. Ties keep the
    // principal-branch value.
    const cplx l1 = r[1].real() > r[0].real() ? r[1] : r[0];
    const cplx l3 = r[3].real() < r[2].real() ? r[3] : r[2];
    return {l1, -l1, l3, -l3};
}

std::array<cplx, 4> closed_form_rapidities(const SshParams& params, double k) {
    const double g = params.gamma_plus();
    const double R = params.t1 + params.t2 * std::cos(k);
    const double Ik = -params.t2 * std::sin(k);
    const cplx base = -g * g + 4.0 * Ik * Ik + 4.0 * R * R;
    const cplx s1 = std::sqrt(base + 4.0 * I * g * Ik);
    const cplx s3 = std::sqrt(base - 4.0 * I * g * Ik);
    return {0.25 * (g - I * s1), 0.25 * (g + I * s1), 0.25 * (g - I * s3), 0.25 * (g + I * s3)};
}

void TildeCorrelation::validate(double tol) const {
    for (int i : {0, 3}) {
        if (std::abs(g[i].imag()) > tol || g[i].real() < -tol || g[i].real() > 1.0 + tol)
            throw CARViolation("kspace", "diagonal tilde correlations must be real and in [0, 1]", tol);
    }
    if (std::abs(g[2] - std::conj(g[1])) > tol)
        throw CARViolation("kspace", "G̃₂₁ must equal conj(G̃₁₂)", tol);
}

TildeCorrelation TildeCorrelation::from_site_correlation(const Mat& G) {
    if (G.rows() != 2 || G.cols() != 2) throw std::invalid_argument("kspace: per-k correlation must be 2×2");
    const cplx aa = G(0, 0), ab = G(0, 1), ba = G(1, 0), bb = G(1, 1);
    return {{0.5 * (aa - I * ab + I * ba + bb), 0.5 * (aa + I * ab + I * ba - bb),
             0.5 * (aa - I * ab - I * ba - bb), 0.5 * (aa + I * ab - I * ba + bb)}};
}

TildeCorrelation TildeCorrelation::unit_filling() { return {{1.0, 0.0, 0.0, 1.0}}; }

Mat TildeCorrelation::site_correlation() const {
    Mat G(2, 2);
    G(0, 0) = 0.5 * (g[0] + g[1] + g[2] + g[3]);
    G(1, 1) = 0.5 * (g[0] - g[1] - g[2] + g[3]);
    G(0, 1) = 0.5 * I * (g[0] - g[1] + g[2] - g[3]);
    G(1, 0) = 0.5 * I * (-g[0] - g[1] + g[2] + g[3]);
    return G;
}

std::pair<double, double> g_k_from_tilde(const TildeCorrelation& g) {
    return {0.5 * (g.g[0] + g.g[1] + g.g[2] + g.g[3]).real(), 0.5 * (g.g[0] - g.g[1] - g.g[2] + g.g[3]).real()};
}

Mat eom_matrix(const SshParams& params, double k, double gamma) {
    const cplx A = hopping(params, k);
    const double re = A.real(), im = A.imag();
    Mat E(4, 4);
    E << -4.0 * gamma, -re, -re, 0.0,
         re, 2.0 * (-I * im - gamma), 0.0, -re,
         re, 0.0, 2.0 * (I * im - gamma), -re,
         0.0, re, re, 0.0;
    return E;
}

std::vector<TildeCorrelation> eom_evolve(const SshParams& params, double k, const TildeCorrelation& g0,
                                         std::span<const double> times, double gamma) {
    require_symmetric_standard(params);
    gamma = default_gamma(params, gamma);
    Mat aug = Mat::Zero(5, 5);
    aug.topLeftCorner(4, 4) = eom_matrix(params, k, gamma);
    aug(0, 4) = 2.0 * gamma;
    Vec x0(5);
    x0 << g0.g[0], g0.g[1], g0.g[2], g0.g[3], 1.0;
    std::vector<TildeCorrelation> out;
    out.reserve(times.size());
    for (double t : times) {
        if (!(t >= 0.0)) throw std::invalid_argument("kspace: times must be ≥ 0");
        const Vec x = linalg::expm(aug * t) * x0;
        out.push_back({{x(0), x(1), x(2), x(3)}});
    }
    return out;
}

TildeCorrelation eom_steady_state(const SshParams& params, double k, double gamma) {
    require_symmetric_standard(params);
    gamma = default_gamma(params, gamma);
    Vec src = Vec::Zero(4);
    src(0) = 2.0 * gamma;
    Eigen::FullPivLU<Mat> lu(eom_matrix(params, k, gamma));
    lu.setThreshold(1e-12);
    // h_k = 0 decouples d̃₂, whose occupation is then conserved.
    if (!lu.isInvertible())
        throw UnsupportedRegime("kspace", "dark tilde mode; the steady state depends on the initial state", 1e-12);
    const Vec g = lu.solve(-src);
    return {{g(0), g(1), g(2), g(3)}};
}

std::vector<Mat> adjoint_evolve_k(const SshParams& params, double k, const Mat& Gk0, std::span<const double> times) {
    const auto dec = rapidity_decompose(to_majorana(k_model(params, k)));
    const auto state = InitialGaussianState::from_correlation(Gk0);
    const auto amps = f2_coefficients(dec, adjoint_two_point_table(state));
    std::vector<Mat> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(spectral_correlation(dec, amps, t));
    return out;
}

std::vector<Mat> damping_evolve_k(const SshParams& params, double k, const Mat& Gk0, std::span<const double> times) {
    const ModelSpec m = k_model(params, k);
    const Mat X = damping_matrix(m);
    const Mat S = gain_source(m);
    // Augmented generator on vec(G) ⊕ 1 so that no steady-state solve is needed
    // (the block can have a zero mode at its exceptional points).
    const Mat Id = Mat::Identity(2, 2);
    Mat gen = Mat::Zero(5, 5);
    // vec(XG + GX†) with column-stacking: (I⊗X + conj(X)⊗I) vec(G).
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    gen(2 * b + a, 2 * d + c) = Id(b, d) * X(a, c) + std::conj(X(b, d)) * Id(a, c);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a) gen(2 * b + a, 4) = S(a, b);
    Vec x0(5);
    x0 << Gk0(0, 0), Gk0(1, 0), Gk0(0, 1), Gk0(1, 1), 1.0;
    std::vector<Mat> out;
    out.reserve(times.size());
    for (double t : times) {
        if (!(t >= 0.0)) throw std::invalid_argument("kspace: times must be ≥ 0");
        const Vec x = linalg::expm(gen * t) * x0;
        Mat G(2, 2);
        G << x(0), x(2), x(1), x(3);
        out.push_back(G);
    }
    return out;
}

GammaCalibration calibrate_eom_gamma(const SshParams& params, double k, std::span<const double> probe,
                                     std::span<const double> candidates) {
    static const std::array<double, 6> kDefault{0.125, 0.25, 0.5, 1.0, 2.0, 4.0};
    if (candidates.empty()) candidates = kDefault;
    if (probe.empty()) throw std::invalid_argument("kspace: calibration needs at least one probe time");
    const auto g0 = TildeCorrelation::unit_filling();
    const auto ref = adjoint_evolve_k(params, k, g0.site_correlation(), probe);
    GammaCalibration best;
    best.residual = std::numeric_limits<double>::infinity();
    for (double f : candidates) {
        const double gamma = f * params.gamma_plus();
        const auto traj = eom_evolve(params, k, g0, probe, gamma);
        double r = 0.0;
        for (std::size_t i = 0; i < probe.size(); ++i)
            r = std::max(r, (traj[i].site_correlation() - ref[i]).cwiseAbs().maxCoeff());
        if (r < best.residual) best = {f, gamma, r};
    }
    return best;
}

std::vector<double> k_grid(int n_cells) {
    if (n_cells < 1) throw std::invalid_argument("kspace: n_cells must be at least 1");
    std::vector<double> ks(n_cells);
    for (int n = 0; n < n_cells; ++n) ks[n] = 2.0 * kPi * n / n_cells;
    return ks;
}

Mat k_correlation(const Mat& G, double k) {
    const auto n = G.rows();
    if (n % 2 != 0) throw std::invalid_argument("kspace: correlation must cover whole cells");
    const auto nc = n / 2;
    Mat Gk = Mat::Zero(2, 2);
    for (Eigen::Index m = 0; m < nc; ++m)
        for (Eigen::Index mp = 0; mp < nc; ++mp) {
            const cplx phase = std::exp(I * k * static_cast<double>(m - mp));
            Gk += phase * G.block(2 * m, 2 * mp, 2, 2);
        }
    return Gk / static_cast<double>(nc);
}

OccupationProfile real_space_occupations_pbc(const SshParams& params, double t, const TildeCorrelation& g0) {
    params.validate();
    g0.validate();
    const bool eom = std::abs(params.gamma_minus()) <= 1e-14 && params.standard_angles(1e-12);
    const std::array<double, 1> times{t};
    double ga = 0.0, gb = 0.0;
    for (double k : k_grid(params.n_cells)) {
        if (eom) {
            const auto [a, b] = g_k_from_tilde(eom_evolve(params, k, g0, times).front());
            ga += a;
            gb += b;
        } else {
            const Mat G = damping_evolve_k(params, k, g0.site_correlation(), times).front();
            ga += G(0, 0).real();
            gb += G(1, 1).real();
        }
    }
    ga /= params.n_cells;
    gb /= params.n_cells;
    OccupationProfile p;
    p.occupations.resize(params.n_modes());
    for (int c = 0; c < params.n_cells; ++c) {
        p.occupations(2 * c) = ga;
        p.occupations(2 * c + 1) = gb;
    }
    double spread = 0.0;
    for (int s = 0; s < 2; ++s) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int c = 0; c < params.n_cells; ++c) {
            lo = std::min(lo, p.occupations(2 * c + s));
            hi = std::max(hi, p.occupations(2 * c + s));
        }
        spread = std::max(spread, hi - lo);
    }
    p.spread = spread;
    return p;
}

}  // namespace skin
