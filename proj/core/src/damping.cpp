#include "skin/damping.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "skin/errors.hpp"
#include "skin/linalg.hpp"

namespace skin {

namespace {

struct CellRates {
    double loss_cc, loss_ss, gain_cc, gain_ss;  // γ cos²θ, γ sin²θ for loss and gain
    cplx loss_sc, gain_sc;                      // γ e^{iφ} sinθ cosθ for loss and gain
};

// A jump carrying both c⁻ and c⁺ feeds ⟨d d⟩ into ⟨d† d⟩, so G alone no longer closes.
void require_number_conserving(const ModelSpec& model) {
    model.validate();
    for (const auto& j : model.jumps) {
        if (j.c_minus.squaredNorm() > 0.0 && j.c_plus.squaredNorm() > 0.0)
            throw UnsupportedRegime("damping", "a jump operator mixes loss and gain", 0.0);
    }
}

CellRates cell_rates(const SshParams& p) {
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    const double cg = std::cos(p.theta_p), sg = std::sin(p.theta_p);
    return {p.gamma_l * ct * ct, p.gamma_l * st * st, p.gamma_g * cg * cg, p.gamma_g * sg * sg,
            p.gamma_l * st * ct * std::polar(1.0, p.phi), p.gamma_g * sg * cg * std::polar(1.0, p.phi_p)};
}

}  // namespace

DampingMatrix build_damping_matrix(const SshParams& params, Boundary bc) {
    params.validate();
    const int n = params.n_modes();
    const CellRates r = cell_rates(params);
    Mat X = Mat::Zero(n, n);
    for (int c = 0; c < params.n_cells; ++c) {
        const int a = 2 * c;
        const int b = a + 1;
        X(a, a) = -r.loss_cc - r.gain_cc;
        X(b, b) = -r.loss_ss - r.gain_ss;
        X(a, b) = I * params.t1 - std::conj(r.loss_sc) - r.gain_sc;
        X(b, a) = I * params.t1 - r.loss_sc - std::conj(r.gain_sc);
        if (c + 1 < params.n_cells) {
            X(b, b + 1) += I * params.t2;
            X(b + 1, b) += I * params.t2;
        }
    }
    if (bc == Boundary::Periodic) {
        X(0, n - 1) += I * params.t2;
        X(n - 1, 0) += I * params.t2;
    }
    return {X};
}

Mat damping_matrix(const ModelSpec& model) {
    require_number_conserving(model);
    Mat X = I * model.hamiltonian.h.transpose();
    for (const auto& j : model.jumps) {
        X -= j.c_minus * j.c_minus.adjoint();
        X -= (j.c_plus * j.c_plus.adjoint()).conjugate();
    }
    return X;
}

Mat gain_source(const ModelSpec& model) {
    require_number_conserving(model);
    const int n = model.n_modes();
    Mat S = Mat::Zero(n, n);
    for (const auto& j : model.jumps) S += 2.0 * (j.c_plus * j.c_plus.adjoint()).conjugate();
    return S;
}

Mat propagate_deviation(const Mat& X, const Mat& dG0, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("damping: t must be ≥ 0");
    if (X.rows() != dG0.rows() || X.cols() != dG0.cols())
        throw std::invalid_argument("damping: ΔG(0) size differs from X");
    const Mat E = linalg::expm(X * t);
    return E * dG0 * E.adjoint();
}

Mat steady_state_correlation(const ModelSpec& model) {
    return linalg::lyapunov(damping_matrix(model), gain_source(model));
}

SkinVerdict skin_absent(const SshParams& params, double tol) {
    params.validate();
    const double delta = params.gamma_l * std::sin(params.phi) * std::sin(params.theta) * std::cos(params.theta) -
                         params.gamma_g * std::sin(params.phi_p) * std::sin(params.theta_p) * std::cos(params.theta_p);
    SshParams one = params;
    one.n_cells = 1;
    const Mat X = build_damping_matrix(one, Boundary::Open).X;
    SkinVerdict v;
    v.absent = std::abs(params.t1) <= tol || std::abs(delta) <= tol;
    v.residual = std::abs(X(0, 1)) - std::abs(X(1, 0));
    // |X₁₂|² − |X₂₁|² = 4 t₁ δ, so an absent verdict forces a vanishing residual.
    if (v.absent && std::abs(v.residual) > 1e-10)
        throw std::logic_error("damping: skin-absence predicate disagrees with |X12| = |X21|");
    return v;
}

BoundarySpectra obc_pbc_spectra(const SshParams& params) {
    const Mat Xo = build_damping_matrix(params, Boundary::Open).X;
    const Mat Xp = build_damping_matrix(params, Boundary::Periodic).X;
    Eigen::ComplexEigenSolver<Mat> eo(Xo);
    Eigen::ComplexEigenSolver<Mat> ep(Xp, false);
    if (eo.info() != Eigen::Success || ep.info() != Eigen::Success)
        throw std::runtime_error("damping: eigensolver did not converge");
    BoundarySpectra out;
    const auto n = Xo.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        out.obc.push_back(eo.eigenvalues()(i));
        out.pbc.push_back(ep.eigenvalues()(i));
        const Vec v = eo.eigenvectors().col(i).normalized();
        double w = 0.0, s = 0.0;
        for (Eigen::Index m = 0; m < n; ++m) {
            const double p2 = std::norm(v(m));
            const double x = n > 1 ? (2.0 * static_cast<double>(m) - static_cast<double>(n - 1)) / static_cast<double>(n - 1) : 0.0;
            w += p2 * p2;
            s += p2 * p2 * x;
        }
        out.localization.push_back(w > 0.0 ? s / w : 0.0);
    }
    return out;
}

}  // namespace skin
