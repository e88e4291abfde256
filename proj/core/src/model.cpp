#include "skin/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skin {

void ModelSpec::validate() const {
    const auto n = hamiltonian.h.rows();
    if (n == 0 || hamiltonian.h.cols() != n)
        throw std::invalid_argument("model: h must be a non-empty square matrix");
    if ((hamiltonian.h - hamiltonian.h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("model: h is not Hermitian");
    for (const auto& j : jumps) {
        if (j.c_minus.size() != n || j.c_plus.size() != n)
            throw std::invalid_argument("model: jump vector length differs from the mode count");
    }
}

bool SshParams::standard_angles(double tol) const {
    return std::abs(theta - kPi / 4) <= tol && std::abs(theta_p - kPi / 4) <= tol &&
           std::abs(phi + kPi / 2) <= tol && std::abs(phi_p - kPi / 2) <= tol;
}

void SshParams::validate() const {
    if (n_cells < 1) throw std::invalid_argument("model: n_cells must be at least 1");
    if (!(gamma_l >= 0.0) || !(gamma_g >= 0.0))
        throw std::invalid_argument("model: rates must be non-negative");
    for (double v : {t1, t2, theta, phi, theta_p, phi_p}) {
        if (!std::isfinite(v)) throw std::invalid_argument("model: parameters must be finite");
    }
}

HamiltonianSpec build_ssh_hamiltonian(const SshParams& params, Boundary bc) {
    params.validate();
    const int nc = params.n_cells;
    const int n = 2 * nc;
    Mat h = Mat::Zero(n, n);
    for (int c = 0; c < nc; ++c) {
        const int a = 2 * c;
        const int b = a + 1;
        h(b, a) += params.t1;
        h(a, b) += params.t1;
        if (c + 1 < nc) {
            h(b + 1, b) += params.t2;
            h(b, b + 1) += params.t2;
        }
    }
    if (bc == Boundary::Periodic) {
        h(0, n - 1) += params.t2;
        h(n - 1, 0) += params.t2;
    }
    return {h};
}

std::vector<JumpOperatorSpec> build_general_jumps(const SshParams& params) {
    params.validate();
    const int n = params.n_modes();
    const double sl = std::sqrt(params.gamma_l);
    const double sg = std::sqrt(params.gamma_g);
    std::vector<JumpOperatorSpec> out;
    out.reserve(2 * params.n_cells);
    for (int c = 0; c < params.n_cells; ++c) {
        JumpOperatorSpec loss{Vec::Zero(n), Vec::Zero(n)};
        loss.c_minus(2 * c) = sl * std::cos(params.theta);
        loss.c_minus(2 * c + 1) = sl * std::polar(1.0, params.phi) * std::sin(params.theta);
        JumpOperatorSpec gain{Vec::Zero(n), Vec::Zero(n)};
        gain.c_plus(2 * c) = sg * std::cos(params.theta_p);
        gain.c_plus(2 * c + 1) = sg * std::polar(1.0, params.phi_p) * std::sin(params.theta_p);
        out.push_back(std::move(loss));
        out.push_back(std::move(gain));
    }
    return out;
}

std::vector<JumpOperatorSpec> build_standard_jumps(int n_cells, double gamma_l, double gamma_g) {
    SshParams p;
    p.n_cells = n_cells;
    p.gamma_l = gamma_l;
    p.gamma_g = gamma_g;
    return build_general_jumps(p);
}

ModelSpec build_ssh_model(const SshParams& params, Boundary bc) {
    ModelSpec m{build_ssh_hamiltonian(params, bc), build_general_jumps(params), bc};
    m.validate();
    return m;
}

}  // namespace skin
