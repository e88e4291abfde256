#include "skin/majorana.hpp"

#include <cmath>
#include <stdexcept>

namespace skin {

bool MajoranaForm::pump_free(double tol) const {
    return (M - M.transpose()).cwiseAbs().maxCoeff() <= tol;
}

std::pair<Mat, double> dirac_to_majorana_h(const HamiltonianSpec& spec) {
    const Mat& h = spec.h;
    const int n = spec.n_modes();
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("majorana: h is not Hermitian");
    Mat H = Mat::Zero(2 * n, 2 * n);
    double shift = 0.0;
    for (int m = 0; m < n; ++m) {
        shift += h(m, m).real();
        for (int k = 0; k < n; ++k) {
            const cplx diff = (h(m, k) - h(k, m)) / 8.0;
            const cplx sum = (h(m, k) + h(k, m)) / 8.0;
            H(2 * m, 2 * k) = diff;
            H(2 * m, 2 * k + 1) = -I * sum;
            H(2 * m + 1, 2 * k) = I * sum;
            H(2 * m + 1, 2 * k + 1) = diff;
        }
    }
    // d†d = (1 − i w_{2m} w_{2m+1})/2, so the identity part is half the trace.
    return {H, 0.5 * shift};
}

Vec jump_to_majorana(const JumpOperatorSpec& j) {
    const auto n = j.c_minus.size();
    if (j.c_plus.size() != n) throw std::invalid_argument("majorana: jump vector lengths differ");
    Vec l(2 * n);
    for (Eigen::Index m = 0; m < n; ++m) {
        l(2 * m) = (j.c_minus(m) + j.c_plus(m)) / 2.0;
        l(2 * m + 1) = -I * (j.c_minus(m) - j.c_plus(m)) / 2.0;
    }
    return l;
}

Mat bath_matrix(std::span<const Vec> jumps, int n_modes) {
    Mat M = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (const auto& l : jumps) {
        if (l.size() != 2 * n_modes) throw std::invalid_argument("majorana: jump vector has wrong length");
        M.noalias() += l * l.adjoint();
    }
    return M;
}

namespace {

// One 4×4 cell block: g/4 (S + i A) with the symmetric and antisymmetric parts
// written out separately as in the closed forms.
Eigen::Matrix4cd cell_block(double g, double th, double ph, bool gain) {
    const double c2 = std::cos(th) * std::cos(th);
    const double s2 = std::sin(th) * std::sin(th);
    const double sc = std::sin(th) * std::cos(th);
    const double cp = std::cos(ph) * sc;
    const double sp = std::sin(ph) * sc;
    Eigen::Matrix4d S;
    Eigen::Matrix4d A;
    if (!gain) {
        S << c2, 0, cp, sp,
             0, c2, -sp, cp,
             cp, -sp, s2, 0,
             sp, cp, 0, s2;
        A << 0, c2, -sp, cp,
             -c2, 0, -cp, -sp,
             sp, cp, 0, s2,
             -cp, sp, -s2, 0;
    } else {
        S << c2, 0, cp, -sp,
             0, c2, sp, cp,
             cp, sp, s2, 0,
             -sp, cp, 0, s2;
        A << 0, -c2, -sp, -cp,
             c2, 0, cp, -sp,
             sp, -cp, 0, -s2,
             cp, sp, s2, 0;
    }
    return (g / 4.0) * (S.cast<cplx>() + I * A.cast<cplx>());
}

}  // namespace

std::pair<Mat, Mat> general_bath_matrices(const SshParams& p) {
    p.validate();
    const int dim = 2 * p.n_modes();
    Mat Ml = Mat::Zero(dim, dim);
    Mat Mg = Mat::Zero(dim, dim);
    const auto bl = cell_block(p.gamma_l, p.theta, p.phi, false);
    const auto bg = cell_block(p.gamma_g, p.theta_p, p.phi_p, true);
    for (int c = 0; c < p.n_cells; ++c) {
        Ml.block<4, 4>(4 * c, 4 * c) = bl;
        Mg.block<4, 4>(4 * c, 4 * c) = bg;
    }
    return {Ml, Mg};
}

MajoranaForm to_majorana(const ModelSpec& model) {
    model.validate();
    auto [H, shift] = dirac_to_majorana_h(model.hamiltonian);
    std::vector<Vec> ls;
    ls.reserve(model.jumps.size());
    for (const auto& j : model.jumps) ls.push_back(jump_to_majorana(j));
    return {std::move(H), bath_matrix(ls, model.n_modes()), shift};
}

}  // namespace skin
