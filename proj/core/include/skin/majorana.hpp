#pragma once

#include <span>
#include <utility>
#include <vector>

#include "skin/model.hpp"
#include "skin/types.hpp"

namespace skin {

// Majorana operators w_{2m} = d_m + d_m†, w_{2m+1} = i(d_m − d_m†) (zero-based).
struct MajoranaForm {
    Mat H;               // 2N×2N, antisymmetric and purely imaginary
    Mat M;               // 2N×2N, Hermitian PSD bath matrix
    double trace_shift;  // H_op = Σ w_j H_jk w_k + trace_shift

    int n_modes() const { return static_cast<int>(H.rows() / 2); }
    // True when M is real symmetric, i.e. the pump term C†(M − Mᵀ)C†ᵀ vanishes
    // and the identity is the steady state.
    bool pump_free(double tol = 1e-12) const;
};

std::pair<Mat, double> dirac_to_majorana_h(const HamiltonianSpec& h);
Vec jump_to_majorana(const JumpOperatorSpec& j);
Mat bath_matrix(std::span<const Vec> jumps, int n_modes);
// Closed-form per-cell loss and gain bath blocks for the cellular jump family.
std::pair<Mat, Mat> general_bath_matrices(const SshParams& params);

MajoranaForm to_majorana(const ModelSpec& model);

}  // namespace skin
