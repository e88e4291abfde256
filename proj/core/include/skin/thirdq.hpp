#pragma once

#include <vector>

#include "skin/majorana.hpp"
#include "skin/types.hpp"

namespace skin {

// L⁽⁺⁾ = A† T A − T0 on the even sector, A_{2j} = (C_j + C_j†)/√2,
// A_{2j+1} = i(C_j − C_j†)/√2 (zero-based, one pair per Majorana index j).
struct StructureMatrix {
    Mat T;  // 4N×4N antisymmetric
    cplx T0;
};

struct DecomposeOptions {
    double pairing_tol = 1e-8;          // relative to max(1, spectral radius)
    double normalization_floor = 1e-12; // |v_B · v_B̃| for unit eigenvectors
    double max_condition = 1e7;         // per-mode eigenvalue condition number
    double zero_mode_tol = 1e-9;        // |Re β| below this flags a zero mode
    double charge_tol = 1e-6;           // invariance residual for charge resolution
    double defect_tol = 1e-6;           // nilpotent residue of a degenerate cluster, relative
};

// Rows 2m and 2m+1 of V hold the A-coefficients of B_m and B̃_m, so that
// {B_m, B̃_n} = δ_mn and L⁽⁺⁾ = −2 Σ β_m B̃_m B_m.
struct RapidityDecomposition {
    Vec betas;
    Mat V;
    std::vector<bool> zero_mode;
    cplx T0{0.0, 0.0};
    bool pump_free = false;

    // V_scaled has B rows multiplied and B̃ rows divided by column_scale.
    // Site-local bilinears B_a B̃_b are formed from it to avoid the
    // cancellation that the raw V suffers on long skin-effect chains.
    Mat V_scaled;
    RVec column_scale;

    int n_normal_modes() const { return static_cast<int>(betas.size()); }
    int n_sites() const { return n_normal_modes() / 2; }
    Mat b_rows() const;
    Mat bt_rows() const;
};

StructureMatrix build_structure_matrix(const MajoranaForm& F);
Mat build_drift_matrix(const MajoranaForm& F);

// Pairs the spectrum of T into ±β (spec route). Suitable for small and
// moderately non-normal problems.
RapidityDecomposition rapidity_decompose(const StructureMatrix& S, const DecomposeOptions& opts = {});

// Builds the same decomposition from the 2N drift matrix with diagonal
// balancing; this is the route used for long open chains.
RapidityDecomposition rapidity_decompose(const MajoranaForm& F, const DecomposeOptions& opts = {});

// Paired block form Λ with Λ_{2m,2m+1} = β_m, Λ_{2m+1,2m} = −β_m.
Mat paired_block_form(const Vec& betas);

// All 2^{2N} eigenvalues −2 Σ β_m ν_m when 2N ≤ max_enumerated_modes, else the
// generators −2β_m.
std::vector<cplx> liouvillian_eigenvalues(const RapidityDecomposition& dec, int max_enumerated_modes = 20);

// Diagonal similarity d such that D⁻¹ K D has balanced row and column norms.
RVec balance_scaling(const Mat& K, int sweeps = 60);

}  // namespace skin
