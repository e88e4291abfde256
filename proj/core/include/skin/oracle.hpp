#pragma once

#include <vector>

#include "skin/majorana.hpp"
#include "skin/model.hpp"
#include "skin/thirdq.hpp"
#include "skin/types.hpp"

// Brute-force references for small systems. Nothing here is meant to scale.
namespace skin::oracle {

inline constexpr int kMaxDenseSites = 4;
inline constexpr int kMaxAdjointSites = 3;

// Jordan-Wigner annihilators on the 2^N Fock space; site 0 is the most
// significant bit of the basis index.
std::vector<Mat> annihilators(int n_sites);

// Superoperator on column-stacked vec(ρ): vec(AρB) = (Bᵀ ⊗ A) vec(ρ).
struct DenseLindbladian {
    int dim = 0;  // Hilbert-space dimension 2^N
    Mat superop;
};

DenseLindbladian dense_lindbladian(const ModelSpec& model);

Mat dense_evolve(const ModelSpec& model, const Mat& rho0, double t);
Mat dense_steady_state(const ModelSpec& model);
RVec steady_state_occupations(const ModelSpec& model);

// Product state with ⟨n_m⟩ = occupations(m), diagonal in the Fock basis.
Mat product_state(const RVec& occupations);
// G_mn = Tr(d_m† d_n ρ).
Mat correlation_from_rho(const Mat& rho);

// Operator space spanned by Majorana monomials P_α = w_0^{α_0} ⋯ w_{2N−1}^{α_{2N−1}},
// indexed by the bit string α with α_0 as the most significant bit. Coordinates
// of an operator X are x_α = Tr(P_α† X), so (1|ρ) = Tr ρ.
struct DenseAdjointSpace {
    int n_sites = 0;
    std::vector<Mat> C;   // annihilators, 2N of them
    std::vector<Mat> Cd;  // creators
    std::vector<Mat> A;   // A_{2j} = (C_j + C_j†)/√2, A_{2j+1} = i(C_j − C_j†)/√2

    int dim() const { return 1 << (2 * n_sites); }
    Mat parity() const;  // e^{iπÑ}
    std::vector<int> even_indices() const;

    Vec to_coordinates(const Mat& op) const;
    Mat from_coordinates(const Vec& x) const;

    // −2 C†(2iH + M + Mᵀ)C + 2 C†(M − Mᵀ)(C†)ᵀ.
    Mat liouvillian_plus(const MajoranaForm& F) const;
    // The physical Lindbladian written in the P_α basis.
    Mat physical_liouvillian(const ModelSpec& model) const;
    // Σ_a V(row, a) A_a for every row of the decomposition's V.
    std::vector<Mat> normal_mode_operators(const RapidityDecomposition& dec) const;
};

DenseAdjointSpace dense_adjoint_build(int n_sites);

}  // namespace skin::oracle
