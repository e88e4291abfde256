#pragma once

#include <span>
#include <vector>

#include "skin/types.hpp"

namespace skin::linalg {

// Padé-13 scaling and squaring (Higham 2005).
Mat expm(const Mat& A);

// Solves X G + G X† + S = 0 by complex Bartels-Stewart. Throws UnstableDrift
// when X has an eigenvalue with real part ≥ −stability_margin.
Mat lyapunov(const Mat& X, const Mat& S, double stability_margin = 1e-10);

// Minimum-cost perfect matching on a square cost matrix; returns col for each row.
std::vector<int> hungarian(const RMat& cost);

// Largest |a_i − b_π(i)| under the matching that minimises the total distance.
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b);

// Largest distance from each element of `sub` to its nearest unused element of
// `super`, matched optimally. `sub` may be smaller than `super`.
double submultiset_distance(std::span<const cplx> sub, std::span<const cplx> super);

}  // namespace skin::linalg
