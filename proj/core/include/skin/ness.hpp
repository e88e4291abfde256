#pragma once

#include "skin/model.hpp"
#include "skin/thirdq.hpp"
#include "skin/types.hpp"

namespace skin {

// Largest site count handled by delegating to the dense oracle.
inline constexpr int kOracleNessLimit = 4;

// Steady-state site occupations G_{m,NESS}. Pump-free models give ½ on every
// site; otherwise small systems use the dense oracle and larger ones the NESS
// two-point table of the decomposition.
RVec ness_occupations(const RapidityDecomposition& dec, const ModelSpec& model);

// Δ_{G_{m,n}} for one excited normal mode n (zero-based), as a site profile.
RVec single_mode_delta(const RapidityDecomposition& dec, int n);

// All profiles at once: column n holds Δ_{G_{·,n}}.
RMat single_mode_deltas(const RapidityDecomposition& dec);

}  // namespace skin
