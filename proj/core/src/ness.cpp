#include "skin/ness.hpp"

#include <stdexcept>

#include "skin/dynamics.hpp"
#include "skin/errors.hpp"
#include "skin/majorana.hpp"
#include "skin/oracle.hpp"

namespace skin {

RVec ness_occupations(const RapidityDecomposition& dec, const ModelSpec& model) {
    const int n = model.n_modes();
    if (dec.n_sites() != n) throw std::invalid_argument("ness: decomposition and model sizes differ");
    if (dec.pump_free) return RVec::Constant(n, 0.5);
    if (n <= kOracleNessLimit) return oracle::steady_state_occupations(model);
    for (bool z : dec.zero_mode) {
        if (z) throw UnsupportedRegime("ness", "steady state is not unique (zero modes) and the pump term is present");
    }
    return ness_correlation(dec).diagonal().real();
}

namespace {

void delta_column(const RapidityDecomposition& dec, int n, Eigen::Ref<RVec> out) {
    const Mat& Vs = dec.V_scaled;
    const RVec& s = dec.column_scale;
    for (int m = 0; m < dec.n_sites(); ++m) {
        const int a = 4 * m;
        const int b = 4 * m + 2;
        // Only (1|B_n B̃_n|NESS) = 1 survives the contraction of
        // (1|B_n (1 − 2i A_a A_b)/2 B̃_n|NESS) − ½.
        const cplx v = -I * (Vs(2 * n, a) * Vs(2 * n + 1, b) * (s(b) / s(a)) -
                             Vs(2 * n, b) * Vs(2 * n + 1, a) * (s(a) / s(b)));
        if (std::abs(v.imag()) > 1e-6)
            throw ResidueTooLarge("ness", "single-mode occupation has an imaginary part", 1e-6);
        out(m) = v.real();
    }
}

void require_pump_free(const RapidityDecomposition& dec) {
    if (!dec.pump_free)
        throw UnsupportedRegime("ness", "single-mode profiles need the identity steady state (no pump term)");
}

}  // namespace

RMat single_mode_deltas(const RapidityDecomposition& dec) {
    require_pump_free(dec);
    RMat out(dec.n_sites(), dec.n_normal_modes());
    for (int n = 0; n < dec.n_normal_modes(); ++n) delta_column(dec, n, out.col(n));
    return out;
}

RVec single_mode_delta(const RapidityDecomposition& dec, int n) {
    require_pump_free(dec);
    if (n < 0 || n >= dec.n_normal_modes()) throw std::out_of_range("ness: mode index out of range");
    RVec out(dec.n_sites());
    delta_column(dec, n, out);
    return out;
}

}  // namespace skin
