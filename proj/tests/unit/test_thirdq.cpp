#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

#include "../support/generators.hpp"
#include "skin/dynamics.hpp"
#include "skin/errors.hpp"
#include "skin/linalg.hpp"
#include "skin/majorana.hpp"
#include "skin/ness.hpp"
#include "skin/thirdq.hpp"

using namespace skin;
using namespace skin::testing;
using linalg::multiset_distance;

namespace {

Mat pairing_matrix(int n_modes) {
    Mat P = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) P(2 * m, 2 * m + 1) = P(2 * m + 1, 2 * m) = 1.0;
    return P;
}

std::vector<cplx> to_vector(const Vec& v) { return {v.data(), v.data() + v.size()}; }

MajoranaForm standard_form(int n_cells, Boundary bc = Boundary::Open, double t1 = 0.8) {
    return to_majorana(build_ssh_model(standard_params(n_cells, t1), bc));
}

// Both routes, so every structural property is checked on each.
std::vector<RapidityDecomposition> both_routes(const MajoranaForm& F) {
    return {rapidity_decompose(build_structure_matrix(F)), rapidity_decompose(F)};
}

}  // namespace

TEST(StructureMatrix, AntisymmetricWithTraceConstant) {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto model = random_model(rng, uniform_int(rng, 1, 5), uniform_int(rng, 1, 4));
        const auto F = to_majorana(model);
        const auto S = build_structure_matrix(F);
        EXPECT_EQ(S.T.rows(), 4 * model.n_modes());
        EXPECT_LE(max_abs(S.T + S.T.transpose()), 1e-14);
        EXPECT_NEAR(std::abs(S.T0 - 2.0 * F.M.trace()), 0.0, 1e-13);
    }
}

TEST(StructureMatrix, ClosedSystemHasNoDissipativeBlocks) {
    Rng rng(102);
    ModelSpec m;
    m.hamiltonian.h = random_hermitian(rng, 3);
    const auto S = build_structure_matrix(to_majorana(m));
    const Mat odd_even = S.T(Eigen::seq(1, Eigen::last, 2), Eigen::seq(0, Eigen::last, 2));
    EXPECT_LE(max_abs(odd_even), 1e-15);
    EXPECT_EQ(S.T0, cplx(0.0));
}

TEST(DriftMatrix, EigenvaluesMatchRapidities) {
    Rng rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 1, 5), 3));
        const Mat K = build_drift_matrix(F);
        Eigen::ComplexEigenSolver<Mat> es(K);
        const auto dec = rapidity_decompose(F);
        const auto eig = to_vector(es.eigenvalues());
        const auto betas = to_vector(dec.betas);
        EXPECT_LE(multiset_distance(eig, betas), 1e-10);
    }
}

TEST(Rapidities, SortedAndStableForDissipativeModels) {
    Rng rng(104);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 2, 5), 3));
        for (const auto& dec : both_routes(F)) {
            for (int m = 0; m < dec.n_normal_modes(); ++m) {
                EXPECT_GT(dec.betas(m).real(), 0.0);
                if (m > 0) EXPECT_GE(dec.betas(m - 1).real(), dec.betas(m).real() - 1e-12);
            }
        }
    }
}

TEST(Rapidities, RoutesAgree) {
    Rng rng(105);
    for (int trial = 0; trial < 20; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 1, 5), uniform_int(rng, 1, 4)));
        const auto routes = both_routes(F);
        EXPECT_LE(multiset_distance(to_vector(routes[0].betas), to_vector(routes[1].betas)), 1e-9);
    }
}

TEST(Rapidities, TraceIdentity) {
    // H is traceless, so Σβ = tr K = tr(M + Mᵀ) = 2 tr M.
    Rng rng(106);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 1, 6), 2));
        const auto dec = rapidity_decompose(F);
        EXPECT_NEAR(std::abs(dec.betas.sum() - 2.0 * F.M.trace()), 0.0, 1e-10);
    }
}

TEST(NormalModes, CanonicalAnticommutation) {
    Rng rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 1, 5), 3));
        for (const auto& dec : both_routes(F)) {
            const Mat P = pairing_matrix(dec.n_normal_modes());
            EXPECT_LE(max_abs(dec.V * dec.V.transpose() - P), 1e-9);
        }
    }
}

TEST(NormalModes, ReconstructStructureMatrix) {
    Rng rng(108);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 1, 5), 3));
        const auto S = build_structure_matrix(F);
        for (const auto& dec : both_routes(F)) {
            const Mat L = paired_block_form(dec.betas);
            EXPECT_LE(max_abs(dec.V.transpose() * L * dec.V - S.T), 1e-9 * std::max(1.0, max_abs(S.T)));
        }
    }
}

TEST(NormalModes, StandardChainReconstruction) {
    for (int nc : {1, 2, 5, 10}) {
        const auto F = standard_form(nc);
        const auto S = build_structure_matrix(F);
        for (const auto& dec : both_routes(F)) {
            const Mat L = paired_block_form(dec.betas);
            EXPECT_LE(max_abs(dec.V.transpose() * L * dec.V - S.T), 1e-10) << "cells=" << nc;
            EXPECT_LE(max_abs(dec.V * dec.V.transpose() - pairing_matrix(dec.n_normal_modes())), 1e-10);
        }
    }
}

TEST(NormalModes, ScaledGaugeMatchesPlainRows) {
    const auto dec = rapidity_decompose(standard_form(6));
    ASSERT_EQ(dec.column_scale.size(), dec.V.cols());
    const auto s = dec.column_scale.cast<cplx>().asDiagonal();
    for (int m = 0; m < dec.n_normal_modes(); ++m) {
        EXPECT_LE(max_abs(dec.V.row(2 * m) * s - dec.V_scaled.row(2 * m)), 1e-12 * max_abs(dec.V_scaled));
        EXPECT_LE(max_abs(dec.V_scaled.row(2 * m + 1) * s - dec.V.row(2 * m + 1)), 1e-12 * max_abs(dec.V));
    }
}

TEST(NormalModes, LeftVacuumCondition) {
    Rng rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = to_majorana(random_model(rng, uniform_int(rng, 1, 5), 3));
        for (const auto& dec : both_routes(F)) {
            const Mat Bt = dec.bt_rows();
            for (int m = 0; m < Bt.rows(); ++m)
                for (int j = 0; j < dec.n_normal_modes(); ++j)
                    EXPECT_LE(std::abs(Bt(m, 2 * j) + I * Bt(m, 2 * j + 1)), 1e-9);
        }
    }
}

TEST(NormalModes, GaugeRescalingLeavesObservablesUnchanged) {
    Rng rng(110);
    const auto model = random_model(rng, 3, 3);
    const auto F = to_majorana(model);
    const auto dec = rapidity_decompose(build_structure_matrix(F));
    auto scaled = dec;
    for (int m = 0; m < dec.n_normal_modes(); ++m) {
        const double s = m % 2 == 0 ? 2.0 : 0.5;
        scaled.V.row(2 * m) *= s;
        scaled.V.row(2 * m + 1) /= s;
        scaled.V_scaled.row(2 * m) *= s;
        scaled.V_scaled.row(2 * m + 1) /= s;
    }
    const Mat Q = adjoint_two_point_table(InitialGaussianState::unit_filling(3));
    const auto a = f2_coefficients(dec, Q);
    const auto b = f2_coefficients(scaled, Q);
    for (double t : {0.0, 0.7, 3.0})
        EXPECT_LE(max_abs(spectral_correlation(dec, a, t) - spectral_correlation(scaled, b, t)), 1e-12);
}

TEST(NormalModes, RoutesGiveSameDynamics) {
    Rng rng(111);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = uniform_int(rng, 2, 5);
        const auto F = to_majorana(random_model(rng, n, 3));
        const auto routes = both_routes(F);
        const Mat Q = adjoint_two_point_table(InitialGaussianState::unit_filling(n));
        for (double t : {0.0, 0.5, 2.0}) {
            const Mat g0 = spectral_correlation(routes[0], f2_coefficients(routes[0], Q), t);
            const Mat g1 = spectral_correlation(routes[1], f2_coefficients(routes[1], Q), t);
            EXPECT_LE(max_abs(g0 - g1), 1e-9) << "trial " << trial << " t=" << t;
        }
    }
}

TEST(NormalModes, PumpFreeDetection) {
    EXPECT_TRUE(rapidity_decompose(standard_form(3)).pump_free);
    EXPECT_TRUE(rapidity_decompose(build_structure_matrix(standard_form(3))).pump_free);
    auto p = standard_params(3);
    p.gamma_g = 0.05;
    const auto F = to_majorana(build_ssh_model(p, Boundary::Open));
    EXPECT_FALSE(rapidity_decompose(F).pump_free);
    EXPECT_FALSE(rapidity_decompose(build_structure_matrix(F)).pump_free);
}

TEST(NormalModes, StandardChainHasUniformDamping) {
    const auto dec = rapidity_decompose(standard_form(20));
    for (int m = 0; m < dec.n_normal_modes(); ++m) EXPECT_NEAR(dec.betas(m).real(), 0.1, 1e-10);
}

TEST(NormalModes, ZeroModesAreFlagged) {
    // t₁ = t₂/2 puts a dark mode on the k = 2π/3 momentum of a three-cell ring.
    const auto dec = rapidity_decompose(standard_form(3, Boundary::Periodic, 0.5));
    const auto flagged = std::count(dec.zero_mode.begin(), dec.zero_mode.end(), true);
    EXPECT_GT(flagged, 0);
    for (int m = 0; m < dec.n_normal_modes(); ++m)
        EXPECT_EQ(dec.zero_mode[m], std::abs(dec.betas(m).real()) < 1e-9);
}

TEST(NormalModes, ExceptionalPointIsRejected) {
    // The k = π block of the t₁ = 0.8 ring is defective.
    const auto F = standard_form(20, Boundary::Periodic);
    EXPECT_THROW(rapidity_decompose(F), NormalizationFailure);
    EXPECT_THROW(rapidity_decompose(build_structure_matrix(F)), NumericalError);
}

TEST(NormalModes, DeterministicAcrossCalls) {
    const auto F = standard_form(8);
    const auto a = rapidity_decompose(F);
    const auto b = rapidity_decompose(F);
    EXPECT_EQ(max_abs(a.V - b.V), 0.0);
    EXPECT_EQ(max_abs(a.betas - b.betas), 0.0);
}

TEST(LiouvillianSpectrum, EnumeratesSubsetSums) {
    const auto dec = rapidity_decompose(standard_form(1));
    const auto ev = liouvillian_eigenvalues(dec);
    ASSERT_EQ(ev.size(), 16u);
    EXPECT_EQ(ev[0], cplx(0.0));
    EXPECT_NEAR(std::abs(ev[3] + 2.0 * (dec.betas(0) + dec.betas(1))), 0.0, 1e-15);
    const auto truncated = liouvillian_eigenvalues(dec, 1);
    EXPECT_EQ(truncated.size(), 4u);
}

TEST(SingleModeProfiles, CarryHalfCharge) {
    const auto dec = rapidity_decompose(standard_form(10));
    const RMat deltas = single_mode_deltas(dec);
    for (int n = 0; n < deltas.cols(); ++n) {
        EXPECT_NEAR(std::abs(deltas.col(n).sum()), 0.5, 1e-10) << "mode " << n;
        EXPECT_LE((deltas.col(n) - single_mode_delta(dec, n)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(SingleModeProfiles, RejectBadIndexAndPumpedModels) {
    const auto dec = rapidity_decompose(standard_form(2));
    EXPECT_THROW(single_mode_delta(dec, -1), std::out_of_range);
    EXPECT_THROW(single_mode_delta(dec, dec.n_normal_modes()), std::out_of_range);
    auto p = standard_params(2);
    p.gamma_g = 0.05;
    const auto pumped = rapidity_decompose(to_majorana(build_ssh_model(p, Boundary::Open)));
    EXPECT_THROW(single_mode_deltas(pumped), UnsupportedRegime);
}

TEST(BalanceScaling, ApproximatelyEqualisesRowAndColumnSums) {
    const Mat K = build_drift_matrix(standard_form(15));
    const RVec d = balance_scaling(K);
    const Mat B = d.cwiseInverse().cast<cplx>().asDiagonal() * K * d.cast<cplx>().asDiagonal();
    RMat A = B.cwiseAbs();
    A.diagonal().setZero();
    for (int i = 0; i < A.rows(); ++i) EXPECT_NEAR(A.row(i).sum() / A.col(i).sum(), 1.0, 1e-2) << "row " << i;
}
