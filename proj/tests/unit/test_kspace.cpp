#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "../support/generators.hpp"
#include "skin/damping.hpp"
#include "skin/errors.hpp"
#include "skin/kspace.hpp"
#include "skin/linalg.hpp"
#include "skin/majorana.hpp"
#include "skin/thirdq.hpp"

using namespace skin;
using namespace skin::testing;
using linalg::multiset_distance;
using linalg::submultiset_distance;

namespace {

std::vector<cplx> eigenvalues(const Mat& m) {
    Eigen::ComplexEigenSolver<Mat> es(m, false);
    const Vec ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Mat real_space_pbc_correlation(const SshParams& p, double t) {
    const auto model = build_ssh_model(p, Boundary::Periodic);
    const int n = p.n_modes();
    const Mat Ginf = steady_state_correlation(model);
    return Ginf + propagate_deviation(damping_matrix(model), Mat::Identity(n, n) - Ginf, t);
}

const std::vector<double> kMomenta{0.0, 0.3 * kPi, 0.5 * kPi, 0.8 * kPi, kPi, 1.4 * kPi};

}  // namespace

TEST(KBlock, ClosedFormRapiditiesMatchDrift) {
    Rng rng(601);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = standard_params(1, uniform(rng, 0.1, 1.5), 0.0, 0.0);
        p.t2 = uniform(rng, 0.5, 1.5);
        p.gamma_l = p.gamma_g = uniform(rng, 0.05, 0.5);
        const double k = uniform(rng, 0.0, 2 * kPi);
        const auto block = k_block(p, k);
        const auto rap = closed_form_rapidities(p, k);
        const std::vector<cplx> closed(rap.begin(), rap.end());
        EXPECT_LE(multiset_distance(closed, eigenvalues(build_drift_matrix(block.form))), 1e-10) << "trial " << trial;
        EXPECT_NEAR(block.R, p.t1 + p.t2 * std::cos(k), 1e-15);
        EXPECT_NEAR(block.Im, -p.t2 * std::sin(k), 1e-15);
    }
}

TEST(KBlock, PrincipalBranchEigenvaluesBelongToStructureSpectrum) {
    const auto p = standard_params(1);
    for (double k : kMomenta) {
        const auto block = k_block(p, k);
        const auto S = build_structure_matrix(block.form);
        const auto spectrum = eigenvalues(S.T);
        const auto lam = closed_form_eigenvalues(p, k);
        const auto rap = closed_form_rapidities(p, k);
        std::vector<cplx> plus_minus;
        for (const auto& b : rap) {
            plus_minus.push_back(b);
            plus_minus.push_back(-b);
        }
        EXPECT_LE(multiset_distance(plus_minus, spectrum), 1e-8) << "k=" << k;
        EXPECT_LE(submultiset_distance(std::vector<cplx>(lam.begin(), lam.end()), plus_minus), 1e-12);
        EXPECT_NEAR(std::abs(lam[1] + lam[0]), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(lam[3] + lam[2]), 0.0, 1e-15);
    }
}

TEST(KBlock, RingSpectrumIsUnionOfMomenta) {
    const auto p = standard_params(6, 0.6);
    const auto dec = rapidity_decompose(to_majorana(build_ssh_model(p, Boundary::Periodic)));
    std::vector<cplx> from_k;
    for (double k : k_grid(p.n_cells)) {
        const auto r = closed_form_rapidities(p, k);
        from_k.insert(from_k.end(), r.begin(), r.end());
    }
    const std::vector<cplx> real_space(dec.betas.data(), dec.betas.data() + dec.betas.size());
    EXPECT_LE(multiset_distance(from_k, real_space), 1e-10);
}

TEST(KBlock, PumpVanishesWhenBalanced) {
    const auto block = k_block(standard_params(1), 0.7);
    EXPECT_LE(max_abs(block.pump), 1e-15);
    auto p = standard_params(1, 0.8, 0.3, 0.1);
    EXPECT_GT(max_abs(k_block(p, 0.7).pump), 1e-3);
}

TEST(Tilde, RoundTripAndNamedStates) {
    Rng rng(602);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat U = random_matrix(rng, 2, 2).householderQr().householderQ();
        RVec occ(2);
        occ << uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0);
        const Mat G = U * occ.cast<cplx>().asDiagonal() * U.adjoint();
        const auto g = TildeCorrelation::from_site_correlation(G);
        EXPECT_NO_THROW(g.validate());
        EXPECT_LE(max_abs(g.site_correlation() - G), 1e-14);
        const auto [ga, gb] = g_k_from_tilde(g);
        EXPECT_NEAR(ga, G(0, 0).real(), 1e-14);
        EXPECT_NEAR(gb, G(1, 1).real(), 1e-14);
    }
    const auto [ua, ub] = g_k_from_tilde(TildeCorrelation::unit_filling());
    EXPECT_NEAR(ua, 1.0, 1e-15);
    EXPECT_NEAR(ub, 1.0, 1e-15);
    const auto [ha, hb] = g_k_from_tilde(TildeCorrelation{{0.5, 0.0, 0.0, 0.5}});
    EXPECT_NEAR(ha, 0.5, 1e-15);
    EXPECT_NEAR(hb, 0.5, 1e-15);
}

TEST(Tilde, RejectsNonHermitian) {
    TildeCorrelation g{{1.0, cplx(0.0, 0.4), cplx(0.0, 0.4), 1.0}};
    EXPECT_THROW(g.validate(), CARViolation);
}

TEST(Eom, SteadyStateIsHalfFilled) {
    for (double k : {0.0, 0.3 * kPi, 0.5 * kPi, 0.8 * kPi, 1.4 * kPi}) {
        const auto g = eom_steady_state(standard_params(1, 1.0), k);
        EXPECT_NEAR(std::abs(g.g[0] - 0.5), 0.0, 1e-12) << "k=" << k;
        EXPECT_NEAR(std::abs(g.g[3] - 0.5), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(g.g[1]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(g.g[2]), 0.0, 1e-12);
    }
}

TEST(Eom, DarkModeSteadyStateIsRejected) {
    // t₁ = t₂ closes the gap at k = π.
    EXPECT_THROW(eom_steady_state(standard_params(1, 1.0), kPi), UnsupportedRegime);
}

TEST(Eom, AgreesWithAdjointAndDampingRoutes) {
    const auto p = standard_params(1, 1.0);
    const std::vector<double> times{0.0, 0.4, 1.7, 5.0, 12.0};
    for (double k : {0.25 * kPi, 0.5 * kPi, 0.75 * kPi, 0.9 * kPi}) {
        const auto eom = eom_evolve(p, k, TildeCorrelation::unit_filling(), times);
        const auto adj = adjoint_evolve_k(p, k, Mat::Identity(2, 2), times);
        const auto damp = damping_evolve_k(p, k, Mat::Identity(2, 2), times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            EXPECT_LE(max_abs(eom[i].site_correlation() - adj[i]), 1e-12) << "k=" << k << " t=" << times[i];
            EXPECT_LE(max_abs(damp[i] - adj[i]), 1e-12);
        }
    }
}

TEST(Eom, CalibrationPicksHalfGammaPlus) {
    const auto p = standard_params(1, 1.0);
    const std::vector<double> probe{0.5, 1.0, 2.0, 4.0};
    for (double k : {0.3 * kPi, 0.6 * kPi}) {
        const auto cal = calibrate_eom_gamma(p, k, probe);
        EXPECT_EQ(cal.factor, 0.5);
        EXPECT_NEAR(cal.gamma, 0.5 * p.gamma_plus(), 1e-15);
        EXPECT_LT(cal.residual, 1e-12);
    }
    const std::vector<double> wrong{1.0, 2.0};
    EXPECT_GT(calibrate_eom_gamma(p, 0.3 * kPi, probe, wrong).residual, 1e-3);
}

TEST(Eom, RejectsUnbalancedOrGeneralAngles) {
    const std::vector<double> times{0.0, 1.0};
    EXPECT_THROW(eom_evolve(standard_params(1, 1.0, 0.3, 0.1), 0.5, TildeCorrelation::unit_filling(), times),
                 UnsupportedRegime);
    auto p = standard_params(1, 1.0);
    p.theta = 0.3;
    EXPECT_THROW(eom_evolve(p, 0.5, TildeCorrelation::unit_filling(), times), UnsupportedRegime);
}

TEST(KGrid, Spacing) {
    const auto g = k_grid(5);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_EQ(g[0], 0.0);
    EXPECT_NEAR(g[3], 2 * kPi * 3 / 5, 1e-15);
    EXPECT_THROW(k_grid(0), std::invalid_argument);
}

TEST(KCorrelation, FourierOfRingEvolution) {
    // Away from the exceptional point both the adjoint and damping per-k routes apply.
    const auto p = standard_params(6, 0.6);
    for (double t : {0.5, 3.0}) {
        const Mat G = real_space_pbc_correlation(p, t);
        for (double k : k_grid(p.n_cells)) {
            const std::vector<double> ts{t};
            const Mat Gk = k_correlation(G, k);
            EXPECT_LE(max_abs(Gk - adjoint_evolve_k(p, k, Mat::Identity(2, 2), ts)[0]), 1e-11) << "k=" << k;
            EXPECT_LE(max_abs(Gk - damping_evolve_k(p, k, Mat::Identity(2, 2), ts)[0]), 1e-11);
        }
    }
}

TEST(KCorrelation, ExceptionalPointHandledByDampingRoute) {
    // t₁ = 0.8 makes the k = π block defective on a 20-cell ring.
    const auto p = standard_params(20);
    const std::vector<double> ts{2.0};
    EXPECT_THROW(adjoint_evolve_k(p, kPi, Mat::Identity(2, 2), ts), NumericalError);
    const Mat G = real_space_pbc_correlation(p, 2.0);
    EXPECT_LE(max_abs(k_correlation(G, kPi) - damping_evolve_k(p, kPi, Mat::Identity(2, 2), ts)[0]), 1e-10);
}

TEST(RealSpacePbc, UniformAndConsistent) {
    for (const auto& p : {standard_params(6, 0.6), standard_params(20, 0.8), standard_params(5, 0.8, 0.3, 0.1)}) {
        for (double t : {0.0, 1.0, 7.0}) {
            const auto prof = real_space_occupations_pbc(p, t);
            EXPECT_LT(prof.spread, 1e-12);
            const RVec direct = real_space_pbc_correlation(p, t).diagonal().real();
            EXPECT_LE((prof.occupations - direct).cwiseAbs().maxCoeff(), 1e-10) << "t=" << t;
        }
    }
}
