#include <gtest/gtest.h>

#include <algorithm>

#include "../support/generators.hpp"
#include "skin/damping.hpp"
#include "skin/errors.hpp"
#include "skin/majorana.hpp"
#include "skin/ness.hpp"
#include "skin/oracle.hpp"
#include "skin/thirdq.hpp"

using namespace skin;
using namespace skin::testing;

namespace {

RVec occupations(const ModelSpec& model) { return ness_occupations(rapidity_decompose(to_majorana(model)), model); }

double largest(const RVec& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Ness, BalancedChainIsHalfFilled) {
    for (int nc : {1, 3, 10, 50}) {
        const auto model = build_ssh_model(standard_params(nc), Boundary::Open);
        const RVec occ = occupations(model);
        ASSERT_EQ(occ.size(), 2 * nc);
        EXPECT_LE(largest((occ.array() - 0.5).matrix()), 1e-14) << "cells=" << nc;
    }
}

TEST(Ness, PureLossEmptiesAndPureGainFills) {
    const auto loss = build_ssh_model(standard_params(2, 0.8, 0.4, 0.0), Boundary::Open);
    const auto gain = build_ssh_model(standard_params(2, 0.8, 0.0, 0.4), Boundary::Open);
    EXPECT_LE(largest(occupations(loss)), 1e-10);
    EXPECT_LE(largest((occupations(gain).array() - 1.0).matrix()), 1e-10);
    EXPECT_LE(largest(oracle::steady_state_occupations(loss)), 1e-10);
}

TEST(Ness, SmallSystemsMatchLyapunov) {
    Rng rng(301);
    for (int trial = 0; trial < 10; ++trial) {
        const auto model = random_number_conserving_model(rng, uniform_int(rng, 1, oracle::kMaxDenseSites), 2, 2);
        const RVec lyap = steady_state_correlation(model).diagonal().real();
        EXPECT_LE(largest(occupations(model) - lyap), 1e-9) << "trial " << trial;
    }
}

TEST(Ness, LargeSystemsMatchLyapunov) {
    Rng rng(302);
    for (int trial = 0; trial < 5; ++trial) {
        const auto model = random_number_conserving_model(rng, uniform_int(rng, oracle::kMaxDenseSites + 1, 9), 2, 2);
        const RVec lyap = steady_state_correlation(model).diagonal().real();
        EXPECT_LE(largest(occupations(model) - lyap), 1e-9) << "trial " << trial;
    }
    for (int nc : {3, 12}) {
        const auto model = build_ssh_model(standard_params(nc, 0.8, 0.3, 0.1), Boundary::Open);
        const RVec lyap = steady_state_correlation(model).diagonal().real();
        const RVec occ = occupations(model);
        EXPECT_LE(largest(occ - lyap), 1e-9);
        EXPECT_LE(largest((occ.array() - 0.25).matrix()), 1e-9);
    }
}

TEST(Ness, MixedJumpsMatchOracle) {
    Rng rng(304);
    for (int trial = 0; trial < 5; ++trial) {
        const auto model = random_model(rng, uniform_int(rng, 1, oracle::kMaxDenseSites), 3);
        EXPECT_LE(largest(occupations(model) - oracle::steady_state_occupations(model)), 1e-12);
    }
}

TEST(Ness, OccupationsStayPhysical) {
    Rng rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        const auto model = random_model(rng, uniform_int(rng, 1, 7), uniform_int(rng, 1, 3));
        const RVec occ = occupations(model);
        EXPECT_GE(occ.minCoeff(), -1e-10);
        EXPECT_LE(occ.maxCoeff(), 1.0 + 1e-10);
    }
}

TEST(Ness, ZeroModesWithPumpAreUnsupported) {
    // A dark k-mode on the three-cell ring leaves the steady state dependent on
    // the initial condition once loss and gain differ.
    const auto model = build_ssh_model(standard_params(3, 0.5, 0.3, 0.1), Boundary::Periodic);
    const auto dec = rapidity_decompose(to_majorana(model));
    ASSERT_TRUE(std::find(dec.zero_mode.begin(), dec.zero_mode.end(), true) != dec.zero_mode.end());
    EXPECT_THROW(ness_occupations(dec, model), UnsupportedRegime);
}
