#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "../support/generators.hpp"
#include "../support/reference.hpp"
#include "skin/majorana.hpp"

using namespace skin;
using namespace skin::testing;

TEST(MajoranaH, ZeroHamiltonian) {
    const auto [H, shift] = dirac_to_majorana_h({Mat::Zero(3, 3)});
    EXPECT_EQ(max_abs(H), 0.0);
    EXPECT_EQ(shift, 0.0);
}

TEST(MajoranaH, DimerEntries) {
    Mat h = Mat::Zero(2, 2);
    h(0, 1) = h(1, 0) = 0.7;
    const auto [H, shift] = dirac_to_majorana_h({h});
    EXPECT_NEAR(std::abs(H(0, 3) - cplx(0, -0.7 / 4)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(H(1, 2) - cplx(0, 0.7 / 4)), 0.0, 1e-15);
    EXPECT_EQ(H(0, 0), cplx(0.0));
    EXPECT_EQ(H(0, 1), cplx(0.0));
    EXPECT_EQ(shift, 0.0);
}

TEST(MajoranaH, AntisymmetricAndImaginary) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat h = random_hermitian(rng, uniform_int(rng, 1, 6));
        const auto [H, shift] = dirac_to_majorana_h({h});
        EXPECT_LE(max_abs(H + H.transpose()), 1e-15);
        EXPECT_LE(max_abs(H.real()), 1e-15);
    }
}

// Σ_jk w_j H_jk w_k + shift must rebuild Σ d_m† h_mn d_n as an operator.
TEST(MajoranaH, DenseReconstruction) {
    Rng rng(3);
    for (int n = 1; n <= 3; ++n) {
        const Mat h = random_hermitian(rng, n);
        const auto [H, shift] = dirac_to_majorana_h({h});
        const auto w = pauli_majoranas(n);
        const auto d = pauli_annihilators(n);
        const int dim = 1 << n;
        Mat from_w = shift * Mat::Identity(dim, dim);
        for (int j = 0; j < 2 * n; ++j)
            for (int k = 0; k < 2 * n; ++k) from_w += H(j, k) * w[j] * w[k];
        Mat direct = Mat::Zero(dim, dim);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) direct += h(a, b) * d[a].adjoint() * d[b];
        EXPECT_LE(max_abs(from_w - direct), 1e-13) << "n=" << n;
    }
}

TEST(MajoranaH, RejectsNonHermitian) {
    Mat h = Mat::Zero(2, 2);
    h(0, 1) = 1.0;
    EXPECT_THROW(dirac_to_majorana_h({h}), std::invalid_argument);
}

TEST(JumpVector, SingleLoss) {
    JumpOperatorSpec j{Vec::Zero(2), Vec::Zero(2)};
    j.c_minus(0) = 1.0;
    const Vec l = jump_to_majorana(j);
    EXPECT_NEAR(std::abs(l(0) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(l(1) - cplx(0, -0.5)), 0.0, 1e-15);
    EXPECT_EQ(l(2), cplx(0.0));
    EXPECT_EQ(l(3), cplx(0.0));
}

TEST(JumpVector, StandardLossCell) {
    const auto jumps = build_standard_jumps(1, 0.4, 0.0);
    const Vec l = jump_to_majorana(jumps[0]);
    Vec expect(4);
    expect << 0.5, cplx(0, -0.5), cplx(0, -0.5), -0.5;
    EXPECT_LE(max_abs(l - std::sqrt(0.2) * expect), 1e-15);
}

TEST(JumpVector, EqualLossAndGainCoefficients) {
    Rng rng(8);
    const Vec v = random_vector(rng, 3);
    const Vec l = jump_to_majorana({v, v});
    for (int m = 0; m < 3; ++m) {
        EXPECT_LE(std::abs(l(2 * m) - v(m)), 1e-15);
        EXPECT_EQ(l(2 * m + 1), cplx(0.0));
    }
}

TEST(BathMatrix, NoJumps) {
    EXPECT_EQ(max_abs(bath_matrix({}, 3)), 0.0);
}

// Per-cell block (γ₊/8)[[1,0,0,−1],[0,1,1,0],[0,1,1,0],[−1,0,0,1]]
// + (iγ₋/8)[[0,1,1,0],[−1,0,0,1],[−1,0,0,1],[0,−1,−1,0]].
Mat cell_block(double gp, double gm) {
    Mat a(4, 4), b(4, 4);
    a << 1, 0, 0, -1, 0, 1, 1, 0, 0, 1, 1, 0, -1, 0, 0, 1;
    b << 0, 1, 1, 0, -1, 0, 0, 1, -1, 0, 0, 1, 0, -1, -1, 0;
    return gp / 8 * a + I * (gm / 8) * b;
}

TEST(BathMatrix, StandardCellBlocks) {
    for (auto [gl, gg] : {std::pair{0.2, 0.2}, std::pair{0.4, 0.0}, std::pair{0.1, 0.35}}) {
        const auto F = to_majorana(build_ssh_model(standard_params(1, 0.8, gl, gg), Boundary::Open));
        EXPECT_LE(max_abs(F.M - cell_block(gl + gg, gl - gg)), 1e-15);
    }
}

TEST(BathMatrix, HermitianPsdForRandomModels) {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = random_model(rng, uniform_int(rng, 1, 6), uniform_int(rng, 0, 4));
        const auto F = to_majorana(m);
        EXPECT_LE(max_abs(F.M - F.M.adjoint()), 1e-14);
        Eigen::SelfAdjointEigenSolver<Mat> es(F.M);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    }
}

TEST(GeneralBath, MatchesJumpRoute) {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_ssh_params(rng, uniform_int(rng, 1, 4));
        const auto [Ml, Mg] = general_bath_matrices(p);
        std::vector<Vec> ls;
        for (const auto& j : build_general_jumps(p)) ls.push_back(jump_to_majorana(j));
        EXPECT_LE(max_abs(Ml + Mg - bath_matrix(ls, p.n_modes())), 1e-12);
    }
}

TEST(GeneralBath, NoGainGivesZeroGainBlock) {
    auto p = standard_params(2, 0.8, 0.3, 0.0);
    p.theta = 0.4;
    EXPECT_EQ(max_abs(general_bath_matrices(p).second), 0.0);
}

TEST(GeneralBath, ThetaZeroLossBlock) {
    auto p = standard_params(1, 0.8, 0.3, 0.0);
    p.theta = 0.0;
    p.phi = 1.234;
    const Mat Ml = general_bath_matrices(p).first;
    const double g = 0.3 / 4;
    EXPECT_NEAR(std::abs(Ml(0, 0) - g), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(Ml(1, 1) - g), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(Ml(0, 1) - I * g), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(Ml(1, 0) + I * g), 0.0, 1e-15);
    EXPECT_LE(max_abs(Ml.bottomRows(2)), 1e-15);
    EXPECT_LE(max_abs(Ml.rightCols(2)), 1e-15);
}

TEST(MajoranaForm, PumpFreeDetection) {
    EXPECT_TRUE(to_majorana(build_ssh_model(standard_params(2), Boundary::Open)).pump_free());
    EXPECT_FALSE(to_majorana(build_ssh_model(standard_params(2, 0.8, 0.3, 0.1), Boundary::Open)).pump_free());
}
