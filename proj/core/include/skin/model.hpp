#pragma once

#include <vector>

#include "skin/types.hpp"

namespace skin {

enum class Boundary { Open, Periodic };

// Quadratic Hamiltonian H = Σ d_m† h_mn d_n.
struct HamiltonianSpec {
    Mat h;

    int n_modes() const { return static_cast<int>(h.rows()); }
};

// L = Σ_m c⁻_m d_m + c⁺_m d_m†.
struct JumpOperatorSpec {
    Vec c_minus;
    Vec c_plus;
};

struct ModelSpec {
    HamiltonianSpec hamiltonian;
    std::vector<JumpOperatorSpec> jumps;
    Boundary boundary = Boundary::Open;

    int n_modes() const { return hamiltonian.n_modes(); }
    // Throws std::invalid_argument on shape mismatch or non-Hermitian h.
    void validate() const;
};

struct SshParams {
    int n_cells = 1;
    double t1 = 0.8;
    double t2 = 1.0;
    double gamma_l = 0.2;
    double gamma_g = 0.2;
    double theta = kPi / 4;
    double phi = -kPi / 2;
    double theta_p = kPi / 4;
    double phi_p = kPi / 2;

    int n_modes() const { return 2 * n_cells; }
    double gamma_plus() const { return gamma_l + gamma_g; }
    double gamma_minus() const { return gamma_l - gamma_g; }
    bool standard_angles(double tol = 1e-15) const;
    void validate() const;

    friend bool operator==(const SshParams&, const SshParams&) = default;
};

HamiltonianSpec build_ssh_hamiltonian(const SshParams& params, Boundary bc);
std::vector<JumpOperatorSpec> build_general_jumps(const SshParams& params);
std::vector<JumpOperatorSpec> build_standard_jumps(int n_cells, double gamma_l, double gamma_g);

// SSH chain with the general cellular jumps at the angles stored in params.
ModelSpec build_ssh_model(const SshParams& params, Boundary bc);

}  // namespace skin
