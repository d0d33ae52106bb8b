#pragma once

// Couplings of the PT-symmetric quartic oscillator
//
//     H = p^2 + a x^4 + i beta x^3 + c x^2 + i delta x,   a > 0,
//
// the a -> 1 rescaling, and the admissibility test for the Gaussian exponent s
// of the series ansatz psi(x) = exp(-s x^2) sum_n h_n (i x)^n.

#include <cstdint>

namespace hillpt {

struct OscillatorParams {
    double a = 1.0;
    double beta = 1.0;
    double c = 1.0;
    double delta = 1.0;
};

/// Throws InvalidParameter on a <= 0 or non-finite fields.
void validate(const OscillatorParams& params);

struct SolverConfig {
    double s = 2.0;
    int n_trunc = 25;
    double tol_imag = 1e-6;
    double tol_residual = 1e-10;
    int max_qr_sweeps_per_eigenvalue = 30;
    std::uint64_t seed = 20010101;
};

/// Multiplier taking energies of the a = 1 problem back to the original one.
struct EnergyScale {
    double factor = 1.0;
};

struct RescaledProblem {
    OscillatorParams params;
    EnergyScale scale;
};

/// x -> a^(-1/6) x maps H(a, beta, c, delta) onto a^(1/3) H(1, beta a^(-5/6), c a^(-2/3), delta a^(-1/2)).
RescaledProblem rescale_to_unit_quartic(const OscillatorParams& params);

struct GrowthVerdict {
    bool valid = false;
    /// Lower bound |beta| / (4 sqrt 3); s must exceed it strictly.
    double minimal_s = 0.0;
};

/// The p = 2, 5 Birkhoff pair dominates the coefficient asymptotics iff s > |beta| / (4 sqrt 3).
GrowthVerdict validate_growth_constraint(const SolverConfig& config, const OscillatorParams& params);

/// validate_growth_constraint plus a thrown InvalidParameter on rejection.
void require_growth_constraint(const SolverConfig& config, const OscillatorParams& params);

}  // namespace hillpt
