#pragma once

// Verification paths that do not go through the Hill diagonalization:
//  * a Newton solve of the truncation conditions h_N = h_{N+1} = 0 over (E, zeta),
//    with (h_0, h_1) = (cos zeta, sin zeta);
//  * a finite-difference discretization of the Schrodinger equation on [-X, X]
//    with Dirichlet ends.

#include <string>
#include <vector>

#include "hillpt/dense_matrix.hpp"
#include "hillpt/error.hpp"
#include "hillpt/model.hpp"

namespace hillpt {

struct BoundaryState {
    double energy = 0.0;
    /// In [0, 2 pi).
    double zeta = 0.0;
};

/// Maps any angle into [0, 2 pi).
double wrap_angle(double zeta);

struct Mismatch {
    double h_n = 0.0;
    double h_n1 = 0.0;
    /// log10 of max |h_k| over k in [N-5, N+1], the divisor applied to both components.
    double log10_envelope = 0.0;

    double norm() const;
};

/// (h_N, h_{N+1}) from forward recursion, divided by the largest |sigma_k|, |omega_k| for k in [N-5, N+1].
Mismatch truncation_mismatch(const BoundaryState& state, int n, const SolverConfig& config,
                             const OscillatorParams& params);

class BoundarySolveFailure : public NumericalFailure {
public:
    BoundarySolveFailure(const std::string& what, Mismatch final_mismatch, std::vector<BoundaryState> trail)
        : NumericalFailure(what), final_mismatch_(final_mismatch), trail_(std::move(trail)) {}
    const Mismatch& final_mismatch() const { return final_mismatch_; }
    const std::vector<BoundaryState>& trail() const { return trail_; }

private:
    Mismatch final_mismatch_;
    std::vector<BoundaryState> trail_;
};

struct BoundarySolveOptions {
    double tolerance = 1e-10;
    int max_iterations = 50;
    int max_halvings = 20;
};

/// Damped Newton with a central-difference Jacobian. Also accepts a mismatch
/// below 1e-8 once the Newton step has stagnated at rounding level.
BoundaryState solve_boundary_conditions(const BoundaryState& initial, int n, const SolverConfig& config,
                                        const OscillatorParams& params, const BoundarySolveOptions& options = {});

/// Polynomial potential a x^4 + c x^2 + i (beta x^3 + delta x); any a, including 0.
struct PolynomialPotential {
    double a = 1.0;
    double beta = 0.0;
    double c = 0.0;
    double delta = 0.0;
};

/// -psi'' + V psi on M interior points of [-X, X], as A + i B with A real
/// symmetric tridiagonal and B real diagonal.
struct FdHamiltonian {
    double x_max = 0.0;
    double step = 0.0;
    std::vector<double> diag_re;  // A_jj
    double off_diag = 0.0;        // A_{j,j+1}
    std::vector<double> diag_im;  // B_jj
};

FdHamiltonian fd_hamiltonian(const PolynomialPotential& v, double x_max, int points);

/// [[A, -B], [B, A]]: spectrum is eig(A + iB) together with its conjugate.
DenseMatrix complex_embedding(const FdHamiltonian& h);

/// Real M x M matrix similar to A + iB, valid when V(-x) = conj V(x) on a
/// symmetric grid: in the parity basis A + iB splits as [[A_e, i B_eo], [i B_oe, A_o]],
/// and conjugating with diag(1, i) removes the i.
DenseMatrix pt_parity_reduction(const FdHamiltonian& h);

enum class FdEmbedding { pt_parity, complex_doubling };

struct FdOptions {
    double x_max = 6.0;
    int points = 800;
    int levels = 4;
    FdEmbedding embedding = FdEmbedding::pt_parity;
    double tol_imag = 1e-6;
    double pollution_threshold = 1e-2;
};

struct FdLevel {
    int k = 0;
    double coarse = 0.0;
    double fine = 0.0;
    /// (4 fine - coarse) / 3
    double extrapolated = 0.0;
    bool polluted = false;
};

struct FdResult {
    /// Richardson-extrapolated energies of the unpolluted low-lying levels.
    std::vector<double> energies;
    std::vector<FdLevel> levels;
};

/// Near-real eigenvalues of one discretization, ascending, conjugate copies removed.
std::vector<double> fd_real_levels(const FdHamiltonian& h, FdEmbedding embedding, double tol_imag);

/// Solves on M and 2M+1 interior points (mesh halved exactly) and Richardson-extrapolates.
FdResult fd_reference_solver(const PolynomialPotential& v, const FdOptions& options = {});
FdResult fd_reference_solver(const OscillatorParams& params, const FdOptions& options = {});

}  // namespace hillpt
