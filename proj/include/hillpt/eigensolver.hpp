#pragma once

// Dense non-symmetric eigenvalue machinery for the Hill operator:
// balancing, Householder reduction to Hessenberg form, Francis double-shift
// QR for all eigenvalues, and inverse iteration with a banded LU for
// individual eigenvectors.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hillpt/dense_matrix.hpp"
#include "hillpt/hill_matrix.hpp"
#include "hillpt/model.hpp"
#include "hillpt/recurrence.hpp"

namespace hillpt {

struct BalanceResult {
    DenseMatrix matrix;
    /// Powers of two d_i with matrix = diag(d)^-1 * input * diag(d).
    std::vector<double> scaling;
};

BalanceResult balance(DenseMatrix matrix);

struct HessenbergResult {
    DenseMatrix hessenberg;
    /// Orthogonal Q with input = Q H Q^T, present when accumulation was requested.
    std::optional<DenseMatrix> q;
};

HessenbergResult hessenberg_reduce(DenseMatrix matrix, bool accumulate = false);

struct ComplexEigenvalueList {
    std::vector<std::complex<double>> values;
    int sweeps_used = 0;
};

/// All eigenvalues of an upper Hessenberg matrix. Throws NumericalFailure
/// naming the active block when an eigenvalue needs more than
/// max_sweeps_per_eigenvalue sweeps.
ComplexEigenvalueList qr_eigenvalues(DenseMatrix hessenberg, int max_sweeps_per_eigenvalue = 30);

/// balance -> hessenberg_reduce -> qr_eigenvalues.
ComplexEigenvalueList eigenvalues(DenseMatrix matrix, int max_sweeps_per_eigenvalue = 30);

struct SpectrumResult {
    /// Ascending, after EnergyScale mapping.
    std::vector<double> energies;
    /// |Im| of each reported level (mapped by the same scale factor).
    std::vector<double> imag_flags;
    int n_trunc = 0;
    int dropped_complex_pairs = 0;
    /// Dropped pairs as Re + i|Im| (mapped), ascending in Re.
    std::vector<std::complex<double>> dropped_pairs;
    int sweeps_used = 0;
};

SpectrumResult real_spectrum(const ComplexEigenvalueList& eigs, EnergyScale scale, const SolverConfig& config);

/// One column of a level table: a real energy, or a complex pair standing in
/// for a level that has not yet separated into real values.
struct LevelSlot {
    bool complex_pair = false;
    double value = 0.0;
    double imag = 0.0;
};

/// Real levels in ascending order, with a dropped pair inserted as its own
/// slot when |Im| is below the distance from Re to both neighbouring real
/// levels. Pairs farther from the real axis are left out.
std::vector<LevelSlot> level_slots(const SpectrumResult& spectrum);

/// Validates, rescales to a = 1, builds the Hill operator, diagonalizes.
SpectrumResult compute_spectrum(const SolverConfig& config, const OscillatorParams& params);

struct InverseIterationResult {
    /// h_0 .. h_{N-1}, normalized to h_0^2 + h_1^2 = 1 with h_0 > 0 (or h_0 = 0, h_1 > 0).
    CoefficientSequence h;
    /// atan2(h_1, h_0)
    double zeta = 0.0;
    /// Refined eigenvalue estimate.
    double energy = 0.0;
    /// ||(D - E) h||_inf / (||D||_inf ||h||_inf)
    double residual = 0.0;
};

/// Eigenvector of D for an eigenvalue near `energy` (rescaled units).
InverseIterationResult eigenvector_inverse_iteration(const BandedMatrix& d, double energy, const SolverConfig& config);

/// CSV: k,E_k,imag_flag
void write_csv(std::ostream& out, const SpectrumResult& spectrum);

}  // namespace hillpt
