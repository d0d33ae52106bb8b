#pragma once

// Truncated Hill operator and the determinant representation of the split
// Taylor sequences sigma_n, omega_n.
//
// Row n of the Hill operator D reads
//   D(n, n+2) = (n+1)(n+2),  D(n, n) = 4 s n + 2 s,
//   D(n, n-1) = delta,  D(n, n-2) = 4 s^2 - c,  D(n, n-3) = -beta,  D(n, n-4) = 1,
// so that D h = E h is the recurrence with h_N = h_{N+1} = 0.

#include <array>
#include <iosfwd>

#include "hillpt/dense_matrix.hpp"
#include "hillpt/model.hpp"
#include "hillpt/recurrence.hpp"

namespace hillpt {

/// N x N matrix with four sub- and two super-diagonals in band storage.
class BandedMatrix {
public:
    static constexpr int kLower = 4;
    static constexpr int kUpper = 2;
    static constexpr int kWidth = kLower + kUpper + 1;

    explicit BandedMatrix(int dim);

    int dim() const { return dim_; }
    static bool in_band(int i, int j) { return j - i >= -kLower && j - i <= kUpper; }

    /// Zero outside the band (and outside the matrix).
    double entry(int i, int j) const;
    /// Throws std::out_of_range outside the band.
    void set(int i, int j, double value);

    DenseMatrix to_dense() const;
    /// Max absolute row sum.
    double norm_inf() const;
    double trace() const;

private:
    int dim_;
    std::vector<double> bands_;  // bands_[i * kWidth + (j - i + kLower)]
};

enum class BandPolicy {
    /// N >= 5: the smallest dimension in which every coupling appears.
    full_band,
    /// Any N >= 1; only for inspecting the triangular toy truncations.
    allow_truncated,
};

/// The energy-independent Hill operator D on the rescaled problem.
BandedMatrix build_hill_operator(const SolverConfig& config, const OscillatorParams& params,
                                 BandPolicy policy = BandPolicy::full_band);

/// Rows 0..m of the recurrence restricted to columns (h_0, h_2, ..., h_{m+1}).
DenseMatrix build_sigma_matrix(int m, double energy, const SolverConfig& config, const OscillatorParams& params);
/// Rows 0..m of the recurrence restricted to columns (h_1, h_2, ..., h_{m+1}).
DenseMatrix build_omega_matrix(int m, double energy, const SolverConfig& config, const OscillatorParams& params);

struct LogDeterminant {
    int sign = 0;
    double log10_abs = 0.0;
};

/// Partial-pivoting elimination accumulating sign and log10 of pivot magnitudes.
LogDeterminant log_determinant(DenseMatrix matrix);

constexpr int kMaxDeterminantOrder = 60;

/// sigma_{n+1} = (-1)^n det Sigma_{n-1} / (n! (n+1)!), same for omega; seeded with
/// sigma = (1, 0, ...), omega = (0, 1, ...). n_max <= kMaxDeterminantOrder.
SplitSequences taylor_from_determinants(double energy, int n_max, const SolverConfig& config,
                                        const OscillatorParams& params);

/// Nonzero band entries as row,col,value.
void write_csv(std::ostream& out, const BandedMatrix& matrix);

}  // namespace hillpt
