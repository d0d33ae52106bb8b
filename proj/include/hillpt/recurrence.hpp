#pragma once

// Six-term recurrence for the Taylor coefficients of the series ansatz
//
//   A_n h_{n+2} + C_n h_n + delta h_{n-1} + theta h_{n-2} - beta h_{n-3} + h_{n-4} = 0,
//   A_n = (n+1)(n+2),  C_n = 4 s n + 2 s - E,  theta = 4 s^2 - c,
//
// on the rescaled (a = 1) problem. Terms with a negative index are absent.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hillpt/model.hpp"

namespace hillpt {

/// mantissa * 10^exponent10 with |mantissa| in [1, 10), or exactly zero.
struct ScaledReal {
    double mantissa = 0.0;
    std::int64_t exponent10 = 0;

    static ScaledReal from_double(double value);
    /// value * 10^extra_exponent10, normalized.
    static ScaledReal from_scaled(double value, std::int64_t extra_exponent10);

    bool is_zero() const { return mantissa == 0.0; }
    /// Overflows to +-inf / underflows to 0 outside double range.
    double to_double() const;
    /// log10 |value|; -inf for zero.
    double log10_abs() const;
    /// Natural log |value|; -inf for zero.
    double log_abs() const;
};

struct RecurrenceRow {
    int n = 0;
    double a_n = 0.0;
    double c_n = 0.0;
    double delta_term = 0.0;
    double theta = 0.0;
    double beta_term = 0.0;
    double quartic_term = 1.0;
};

RecurrenceRow recurrence_row(int n, double energy, const SolverConfig& config, const OscillatorParams& params);

enum class SequenceOrigin { h_from_initial, sigma, omega, determinant_sigma, determinant_omega };

struct CoefficientSequence {
    std::vector<ScaledReal> entries;
    SequenceOrigin origin = SequenceOrigin::h_from_initial;

    std::size_t size() const { return entries.size(); }
    double value(std::size_t n) const { return entries[n].to_double(); }
    std::vector<double> to_doubles() const;
};

/// h_0 .. h_{n_max} from (h0, h1) by forward recursion with a sliding shared
/// exponent, so magnitudes far outside double range are stored correctly.
/// Throws InvalidParameter when the growth constraint fails and NumericalFailure
/// on a non-finite intermediate.
CoefficientSequence forward_coefficients(double energy, double h0, double h1, int n_max, const SolverConfig& config,
                                         const OscillatorParams& params);

struct SplitSequences {
    CoefficientSequence sigma;  // h0 = 1, h1 = 0
    CoefficientSequence omega;  // h0 = 0, h1 = 1
};

SplitSequences sigma_omega_forward(double energy, int n_max, const SolverConfig& config, const OscillatorParams& params);

/// |row n residual| / (sum of |terms| in row n), evaluated on doubles. Needs h_0..h_{n+2}.
double recurrence_row_residual(std::vector<double> const& h, int n, double energy, const SolverConfig& config,
                               const OscillatorParams& params);

/// CSV with columns n,mantissa,exponent10.
void write_csv(std::ostream& out, const CoefficientSequence& seq);

}  // namespace hillpt
