#pragma once

// psi(x) = exp(-s x^2) sum_n h_n (i x)^n and checks on it: PT symmetry, the
// residual of the Schrodinger equation, and the cubic growth of the tails.

#include <array>
#include <complex>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "hillpt/model.hpp"
#include "hillpt/recurrence.hpp"

namespace hillpt {

struct WavefunctionSeries {
    CoefficientSequence coeffs;
    double s = 2.0;
    /// Number of retained terms, <= coeffs.size().
    std::size_t order = 0;
    double energy = 0.0;
    /// Optional imaginary parts added to h_n; empty for physical (real) coefficients.
    std::vector<double> coeffs_imag;
};

WavefunctionSeries make_series(CoefficientSequence coeffs, double s, double energy);

/// psi^(+-)(x) = exp(u x^3/3 + v x^2/2 + O(x)), u = +-sqrt(a), v = i beta / (2u).
struct AsymptoticForm {
    double u = 1.0;
    std::complex<double> v;
};

std::array<AsymptoticForm, 2> asymptotic_forms(const OscillatorParams& params);

/// Thrown when the last retained terms are not negligible at the requested point.
class SeriesTruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PsiDerivatives {
    std::complex<double> psi;
    std::complex<double> d1;
    std::complex<double> d2;
};

/// Requires the last 10 retained terms to sum (in magnitude) below 1e-10 of |partial sum|.
std::complex<double> evaluate_psi(const WavefunctionSeries& series, std::complex<double> x);

/// psi, psi', psi'' by term-wise differentiation of the truncated series.
PsiDerivatives evaluate_psi_derivatives(const WavefunctionSeries& series, std::complex<double> x);

/// True if evaluate_psi would accept x.
bool within_reliable_radius(const WavefunctionSeries& series, std::complex<double> x);

/// max over grid of |psi(x) - conj(psi(-x))| / max(1, |psi(x)|).
double pt_defect(const WavefunctionSeries& series, std::span<const double> grid);

/// max over grid of |-psi'' + (V - E) psi| / (|psi| + |psi''|) on the rescaled problem.
double ode_residual(const WavefunctionSeries& series, const OscillatorParams& params, std::span<const double> grid);

/// Same residual with psi'' from a five-point finite difference of step h.
double ode_residual_finite_difference(const WavefunctionSeries& series, const OscillatorParams& params,
                                      std::span<const double> grid, double h = 1e-3);

struct TailSide {
    /// Fitted k in d log|psi| / d|x| ~ k x^2 + b over the probe sweep.
    double growth_coefficient = 0.0;
    /// Smallest probe |x| beyond which log|psi| increases monotonically with |x|; NaN if never.
    double onset = 0.0;
    bool growing = false;
    /// Probe points actually used (inside the reliable radius).
    int points_used = 0;
};

struct TailReport {
    TailSide left;   // x -> -infinity
    TailSide right;  // x -> +infinity
    bool degraded = false;  // some probe points fell outside the reliable radius
};

/// Probes |x| in [x_lo, x_hi] on both sides of the origin.
TailReport tail_classification(const WavefunctionSeries& series, double x_lo = 2.0, double x_hi = 6.0,
                               int points = 41);

/// CSV: x,re_psi,im_psi,abs_psi
void write_samples_csv(std::ostream& out, std::span<const double> xs, std::span<const std::complex<double>> psi);

}  // namespace hillpt
