#pragma once

// Large-n behaviour of the Taylor coefficients. The six independent solutions
// of the recurrence behave like
//
//   h_n(p) ~ lambda(p)^n exp(gamma(p) n^(2/3)) / (3^(n/3) Gamma(1 + n/3)),
//   lambda(p) = exp(i (2p - 1) pi / 6),  gamma(p) = s lambda(p)^4 - beta lambda(p) / 4,
//
// and the pair p = 2, 5 (Re gamma = s) dominates whenever s > |beta| / (4 sqrt 3).

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

#include "hillpt/recurrence.hpp"

namespace hillpt {

struct BirkhoffSolution {
    int p = 0;
    std::complex<double> lambda;
    std::complex<double> gamma;
    double re_gamma = 0.0;
};

/// Closed-form Re gamma(p): p in {1,6} -> -sqrt(3) beta/8 - s/2, {2,5} -> s, {3,4} -> sqrt(3) beta/8 - s/2.
double closed_form_re_gamma(int p, double s, double beta);

/// Throws NumericalFailure if a definitional Re gamma disagrees with the closed form by more than 1e-12.
std::array<BirkhoffSolution, 6> birkhoff_solutions(double s, double beta);

/// s minus the largest Re gamma among the subdominant solutions p = 1, 3, 4, 6.
double dominance_margin(double s, double beta);

struct GrowthFit {
    /// Leading coefficient of n^(2/3).
    double gamma = 0.0;
    double coeff_cbrt = 0.0;
    double constant = 0.0;
    /// Envelope points used in the fit (window maxima).
    std::vector<int> envelope_n;
    std::vector<double> envelope_y;

    double model(double n) const;
};

/// y_n = ln|h_n| + ln Gamma(1 + n/3) + (n/3) ln 3, maximized over consecutive
/// windows of width `window` in [n_lo, n_hi], least-squares fitted to
/// gamma n^(2/3) + b n^(1/3) + c.
GrowthFit empirical_growth_fit(const CoefficientSequence& seq, int n_lo, int n_hi, int window = 12);

/// Corrected coefficient magnitude y_n (natural log); -inf for h_n = 0.
double corrected_log_magnitude(const ScaledReal& h, int n);

/// CSV: n,log10_abs_h,y,fit for n in [n_lo, n_hi].
void write_growth_report(std::ostream& out, const CoefficientSequence& seq, const GrowthFit& fit, int n_lo,
                         int n_hi);

}  // namespace hillpt
