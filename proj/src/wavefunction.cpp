#include "hillpt/wavefunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "hillpt/error.hpp"

namespace hillpt {

namespace {

constexpr std::size_t kTailTerms = 10;
constexpr double kTailTolerance = 1e-10;
constexpr std::complex<double> kI{0.0, 1.0};

// Sum of |h_n| |x|^n over the trailing terms (at most kTailTerms, at most half the series), in log space.
double tail_magnitude(const WavefunctionSeries& series, double abs_x) {
    const std::size_t count = std::max<std::size_t>(1, std::min(kTailTerms, series.order / 2));
    const std::size_t first = series.order > count ? series.order - count : 0;
    double total = 0.0;
    for (std::size_t n = first; n < series.order; ++n) {
        const ScaledReal& h = series.coeffs.entries[n];
        if (h.is_zero()) continue;
        if (abs_x == 0.0) {
            if (n == 0) total += std::abs(h.to_double());
            continue;
        }
        total += std::exp(h.log_abs() + static_cast<double>(n) * std::log(abs_x));
    }
    return total;
}

// Horner in y = i x for S, S' and S'' (derivatives with respect to x).
PsiDerivatives sum_series(const WavefunctionSeries& series, std::complex<double> x, bool derivatives) {
    const std::complex<double> y = kI * x;
    std::complex<double> s0{0.0, 0.0};
    std::complex<double> s1{0.0, 0.0};  // dS/dy
    std::complex<double> s2{0.0, 0.0};  // d2S/dy2
    for (std::size_t k = series.order; k-- > 0;) {
        std::complex<double> h = series.coeffs.entries[k].to_double();
        if (k < series.coeffs_imag.size()) h += kI * series.coeffs_imag[k];
        if (derivatives) {
            s2 = s2 * y + 2.0 * s1;
            s1 = s1 * y + s0;
        }
        s0 = s0 * y + h;
    }
    // d/dx = i d/dy
    const std::complex<double> ds = kI * s1;
    const std::complex<double> d2s = -s2;
    const double sx = series.s;
    const std::complex<double> g = std::exp(-sx * x * x);
    PsiDerivatives out;
    out.psi = g * s0;
    if (derivatives) {
        out.d1 = g * (ds - 2.0 * sx * x * s0);
        out.d2 = g * (d2s - 4.0 * sx * x * ds + (4.0 * sx * sx * x * x - 2.0 * sx) * s0);
    }
    return out;
}

void require_reliable(const WavefunctionSeries& series, std::complex<double> x, std::complex<double> psi) {
    const double tail = tail_magnitude(series, std::abs(x));
    const double partial = std::abs(psi * std::exp(series.s * x * x));
    if (!(tail <= kTailTolerance * partial) && tail != 0.0) {
        std::ostringstream msg;
        msg << "series truncated at order " << series.order << " is not converged at x = " << x
            << "; a longer coefficient sequence is needed";
        throw SeriesTruncationError(msg.str());
    }
}

}  // namespace

WavefunctionSeries make_series(CoefficientSequence coeffs, double s, double energy) {
    WavefunctionSeries out;
    out.order = coeffs.size();
    out.coeffs = std::move(coeffs);
    out.s = s;
    out.energy = energy;
    return out;
}

std::array<AsymptoticForm, 2> asymptotic_forms(const OscillatorParams& params) {
    validate(params);
    const double root = std::sqrt(params.a);
    std::array<AsymptoticForm, 2> out;
    for (int k = 0; k < 2; ++k) {
        const double u = k == 0 ? root : -root;
        out[static_cast<std::size_t>(k)] = {u, kI * params.beta / (2.0 * u)};
    }
    return out;
}

std::complex<double> evaluate_psi(const WavefunctionSeries& series, std::complex<double> x) {
    const std::complex<double> psi = sum_series(series, x, false).psi;
    require_reliable(series, x, psi);
    return psi;
}

PsiDerivatives evaluate_psi_derivatives(const WavefunctionSeries& series, std::complex<double> x) {
    PsiDerivatives out = sum_series(series, x, true);
    require_reliable(series, x, out.psi);
    return out;
}

bool within_reliable_radius(const WavefunctionSeries& series, std::complex<double> x) {
    try {
        evaluate_psi(series, x);
        return true;
    } catch (const SeriesTruncationError&) {
        return false;
    }
}

double pt_defect(const WavefunctionSeries& series, std::span<const double> grid) {
    double worst = 0.0;
    for (double x : grid) {
        const std::complex<double> here = evaluate_psi(series, x);
        const std::complex<double> mirror = evaluate_psi(series, -x);
        worst = std::max(worst, std::abs(here - std::conj(mirror)) / std::max(1.0, std::abs(here)));
    }
    return worst;
}

namespace {

std::complex<double> potential(const OscillatorParams& p, double x) {
    const double x2 = x * x;
    return {p.a * x2 * x2 + p.c * x2, p.beta * x2 * x + p.delta * x};
}

double residual_at(const std::complex<double>& psi, const std::complex<double>& d2, const OscillatorParams& params,
                   double energy, double x) {
    const std::complex<double> r = -d2 + (potential(params, x) - energy) * psi;
    const double scale = std::abs(psi) + std::abs(d2);
    return scale == 0.0 ? std::abs(r) : std::abs(r) / scale;
}

}  // namespace

double ode_residual(const WavefunctionSeries& series, const OscillatorParams& params, std::span<const double> grid) {
    double worst = 0.0;
    for (double x : grid) {
        const PsiDerivatives d = evaluate_psi_derivatives(series, x);
        worst = std::max(worst, residual_at(d.psi, d.d2, params, series.energy, x));
    }
    return worst;
}

double ode_residual_finite_difference(const WavefunctionSeries& series, const OscillatorParams& params,
                                      std::span<const double> grid, double h) {
    double worst = 0.0;
    for (double x : grid) {
        const std::complex<double> f0 = evaluate_psi(series, x);
        const std::complex<double> fp1 = evaluate_psi(series, x + h);
        const std::complex<double> fm1 = evaluate_psi(series, x - h);
        const std::complex<double> fp2 = evaluate_psi(series, x + 2.0 * h);
        const std::complex<double> fm2 = evaluate_psi(series, x - 2.0 * h);
        const std::complex<double> d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
        worst = std::max(worst, residual_at(f0, d2, params, series.energy, x));
    }
    return worst;
}

TailReport tail_classification(const WavefunctionSeries& series, double x_lo, double x_hi, int points) {
    if (points < 3 || !(x_hi > x_lo) || x_lo < 0.0) throw InvalidParameter("bad tail probe sweep");
    TailReport report;
    for (int side = 0; side < 2; ++side) {
        const double sign = side == 0 ? -1.0 : 1.0;
        std::vector<double> xs;
        std::vector<double> slopes;
        for (int k = 0; k < points; ++k) {
            const double r = x_lo + (x_hi - x_lo) * k / (points - 1);
            try {
                const PsiDerivatives d = evaluate_psi_derivatives(series, sign * r);
                if (std::abs(d.psi) == 0.0) continue;
                // d log|psi| / d|x| = sign * Re(psi'/psi)
                xs.push_back(r);
                slopes.push_back(sign * (d.d1 / d.psi).real());
            } catch (const SeriesTruncationError&) {
                report.degraded = true;
            }
        }
        TailSide& out = side == 0 ? report.left : report.right;
        out.points_used = static_cast<int>(xs.size());
        out.onset = std::numeric_limits<double>::quiet_NaN();
        if (xs.size() < 3) {
            report.degraded = true;
            continue;
        }
        // least squares slope = k x^2 + b
        double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double u = xs[i] * xs[i];
            su += u;
            sv += slopes[i];
            suu += u * u;
            suv += u * slopes[i];
        }
        const double m = static_cast<double>(xs.size());
        out.growth_coefficient = (m * suv - su * sv) / (m * suu - su * su);
        out.growing = out.growth_coefficient > 0.0 && slopes.back() > 0.0;
        for (std::size_t i = xs.size(); i-- > 0;) {
            if (slopes[i] <= 0.0) break;
            out.onset = xs[i];
        }
    }
    return report;
}

void write_samples_csv(std::ostream& out, std::span<const double> xs, std::span<const std::complex<double>> psi) {
    const auto old_precision = out.precision(12);
    out << "x,re_psi,im_psi,abs_psi\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << xs[i] << ',' << psi[i].real() << ',' << psi[i].imag() << ',' << std::abs(psi[i]) << '\n';
    out.precision(old_precision);
}

}  // namespace hillpt
