#include "hillpt/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "hillpt/error.hpp"

namespace hillpt {

double closed_form_re_gamma(int p, double s, double beta) {
    const double k = std::sqrt(3.0) / 8.0 * beta;
    switch (p) {
        case 1:
        case 6: return -k - s / 2.0;
        case 2:
        case 5: return s;
        case 3:
        case 4: return k - s / 2.0;
        default: throw InvalidParameter("Birkhoff index p must lie in 1..6");
    }
}

std::array<BirkhoffSolution, 6> birkhoff_solutions(double s, double beta) {
    std::array<BirkhoffSolution, 6> out;
    for (int p = 1; p <= 6; ++p) {
        BirkhoffSolution& sol = out[static_cast<std::size_t>(p - 1)];
        sol.p = p;
        sol.lambda = std::polar(1.0, (2.0 * p - 1.0) * std::numbers::pi / 6.0);
        sol.gamma = s * std::pow(sol.lambda, 4) - beta * sol.lambda / 4.0;
        sol.re_gamma = sol.gamma.real();
        const double closed = closed_form_re_gamma(p, s, beta);
        if (std::abs(sol.re_gamma - closed) > 1e-12 * (1.0 + std::abs(s) + std::abs(beta)))
            throw NumericalFailure("Re gamma(" + std::to_string(p) + ") disagrees with its closed form");
    }
    return out;
}

double dominance_margin(double s, double beta) {
    double worst = closed_form_re_gamma(1, s, beta);
    for (int p : {3, 4, 6}) worst = std::max(worst, closed_form_re_gamma(p, s, beta));
    return s - worst;
}

double GrowthFit::model(double n) const {
    return gamma * std::pow(n, 2.0 / 3.0) + coeff_cbrt * std::cbrt(n) + constant;
}

double corrected_log_magnitude(const ScaledReal& h, int n) {
    const double third = n / 3.0;
    return h.log_abs() + std::lgamma(1.0 + third) + third * std::log(3.0);
}

GrowthFit empirical_growth_fit(const CoefficientSequence& seq, int n_lo, int n_hi, int window) {
    if (n_lo < 1 || n_hi < n_lo || static_cast<std::size_t>(n_hi) >= seq.size())
        throw InvalidParameter("fit range outside the coefficient sequence");
    if (n_hi - n_lo < 50) throw InvalidParameter("fit range must span at least 50 indices");
    if (window < 1) throw InvalidParameter("envelope window must be positive");

    GrowthFit fit;
    for (int start = n_lo; start <= n_hi; start += window) {
        int best_n = -1;
        double best_y = -std::numeric_limits<double>::infinity();
        for (int n = start; n < start + window && n <= n_hi; ++n) {
            const ScaledReal& h = seq.entries[static_cast<std::size_t>(n)];
            if (h.is_zero()) continue;
            const double y = corrected_log_magnitude(h, n);
            if (y > best_y) {
                best_y = y;
                best_n = n;
            }
        }
        if (best_n >= 0) {
            fit.envelope_n.push_back(best_n);
            fit.envelope_y.push_back(best_y);
        }
    }
    if (fit.envelope_n.size() < 4) throw NumericalFailure("too few envelope points for a growth fit");

    // normal equations for the basis (n^(2/3), n^(1/3), 1)
    double ata[3][3] = {};
    double aty[3] = {};
    for (std::size_t i = 0; i < fit.envelope_n.size(); ++i) {
        const double c = std::cbrt(static_cast<double>(fit.envelope_n[i]));
        const double basis[3] = {c * c, c, 1.0};
        for (int r = 0; r < 3; ++r) {
            aty[r] += basis[r] * fit.envelope_y[i];
            for (int q = 0; q < 3; ++q) ata[r][q] += basis[r] * basis[q];
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int r = k + 1; r < 3; ++r)
            if (std::abs(ata[r][k]) > std::abs(ata[piv][k])) piv = r;
        if (ata[piv][k] == 0.0) throw NumericalFailure("singular growth-fit system");
        if (piv != k) {
            for (int q = 0; q < 3; ++q) std::swap(ata[k][q], ata[piv][q]);
            std::swap(aty[k], aty[piv]);
        }
        for (int r = k + 1; r < 3; ++r) {
            const double f = ata[r][k] / ata[k][k];
            for (int q = k; q < 3; ++q) ata[r][q] -= f * ata[k][q];
            aty[r] -= f * aty[k];
        }
    }
    double coef[3];
    for (int r = 2; r >= 0; --r) {
        double sum = aty[r];
        for (int q = r + 1; q < 3; ++q) sum -= ata[r][q] * coef[q];
        coef[r] = sum / ata[r][r];
    }
    fit.gamma = coef[0];
    fit.coeff_cbrt = coef[1];
    fit.constant = coef[2];
    return fit;
}

void write_growth_report(std::ostream& out, const CoefficientSequence& seq, const GrowthFit& fit, int n_lo,
                         int n_hi) {
    const auto old_precision = out.precision(12);
    out << "n,log10_abs_h,y,fit\n";
    for (int n = n_lo; n <= n_hi && static_cast<std::size_t>(n) < seq.size(); ++n) {
        const ScaledReal& h = seq.entries[static_cast<std::size_t>(n)];
        out << n << ',';
        if (h.is_zero())
            out << "-inf,-inf,";
        else
            out << h.log10_abs() << ',' << corrected_log_magnitude(h, n) << ',';
        out << fit.model(n) << '\n';
    }
    out.precision(old_precision);
}

}  // namespace hillpt
