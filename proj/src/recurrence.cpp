#include "hillpt/recurrence.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "hillpt/error.hpp"

namespace hillpt {

ScaledReal ScaledReal::from_scaled(double value, std::int64_t extra_exponent10) {
    if (value == 0.0) return {};
    int e = static_cast<int>(std::floor(std::log10(std::abs(value))));
    double m = value / std::pow(10.0, e);
    // log10 rounding can leave |m| just outside [1, 10)
    if (std::abs(m) >= 10.0) {
        m /= 10.0;
        ++e;
    } else if (std::abs(m) < 1.0) {
        m *= 10.0;
        --e;
    }
    return {m, e + extra_exponent10};
}

ScaledReal ScaledReal::from_double(double value) { return from_scaled(value, 0); }

double ScaledReal::to_double() const {
    if (mantissa == 0.0) return 0.0;
    if (exponent10 > 400) return std::copysign(std::numeric_limits<double>::infinity(), mantissa);
    if (exponent10 < -400) return 0.0;
    return mantissa * std::pow(10.0, static_cast<double>(exponent10));
}

double ScaledReal::log10_abs() const {
    if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log10(std::abs(mantissa)) + static_cast<double>(exponent10);
}

double ScaledReal::log_abs() const { return log10_abs() * std::log(10.0); }

RecurrenceRow recurrence_row(int n, double energy, const SolverConfig& config, const OscillatorParams& params) {
    const double s = config.s;
    RecurrenceRow row;
    row.n = n;
    row.a_n = static_cast<double>(n + 1) * static_cast<double>(n + 2);
    row.c_n = 4.0 * s * n + 2.0 * s - energy;
    row.delta_term = params.delta;
    row.theta = 4.0 * s * s - params.c;
    row.beta_term = -params.beta;
    row.quartic_term = 1.0;
    return row;
}

std::vector<double> CoefficientSequence::to_doubles() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.to_double());
    return out;
}

namespace {

CoefficientSequence run_forward(double energy, double h0, double h1, int n_max, const SolverConfig& config,
                                const OscillatorParams& params, SequenceOrigin origin) {
    if (n_max < 2) throw InvalidParameter("forward recursion needs n_max >= 2");
    require_growth_constraint(config, params);
    if (!std::isfinite(energy) || !std::isfinite(h0) || !std::isfinite(h1))
        throw InvalidParameter("energy and initial coefficients must be finite");

    // window[k] holds h_{n+1-k} * 10^(-shift) for the six most recent entries
    std::array<double, 6> window{h1, h0, 0.0, 0.0, 0.0, 0.0};
    std::int64_t shift = 0;

    CoefficientSequence seq;
    seq.origin = origin;
    seq.entries.reserve(static_cast<std::size_t>(n_max) + 1);
    seq.entries.push_back(ScaledReal::from_double(h0));
    seq.entries.push_back(ScaledReal::from_double(h1));

    constexpr double kHigh = 1e120;
    constexpr double kLow = 1e-120;

    for (int n = 0; n + 2 <= n_max; ++n) {
        const RecurrenceRow row = recurrence_row(n, energy, config, params);
        // window[1] = h_n, window[2] = h_{n-1}, ..., window[5] = h_{n-4}
        const double rhs = row.c_n * window[1] + row.delta_term * window[2] + row.theta * window[3] +
                           row.beta_term * window[4] + row.quartic_term * window[5];
        const double next = -rhs / row.a_n;
        if (!std::isfinite(next))
            throw NumericalFailure("non-finite coefficient at n = " + std::to_string(n + 2));
        for (int k = 5; k > 0; --k) window[k] = window[k - 1];
        window[0] = next;
        seq.entries.push_back(ScaledReal::from_scaled(next, shift));

        double peak = 0.0;
        for (double w : window) peak = std::max(peak, std::abs(w));
        if (peak > kHigh || (peak > 0.0 && peak < kLow)) {
            const auto e = static_cast<std::int64_t>(std::floor(std::log10(peak)));
            const double factor = std::pow(10.0, static_cast<double>(-e));
            for (double& w : window) w *= factor;
            shift += e;
        }
    }
    return seq;
}

}  // namespace

CoefficientSequence forward_coefficients(double energy, double h0, double h1, int n_max, const SolverConfig& config,
                                         const OscillatorParams& params) {
    return run_forward(energy, h0, h1, n_max, config, params, SequenceOrigin::h_from_initial);
}

SplitSequences sigma_omega_forward(double energy, int n_max, const SolverConfig& config,
                                   const OscillatorParams& params) {
    return {run_forward(energy, 1.0, 0.0, n_max, config, params, SequenceOrigin::sigma),
            run_forward(energy, 0.0, 1.0, n_max, config, params, SequenceOrigin::omega)};
}

double recurrence_row_residual(std::vector<double> const& h, int n, double energy, const SolverConfig& config,
                               const OscillatorParams& params) {
    const RecurrenceRow row = recurrence_row(n, energy, config, params);
    auto at = [&](int k) { return k >= 0 && k < static_cast<int>(h.size()) ? h[static_cast<std::size_t>(k)] : 0.0; };
    const std::array<double, 6> terms{row.a_n * at(n + 2),        row.c_n * at(n),
                                      row.delta_term * at(n - 1), row.theta * at(n - 2),
                                      row.beta_term * at(n - 3),  row.quartic_term * at(n - 4)};
    double sum = 0.0;
    double mag = 0.0;
    for (double t : terms) {
        sum += t;
        mag += std::abs(t);
    }
    return mag == 0.0 ? 0.0 : std::abs(sum) / mag;
}

void write_csv(std::ostream& out, const CoefficientSequence& seq) {
    const auto old_precision = out.precision(12);
    out << "n,mantissa,exponent10\n";
    for (std::size_t n = 0; n < seq.entries.size(); ++n)
        out << n << ',' << seq.entries[n].mantissa << ',' << seq.entries[n].exponent10 << '\n';
    out.precision(old_precision);
}

}  // namespace hillpt
