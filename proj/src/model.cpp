#include "hillpt/model.hpp"

#include <cmath>
#include <sstream>

#include "hillpt/error.hpp"

namespace hillpt {

void validate(const OscillatorParams& params) {
    if (!std::isfinite(params.a) || !std::isfinite(params.beta) || !std::isfinite(params.c) ||
        !std::isfinite(params.delta))
        throw InvalidParameter("oscillator couplings must be finite");
    if (!(params.a > 0.0))
        throw InvalidParameter(
            "quartic coupling a must be positive; the a <= 0 (quasi-exactly solvable) branch is "
            "not supported");
}

RescaledProblem rescale_to_unit_quartic(const OscillatorParams& params) {
    validate(params);
    if (params.a == 1.0) return {params, EnergyScale{1.0}};
    const double a = params.a;
    OscillatorParams unit{1.0, params.beta * std::pow(a, -5.0 / 6.0), params.c * std::pow(a, -2.0 / 3.0),
                          params.delta * std::pow(a, -0.5)};
    return {unit, EnergyScale{std::cbrt(a)}};
}

GrowthVerdict validate_growth_constraint(const SolverConfig& config, const OscillatorParams& params) {
    const double bound = std::abs(params.beta) / (4.0 * std::sqrt(3.0));
    return {config.s > bound && std::isfinite(config.s), bound};
}

void require_growth_constraint(const SolverConfig& config, const OscillatorParams& params) {
    const GrowthVerdict verdict = validate_growth_constraint(config, params);
    if (!verdict.valid) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "growth constraint violated: s = " << config.s << " must exceed |beta|/(4*sqrt(3)) = "
            << verdict.minimal_s << " so that the dominant coefficient pair controls the asymptotics";
        throw InvalidParameter(msg.str());
    }
}

}  // namespace hillpt
