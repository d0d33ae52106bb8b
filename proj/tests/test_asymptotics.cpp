#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hillpt/asymptotics.hpp"
#include "hillpt/error.hpp"
#include "hillpt/model.hpp"

using namespace hillpt;

namespace {
const OscillatorParams kUnit{1.0, 1.0, 1.0, 1.0};
const double kSqrt3 = std::numbers::sqrt3;

CoefficientSequence synthetic(double gamma, int n_max, double factor = 1.0) {
    CoefficientSequence seq;
    for (int n = 0; n <= n_max; ++n) {
        const double ln = std::log(factor) + gamma * std::pow(n, 2.0 / 3.0) - (n / 3.0) * std::log(3.0) -
                          std::lgamma(1.0 + n / 3.0);
        const double l10 = ln / std::log(10.0);
        const double e = std::floor(l10);
        seq.entries.push_back(ScaledReal::from_scaled(std::pow(10.0, l10 - e), static_cast<std::int64_t>(e)));
    }
    return seq;
}
}  // namespace

TEST_CASE("Birkhoff table at the default couplings") {
    const auto sols = birkhoff_solutions(2.0, 1.0);
    CHECK(sols[1].re_gamma == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sols[4].re_gamma == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sols[0].re_gamma == doctest::Approx(-1.21650635095).epsilon(1e-11));
    CHECK(sols[2].re_gamma == doctest::Approx(kSqrt3 / 8.0 - 1.0).epsilon(1e-14));
    for (const auto& b : sols) {
        CHECK(std::abs(b.lambda) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::arg(b.lambda) == doctest::Approx(std::remainder((2 * b.p - 1) * std::numbers::pi / 6.0, 2.0 * std::numbers::pi)));
        CHECK(b.re_gamma == doctest::Approx(b.gamma.real()));
    }
}

TEST_CASE("beta = 0 makes the subdominant exponents equal") {
    const auto sols = birkhoff_solutions(1.7, 0.0);
    for (int p : {1, 3, 4, 6}) CHECK(sols[static_cast<std::size_t>(p - 1)].re_gamma == doctest::Approx(-0.85).epsilon(1e-14));
}

TEST_CASE("closed forms and conjugate pairing over random couplings") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> s_dist(0.01, 10.0);
    std::uniform_real_distribution<double> b_dist(-20.0, 20.0);
    for (int i = 0; i < 10000; ++i) {
        const double s = s_dist(rng);
        const double beta = b_dist(rng);
        const auto sols = birkhoff_solutions(s, beta);
        for (const auto& b : sols) CHECK(std::abs(b.gamma.real() - closed_form_re_gamma(b.p, s, beta)) <= 1e-12);
        CHECK(std::abs(sols[0].gamma - std::conj(sols[5].gamma)) < 1e-12);
        CHECK(std::abs(sols[1].gamma - std::conj(sols[4].gamma)) < 1e-12);
        CHECK(std::abs(sols[2].gamma - std::conj(sols[3].gamma)) < 1e-12);
    }
}

TEST_CASE("dominance margin") {
    CHECK(dominance_margin(2.0, 1.0) == doctest::Approx(3.0 - kSqrt3 / 8.0).epsilon(1e-15));
    CHECK(dominance_margin(2.0, 1.0) == doctest::Approx(2.78349364905).epsilon(1e-11));
    const double boundary = 1.0 / (4.0 * kSqrt3);
    CHECK(std::abs(dominance_margin(boundary, 1.0)) < 1e-15);
    CHECK(std::abs(dominance_margin(3.0 / (4.0 * kSqrt3), -3.0)) < 1e-15);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> s_dist(0.001, 2.0);
    std::uniform_real_distribution<double> b_dist(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        SolverConfig cfg;
        cfg.s = s_dist(rng);
        const double beta = b_dist(rng);
        const bool accepted = validate_growth_constraint(cfg, {1.0, beta, 0.0, 0.0}).valid;
        CHECK(accepted == (dominance_margin(cfg.s, beta) > 0.0));
    }
    // shrinking s toward the bound shrinks the margin
    double previous = INFINITY;
    for (double s = 2.0; s > 0.2; s -= 0.1) {
        const double m = dominance_margin(s, 1.0);
        CHECK(m < previous);
        previous = m;
    }
}

TEST_CASE("envelope fit on generated coefficients") {
    SolverConfig cfg;
    const auto seq = forward_coefficients(3.0, 1.0, 0.0, 400, cfg, kUnit);
    const GrowthFit fit = empirical_growth_fit(seq, 100, 400);
    CHECK(fit.gamma >= 1.7);
    CHECK(fit.gamma <= 2.3);
    CHECK(fit.gamma == doctest::Approx(2.04613).epsilon(1e-4));
    CHECK(fit.envelope_n.size() == fit.envelope_y.size());
    CHECK(fit.envelope_n.size() >= 20);

    for (double s : {1.0, 3.0}) {
        cfg.s = s;
        const auto other = empirical_growth_fit(forward_coefficients(3.0, 1.0, 0.0, 400, cfg, kUnit), 100, 400);
        CHECK(std::abs(other.gamma - s) <= 0.15 * s);
    }
}

TEST_CASE("envelope fit on synthetic sequences") {
    const GrowthFit fit = empirical_growth_fit(synthetic(2.0, 400), 100, 400);
    CHECK(fit.gamma == doctest::Approx(2.0).epsilon(0.01));
    const GrowthFit scaled = empirical_growth_fit(synthetic(2.0, 400, 10.0), 100, 400);
    CHECK(scaled.gamma == doctest::Approx(fit.gamma).epsilon(1e-9));
    CHECK(scaled.constant - fit.constant == doctest::Approx(std::log(10.0)).epsilon(1e-9));

    CHECK_THROWS_AS(empirical_growth_fit(synthetic(2.0, 400), 100, 140), InvalidParameter);
    CHECK_THROWS(empirical_growth_fit(synthetic(2.0, 200), 100, 400));
    CHECK_THROWS_AS(empirical_growth_fit(synthetic(2.0, 400), 100, 160, 30), NumericalFailure);
}

TEST_CASE("corrected magnitude and report") {
    const ScaledReal one = ScaledReal::from_double(1.0);
    CHECK(corrected_log_magnitude(one, 3) == doctest::Approx(std::lgamma(2.0) + std::log(3.0)));
    CHECK(std::isinf(corrected_log_magnitude(ScaledReal{}, 3)));

    const auto seq = synthetic(2.0, 200);
    const auto fit = empirical_growth_fit(seq, 100, 200);
    std::ostringstream out;
    write_growth_report(out, seq, fit, 100, 200);
    const std::string text = out.str();
    CHECK(text.rfind("n,log10_abs_h,y,fit\n100,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 102);
}
