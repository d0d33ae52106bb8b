#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hillpt/eigensolver.hpp"
#include "hillpt/hill_matrix.hpp"
#include "hillpt/wavefunction.hpp"

using namespace hillpt;

namespace {
const OscillatorParams kUnit{1.0, 1.0, 1.0, 1.0};

CoefficientSequence from_values(std::initializer_list<double> values) {
    CoefficientSequence seq;
    for (double v : values) seq.entries.push_back(ScaledReal::from_double(v));
    return seq;
}

std::vector<double> grid(double lo, double hi, int points) {
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
    return g;
}

InverseIterationResult ground_state(int n) {
    SolverConfig cfg;
    cfg.n_trunc = n;
    return eigenvector_inverse_iteration(build_hill_operator(cfg, kUnit), 1.6916, cfg);
}
}  // namespace

TEST_CASE("elementary series") {
    const auto gauss = make_series(from_values({1.0, 0.0, 0.0, 0.0}), 2.0, 0.0);
    CHECK(gauss.order == 4);
    for (double x : {-1.0, 0.0, 0.3, 2.0}) {
        const auto v = evaluate_psi(gauss, x);
        CHECK(v.real() == doctest::Approx(std::exp(-2.0 * x * x)));
        CHECK(v.imag() == 0.0);
    }
    const auto odd = make_series(from_values({0.0, 1.0, 0.0, 0.0}), 1.5, 0.0);
    for (double x : {-0.7, 0.4}) {
        const auto v = evaluate_psi(odd, x);
        CHECK(v.real() == 0.0);
        CHECK(v.imag() == doctest::Approx(x * std::exp(-1.5 * x * x)));
    }
    const auto vec = ground_state(35);
    const auto series = make_series(vec.h, 2.0, vec.energy);
    CHECK(evaluate_psi(series, 0.0) == std::complex<double>(vec.h.value(0), 0.0));
}

TEST_CASE("asymptotic forms") {
    const auto forms = asymptotic_forms({4.0, 1.0, 0.0, 0.0});
    CHECK(forms[0].u == 2.0);
    CHECK(forms[1].u == -2.0);
    CHECK(forms[0].v == std::complex<double>(0.0, 0.25));
    CHECK(forms[1].v == std::complex<double>(0.0, -0.25));
    for (const auto& f : asymptotic_forms(kUnit)) CHECK(f.u * f.u == 1.0);
}

TEST_CASE("tail negligibility guard") {
    SolverConfig cfg;
    const auto seq = forward_coefficients(3.0, 1.0, 0.0, 30, cfg, kUnit);
    const auto series = make_series(seq, 2.0, 3.0);
    CHECK(within_reliable_radius(series, 0.3));
    CHECK_FALSE(within_reliable_radius(series, 3.0));
    CHECK_THROWS_AS(evaluate_psi(series, 3.0), SeriesTruncationError);
    CHECK_THROWS_AS(evaluate_psi_derivatives(series, 3.0), SeriesTruncationError);
}

TEST_CASE("PT defect") {
    SolverConfig cfg;
    const auto seq = forward_coefficients(2.2, 0.8, 0.6, 200, cfg, kUnit);
    auto series = make_series(seq, 2.0, 2.2);
    const auto g = grid(0.0, 1.5, 31);
    CHECK(pt_defect(series, g) < 1e-14);

    series.coeffs_imag.assign(3, 0.0);
    series.coeffs_imag[2] = 1e-3;
    const double corrupted = pt_defect(series, g);
    CHECK(corrupted > 1e-5);
    CHECK(corrupted < 1e-2);

    const auto vec = ground_state(35);
    const auto eigen = make_series(vec.h, 2.0, vec.energy);
    std::vector<double> inner;
    for (double x : grid(0.0, 1.0, 21))
        if (within_reliable_radius(eigen, x)) inner.push_back(x);
    CHECK(inner.size() >= 5);
    CHECK(pt_defect(eigen, inner) < 1e-12);
}

TEST_CASE("parity of real and imaginary parts") {
    SolverConfig cfg;
    const auto series = make_series(forward_coefficients(4.0, 0.3, -0.9, 200, cfg, kUnit), 2.0, 4.0);
    for (double x : grid(0.05, 1.2, 12)) {
        const auto plus = evaluate_psi(series, x);
        const auto minus = evaluate_psi(series, -x);
        CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-14));
        CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-14));
    }
    // analyticity: psi(conj z) = conj(psi(-z)) for real coefficients
    for (std::complex<double> z : {std::complex<double>{0.3, 0.2}, {-0.5, 0.4}, {0.1, -0.6}}) {
        const auto lhs = evaluate_psi(series, std::conj(z));
        const auto rhs = std::conj(evaluate_psi(series, -z));
        CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("ODE residual of eigenvector series") {
    const auto vec = ground_state(35);
    const auto series = make_series(vec.h, 2.0, vec.energy);
    std::vector<double> g;
    for (double x : grid(-1.0, 1.0, 41))
        if (within_reliable_radius(series, x)) g.push_back(x);
    REQUIRE(g.size() >= 10);
    const double exact = ode_residual(series, kUnit, g);
    const double fd = ode_residual_finite_difference(series, kUnit, g);
    CHECK(std::abs(exact - fd) < 1e-6);
    CHECK(exact < 1e-6);
}

TEST_CASE("ODE residual of forward series at arbitrary energies") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-10.0, 30.0);
    SolverConfig cfg;
    const auto g = grid(-1.0, 1.0, 41);
    for (int trial = 0; trial < 20; ++trial) {
        const double e = u(rng);
        const auto series = make_series(forward_coefficients(e, 0.6, 0.8, 300, cfg, kUnit), 2.0, e);
        CHECK(ode_residual(series, kUnit, g) < 1e-8);
    }
}

TEST_CASE("ODE residual detects non-solutions") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CoefficientSequence junk;
    for (int n = 0; n < 60; ++n) junk.entries.push_back(ScaledReal::from_double(u(rng) / std::tgamma(1.0 + n / 2.0)));
    const auto series = make_series(junk, 2.0, 1.0);
    CHECK(ode_residual(series, kUnit, grid(-0.8, 0.8, 17)) > 1e-2);

    // coefficients of one energy judged against another
    SolverConfig cfg;
    auto wrong = make_series(forward_coefficients(3.0, 1.0, 0.0, 200, cfg, kUnit), 2.0, 3.5);
    CHECK(ode_residual(wrong, kUnit, grid(-1.0, 1.0, 21)) > 1e-3);
}

TEST_CASE("tail growth away from eigenvalues") {
    SolverConfig cfg;
    const auto series = make_series(forward_coefficients(3.0, 1.0, 0.0, 600, cfg, kUnit), 2.0, 3.0);
    const TailReport report = tail_classification(series);
    CHECK_FALSE(report.degraded);
    for (const TailSide* side : {&report.left, &report.right}) {
        CHECK(side->growing);
        CHECK(std::abs(side->growth_coefficient - 1.0) <= 0.25);
        CHECK(side->points_used == 41);
    }
}

TEST_CASE("tail onset moves out near an eigenvalue") {
    SolverConfig cfg;
    cfg.n_trunc = 50;
    const auto vec = eigenvector_inverse_iteration(build_hill_operator(cfg, kUnit), 1.6916, cfg);
    auto onset = [&](double e) {
        const auto series =
            make_series(forward_coefficients(e, std::cos(vec.zeta), std::sin(vec.zeta), 600, cfg, kUnit), 2.0, e);
        return tail_classification(series, 0.5, 6.0, 56).right.onset;
    };
    const double near = onset(vec.energy + 1e-7);
    CHECK(near > onset(vec.energy + 0.5) + 0.5);
    CHECK(near > onset(vec.energy - 0.5) + 0.5);
}

TEST_CASE("pure Gaussian decays") {
    CoefficientSequence seq;
    seq.entries.push_back(ScaledReal::from_double(1.0));
    for (int n = 1; n < 400; ++n) seq.entries.push_back(ScaledReal{});
    const TailReport report = tail_classification(make_series(seq, 2.0, 0.0));
    CHECK_FALSE(report.left.growing);
    CHECK_FALSE(report.right.growing);
    CHECK(report.right.growth_coefficient < 0.0);
}

TEST_CASE("tail classification flags short series") {
    SolverConfig cfg;
    const auto series = make_series(forward_coefficients(3.0, 1.0, 0.0, 60, cfg, kUnit), 2.0, 3.0);
    const TailReport report = tail_classification(series);
    CHECK(report.degraded);
}

TEST_CASE("sample csv") {
    std::ostringstream out;
    const std::vector<double> xs{0.0, 0.5};
    const std::vector<std::complex<double>> psi{{1.0, 0.0}, {0.5, -0.25}};
    write_samples_csv(out, xs, psi);
    CHECK(out.str() == "x,re_psi,im_psi,abs_psi\n0,1,0,1\n0.5,0.5,-0.25,0.559016994375\n");
}
