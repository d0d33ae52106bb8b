#include <cmath>
#include <random>

#include "doctest.h"
#include "hillpt/eigensolver.hpp"
#include "hillpt/error.hpp"
#include "hillpt/model.hpp"
#include "hillpt/oracle.hpp"

using namespace hillpt;

TEST_CASE("rescaling is the identity at a = 1") {
    const OscillatorParams p{1.0, 1.0, 1.0, 1.0};
    const auto r = rescale_to_unit_quartic(p);
    CHECK(r.params.a == 1.0);
    CHECK(r.params.beta == 1.0);
    CHECK(r.params.c == 1.0);
    CHECK(r.params.delta == 1.0);
    CHECK(r.scale.factor == 1.0);
    const auto again = rescale_to_unit_quartic(r.params);
    CHECK(again.params.beta == r.params.beta);
    CHECK(again.scale.factor == 1.0);
}

TEST_CASE("rescaling of a pure quartic") {
    const auto r = rescale_to_unit_quartic({64.0, 0.0, 0.0, 0.0});
    CHECK(r.params.a == 1.0);
    CHECK(r.params.beta == 0.0);
    CHECK(r.params.c == 0.0);
    CHECK(r.params.delta == 0.0);
    CHECK(r.scale.factor == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("rescaling law for a = 2") {
    const auto r = rescale_to_unit_quartic({2.0, 1.0, 0.0, 0.0});
    CHECK(r.params.beta == doctest::Approx(std::pow(2.0, -5.0 / 6.0)).epsilon(1e-15));
    CHECK(r.scale.factor == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));

    const auto general = rescale_to_unit_quartic({3.0, 0.7, -0.4, 1.3});
    CHECK(general.params.beta == doctest::Approx(0.7 * std::pow(3.0, -5.0 / 6.0)));
    CHECK(general.params.c == doctest::Approx(-0.4 * std::pow(3.0, -2.0 / 3.0)));
    CHECK(general.params.delta == doctest::Approx(1.3 * std::pow(3.0, -0.5)));
}

TEST_CASE("rescaled energies match finite differences on the original problem") {
    FdOptions fd;
    fd.points = 400;
    fd.levels = 3;
    const FdResult original = fd_reference_solver(PolynomialPotential{2.0, 1.0, 0.0, 0.0}, fd);
    const auto r = rescale_to_unit_quartic({2.0, 1.0, 0.0, 0.0});
    const FdResult unit = fd_reference_solver(PolynomialPotential{1.0, r.params.beta, 0.0, 0.0}, fd);
    REQUIRE(original.energies.size() == 3);
    REQUIRE(unit.energies.size() == 3);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::abs(original.energies[k] - r.scale.factor * unit.energies[k]) / original.energies[k] < 1e-4);

    // the Hill path maps back through the same factor
    SolverConfig cfg;
    cfg.n_trunc = 50;
    const SpectrumResult hill = compute_spectrum(cfg, {2.0, 1.0, 0.0, 0.0});
    REQUIRE(hill.energies.size() >= 3);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::abs(hill.energies[k] - original.energies[k]) / original.energies[k] < 1e-4);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(rescale_to_unit_quartic({0.0, 1.0, 1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(rescale_to_unit_quartic({-1.0, 1.0, 1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(validate({1.0, NAN, 1.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(validate({1.0, 1.0, INFINITY, 1.0}), InvalidParameter);
    CHECK_NOTHROW(validate({1.0, 1.0, 1.0, 1.0}));
    try {
        rescale_to_unit_quartic({-2.0, 0.0, 0.0, 0.0});
    } catch (const InvalidParameter& e) {
        CHECK(std::string(e.what()).find("a <= 0") != std::string::npos);
    }
}

TEST_CASE("growth constraint verdicts") {
    SolverConfig cfg;
    cfg.s = 2.0;
    CHECK(validate_growth_constraint(cfg, {1.0, 1.0, 1.0, 1.0}).valid);

    cfg.s = 0.1;
    const auto bad = validate_growth_constraint(cfg, {1.0, 1.0, 1.0, 1.0});
    CHECK_FALSE(bad.valid);
    CHECK(bad.minimal_s == doctest::Approx(0.144337567297).epsilon(1e-11));
    CHECK_THROWS_AS(require_growth_constraint(cfg, {1.0, 1.0, 1.0, 1.0}), InvalidParameter);

    cfg.s = 0.01;
    CHECK(validate_growth_constraint(cfg, {1.0, 0.0, 1.0, 1.0}).valid);

    cfg.s = 0.1;
    CHECK_FALSE(validate_growth_constraint(cfg, {1.0, -1.0, 1.0, 1.0}).valid);
}

TEST_CASE("growth constraint is monotone in s") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> beta_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> s_dist(0.01, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const OscillatorParams p{1.0, beta_dist(rng), 0.0, 0.0};
        SolverConfig lo;
        lo.s = s_dist(rng);
        SolverConfig hi = lo;
        hi.s = lo.s + s_dist(rng);
        if (validate_growth_constraint(lo, p).valid) CHECK(validate_growth_constraint(hi, p).valid);
    }
}

TEST_CASE("spectral work rejects the constraint violation before computing") {
    SolverConfig cfg;
    cfg.s = 0.1;
    CHECK_THROWS_AS(compute_spectrum(cfg, {1.0, 1.0, 1.0, 1.0}), InvalidParameter);
}
