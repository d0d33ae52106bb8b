#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "hillpt/eigensolver.hpp"
#include "hillpt/error.hpp"
#include "test_support.hpp"

using namespace hillpt;
using hillpt::testing::multiset_distance;

namespace {
const OscillatorParams kUnit{1.0, 1.0, 1.0, 1.0};

SolverConfig with_n(int n, double s = 2.0) {
    SolverConfig cfg;
    cfg.n_trunc = n;
    cfg.s = s;
    return cfg;
}

double spectral_radius(const std::vector<std::complex<double>>& v) {
    double r = 0.0;
    for (const auto& z : v) r = std::max(r, std::abs(z));
    return r;
}
}  // namespace

TEST_CASE("balancing") {
    const auto id = balance(DenseMatrix::identity(4));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(id.scaling[i] == 1.0);
        for (std::size_t j = 0; j < 4; ++j) CHECK(id.matrix(i, j) == (i == j ? 1.0 : 0.0));
    }

    // S^-1 M S with badly scaled S
    const DenseMatrix m = hillpt::testing::random_matrix(6, 3);
    DenseMatrix skew = m;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) skew(i, j) = m(i, j) * std::ldexp(1.0, 6 * static_cast<int>(j) - 6 * static_cast<int>(i));
    const auto b = balance(skew);
    for (double d : b.scaling) CHECK(std::log2(d) == doctest::Approx(std::round(std::log2(d))));
    CHECK(multiset_distance(eigenvalues(m).values, eigenvalues(skew).values) < 1e-12 * spectral_radius(eigenvalues(m).values) + 1e-12);

    const DenseMatrix hill = build_hill_operator(with_n(25), kUnit).to_dense();
    const auto plain = qr_eigenvalues(hessenberg_reduce(hill).hessenberg);
    const auto balanced = eigenvalues(hill);
    for (const auto& z : plain.values) {
        double best = INFINITY;
        for (const auto& w : balanced.values) best = std::min(best, std::abs(z - w));
        CHECK(best <= 1e-9 * std::abs(z));
    }
}

TEST_CASE("hessenberg reduction") {
    const auto id = hessenberg_reduce(DenseMatrix::identity(5), true);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(id.hessenberg(i, j) == (i == j ? 1.0 : 0.0));

    DenseMatrix two(2, 2);
    two(0, 0) = 1.0;
    two(0, 1) = 2.0;
    two(1, 0) = 3.0;
    two(1, 1) = 4.0;
    const auto h2 = hessenberg_reduce(two);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(h2.hessenberg(i, j) == two(i, j));

    const DenseMatrix a = hillpt::testing::random_matrix(30, 99, -3.0, 5.0);
    const auto h = hessenberg_reduce(a, true);
    CHECK(hillpt::testing::frobenius(h.hessenberg) == doctest::Approx(hillpt::testing::frobenius(a)).epsilon(1e-12));
    for (std::size_t i = 2; i < 30; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) CHECK(h.hessenberg(i, j) == 0.0);
    REQUIRE(h.q.has_value());
    using hillpt::testing::multiply;
    using hillpt::testing::transpose;
    const DenseMatrix back = multiply(multiply(*h.q, h.hessenberg), transpose(*h.q));
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 30; ++j) CHECK(back(i, j) == doctest::Approx(a(i, j)).epsilon(1e-12).scale(10.0));
}

TEST_CASE("qr on hand-checkable matrices") {
    DenseMatrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    auto e = qr_eigenvalues(d).values;
    CHECK(multiset_distance(e, {1.0, 2.0, 3.0}) < 1e-14);

    DenseMatrix rot(2, 2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    e = qr_eigenvalues(rot).values;
    CHECK(multiset_distance(e, {{0.0, 1.0}, {0.0, -1.0}}) < 1e-14);

    // companion matrix of x^3 - 6x^2 + 11x - 6
    DenseMatrix comp(3, 3);
    comp(0, 0) = 6.0;
    comp(0, 1) = -11.0;
    comp(0, 2) = 6.0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    e = qr_eigenvalues(comp).values;
    CHECK(multiset_distance(e, {1.0, 2.0, 3.0}) < 1e-10);
    e = eigenvalues(comp).values;
    CHECK(multiset_distance(e, {1.0, 2.0, 3.0}) < 1e-10);
}

TEST_CASE("conjugate closure and trace") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const DenseMatrix a = hillpt::testing::random_matrix(40, seed);
        const auto e = eigenvalues(a).values;
        REQUIRE(e.size() == 40);
        CHECK(multiset_distance(e, hillpt::testing::conjugated(e)) <= 1e-10 * spectral_radius(e));
        std::complex<double> sum = std::accumulate(e.begin(), e.end(), std::complex<double>{});
        double trace = 0.0;
        for (std::size_t i = 0; i < 40; ++i) trace += a(i, i);
        CHECK(std::abs(sum.real() - trace) <= 1e-9 * std::max(1.0, std::abs(trace)) + 1e-12 * spectral_radius(e) * 40);
        CHECK(std::abs(sum.imag()) < 1e-10 * spectral_radius(e));
    }
    for (int n : {10, 25, 35, 50}) {
        const BandedMatrix d = build_hill_operator(with_n(n), kUnit);
        const auto e = eigenvalues(d.to_dense()).values;
        CHECK(multiset_distance(e, hillpt::testing::conjugated(e)) <= 1e-10 * spectral_radius(e));
        const double sum = std::accumulate(e.begin(), e.end(), std::complex<double>{}).real();
        CHECK(std::abs(sum - d.trace()) <= 1e-9 * d.trace());
    }
}

TEST_CASE("similarity invariance on Hill matrices") {
    auto worst_relative = [](const DenseMatrix& hill, double radius) {
        const auto direct = qr_eigenvalues(hessenberg_reduce(hill).hessenberg).values;
        const auto full = eigenvalues(hill).values;
        double worst = 0.0;
        for (const auto& z : direct) {
            if (std::abs(z) >= radius) continue;
            double best = INFINITY;
            for (const auto& w : full) best = std::min(best, std::abs(z - w));
            worst = std::max(worst, best / std::abs(z));
        }
        return worst;
    };
    // Every level up to N = 30.
    for (int n : {10, 15, 20, 25, 30}) {
        CAPTURE(n);
        CHECK(worst_relative(build_hill_operator(with_n(n), kUnit).to_dense(), INFINITY) <= 1e-9);
    }
    // Beyond that the upper levels are too ill-conditioned; the low ones still agree.
    for (int n : {35, 40, 50}) {
        CAPTURE(n);
        CHECK(worst_relative(build_hill_operator(with_n(n), kUnit).to_dense(), 12.0) <= 1e-8);
    }
}

TEST_CASE("sweep limit is enforced") {
    const DenseMatrix a = hillpt::testing::random_matrix(20, 5);
    CHECK_THROWS_AS(eigenvalues(a, 0), NumericalFailure);
}

TEST_CASE("real spectrum filtering") {
    const auto n25 = compute_spectrum(with_n(25), kUnit);
    REQUIRE(n25.energies.size() >= 2);
    CHECK(std::abs(n25.energies[0] - 1.691579) < 1e-4);
    CHECK(std::abs(n25.energies[1] - 1.691579 - (5.123441 - 1.691579)) < 1e-3);
    CHECK(n25.n_trunc == 25);
    for (std::size_t k = 1; k < n25.energies.size(); ++k) CHECK(n25.energies[k] > n25.energies[k - 1]);

    // One complex pair at N = 20, between the fifth and sixth real levels.
    const auto n20 = compute_spectrum(with_n(20), kUnit);
    CHECK(n20.dropped_complex_pairs == 1);
    REQUIRE(n20.dropped_pairs.size() == 1);
    CHECK(n20.dropped_pairs[0].real() == doctest::Approx(24.2939).epsilon(1e-4));
    CHECK(n20.dropped_pairs[0].imag() == doctest::Approx(2.3358).epsilon(1e-4));
    CHECK(n20.energies[4] < n20.dropped_pairs[0].real());
    CHECK(n20.energies[5] > n20.dropped_pairs[0].real());

    ComplexEigenvalueList diag{{3.0, 1.0, 2.0, 2.0}, 0};
    const auto r = real_spectrum(diag, {2.0}, SolverConfig{});
    CHECK(r.dropped_complex_pairs == 0);
    REQUIRE(r.energies.size() == 3);
    CHECK(r.energies[0] == 2.0);
    CHECK(r.energies[2] == 6.0);

    ComplexEigenvalueList mixed{{{1.0, 1e-9}, {1.0, -1e-9}, {4.0, 0.5}, {4.0, -0.5}}, 0};
    const auto m = real_spectrum(mixed, {1.0}, SolverConfig{});
    REQUIRE(m.energies.size() == 1);
    CHECK(m.imag_flags[0] == doctest::Approx(1e-9));
    CHECK(m.dropped_complex_pairs == 1);
}

TEST_CASE("convergence in N") {
    const double e25 = compute_spectrum(with_n(25), kUnit).energies[0];
    const double e35 = compute_spectrum(with_n(35), kUnit).energies[0];
    CHECK(std::abs(e25 - e35) < 2e-5);
}

TEST_CASE("inverse iteration, triangular case") {
    const BandedMatrix d = build_hill_operator(with_n(2), kUnit, BandPolicy::allow_truncated);
    const auto r = eigenvector_inverse_iteration(d, 4.0, with_n(2));
    CHECK(r.energy == doctest::Approx(4.0));
    const double expected = std::atan2(-1.0 / 8.0, 1.0);
    CHECK(r.zeta == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.h.value(1) / r.h.value(0) == doctest::Approx(-1.0 / 8.0).epsilon(1e-12));
    CHECK(std::hypot(r.h.value(0), r.h.value(1)) == doctest::Approx(1.0));
}

TEST_CASE("inverse iteration at N = 35") {
    const SolverConfig cfg = with_n(35);
    const BandedMatrix d = build_hill_operator(cfg, kUnit);
    const auto r = eigenvector_inverse_iteration(d, 1.691590, cfg);
    CHECK(r.residual < 1e-8);
    CHECK(r.energy == doctest::Approx(compute_spectrum(cfg, kUnit).energies[0]).epsilon(1e-13));
    CHECK(std::hypot(r.h.value(0), r.h.value(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.h.value(0) > 0.0);

    // the vector solves every recurrence row once h_N = h_{N+1} = 0 are appended
    std::vector<double> h = r.h.to_doubles();
    h.push_back(0.0);
    h.push_back(0.0);
    for (int n = 0; n < 35; ++n) CHECK(recurrence_row_residual(h, n, r.energy, cfg, kUnit) < 1e-10);

    // same eigenvalue from a seed 1e-2 away
    CHECK(eigenvector_inverse_iteration(d, 1.70, cfg).energy == doctest::Approx(r.energy).epsilon(1e-13));
    // nothing real nearby
    CHECK_THROWS_AS(eigenvector_inverse_iteration(d, 3.4, cfg), NumericalFailure);
}

TEST_CASE("spectrum csv") {
    std::ostringstream out;
    write_csv(out, compute_spectrum(with_n(5), kUnit));
    CHECK(out.str().rfind("k,E_k,imag_flag\n0,1.79", 0) == 0);
}
