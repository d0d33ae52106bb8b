#include "hillpt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hillpt/eigensolver.hpp"
#include "hillpt/recurrence.hpp"

namespace hillpt {

double wrap_angle(double zeta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double z = std::fmod(zeta, two_pi);
    if (z < 0.0) z += two_pi;
    if (z >= two_pi) z = 0.0;
    return z;
}

double Mismatch::norm() const { return std::hypot(h_n, h_n1); }

Mismatch truncation_mismatch(const BoundaryState& state, int n, const SolverConfig& config,
                             const OscillatorParams& params) {
    if (n < 2) throw InvalidParameter("truncation order must be at least 2");
    // Envelope of the fundamental pair, so the mismatch stays linear in (cos zeta, sin zeta).
    const CoefficientSequence sigma = forward_coefficients(state.energy, 1.0, 0.0, n + 1, config, params);
    const CoefficientSequence omega = forward_coefficients(state.energy, 0.0, 1.0, n + 1, config, params);
    double log10_env = -std::numeric_limits<double>::infinity();
    for (int k = std::max(0, n - 5); k <= n + 1; ++k) {
        const auto i = static_cast<std::size_t>(k);
        log10_env = std::max({log10_env, sigma.entries[i].log10_abs(), omega.entries[i].log10_abs()});
    }
    auto scaled = [&](const CoefficientSequence& seq, int k) {
        const ScaledReal& h = seq.entries[static_cast<std::size_t>(k)];
        if (h.is_zero()) return 0.0;
        return std::copysign(std::pow(10.0, h.log10_abs() - log10_env), h.mantissa);
    };
    const double c = std::cos(state.zeta);
    const double sn = std::sin(state.zeta);
    return {c * scaled(sigma, n) + sn * scaled(omega, n), c * scaled(sigma, n + 1) + sn * scaled(omega, n + 1),
            log10_env};
}

BoundaryState solve_boundary_conditions(const BoundaryState& initial, int n, const SolverConfig& config,
                                        const OscillatorParams& params, const BoundarySolveOptions& options) {
    std::vector<BoundaryState> trail{initial};
    BoundaryState x{initial.energy, wrap_angle(initial.zeta)};
    Mismatch f = truncation_mismatch(x, n, config, params);
    bool stagnated = false;

    for (int it = 0; it < options.max_iterations; ++it) {
        if (f.norm() < options.tolerance) return x;
        const double step_e = 1e-6 * (1.0 + std::abs(x.energy));
        const double step_z = 1e-6;
        const Mismatch ep = truncation_mismatch({x.energy + step_e, x.zeta}, n, config, params);
        const Mismatch em = truncation_mismatch({x.energy - step_e, x.zeta}, n, config, params);
        const Mismatch zp = truncation_mismatch({x.energy, x.zeta + step_z}, n, config, params);
        const Mismatch zm = truncation_mismatch({x.energy, x.zeta - step_z}, n, config, params);
        const double j00 = (ep.h_n - em.h_n) / (2.0 * step_e);
        const double j10 = (ep.h_n1 - em.h_n1) / (2.0 * step_e);
        const double j01 = (zp.h_n - zm.h_n) / (2.0 * step_z);
        const double j11 = (zp.h_n1 - zm.h_n1) / (2.0 * step_z);
        const double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double de = -(j11 * f.h_n - j01 * f.h_n1) / det;
        const double dz = -(-j10 * f.h_n + j00 * f.h_n1) / det;

        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= options.max_halvings; ++halving, lambda *= 0.5) {
            const BoundaryState trial{x.energy + lambda * de, x.zeta + lambda * dz};
            const Mismatch ft = truncation_mismatch(trial, n, config, params);
            if (ft.norm() < f.norm()) {
                x = trial;
                f = ft;
                accepted = true;
                break;
            }
        }
        const bool tiny_step =
            std::abs(de) <= 1e-12 * (1.0 + std::abs(x.energy)) && std::abs(dz) <= 1e-12;
        if (!accepted || tiny_step) {
            // rounding floor of the forward recursion
            stagnated = true;
            break;
        }
        x.zeta = wrap_angle(x.zeta);
        trail.push_back(x);
    }
    if (f.norm() < options.tolerance || (stagnated && f.norm() < 1e-8)) return x;

    std::ostringstream msg;
    msg.precision(12);
    msg << "boundary-condition Newton solve failed at N = " << n << ": final E = " << x.energy
        << ", zeta = " << x.zeta << ", mismatch = " << f.norm() << " after " << trail.size() - 1
        << " accepted steps";
    throw BoundarySolveFailure(msg.str(), f, std::move(trail));
}

FdHamiltonian fd_hamiltonian(const PolynomialPotential& v, double x_max, int points) {
    if (points < 3 || !(x_max > 0.0)) throw InvalidParameter("finite-difference grid needs X > 0 and M >= 3");
    FdHamiltonian h;
    h.x_max = x_max;
    h.step = 2.0 * x_max / (points + 1);
    const double inv_h2 = 1.0 / (h.step * h.step);
    h.off_diag = -inv_h2;
    h.diag_re.resize(static_cast<std::size_t>(points));
    h.diag_im.resize(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) {
        // symmetric grid: x_{M-1-j} = -x_j exactly
        const int mirrored = points - 1 - j;
        const double x = 0.5 * (j - mirrored) * h.step;
        const double x2 = x * x;
        h.diag_re[static_cast<std::size_t>(j)] = 2.0 * inv_h2 + v.a * x2 * x2 + v.c * x2;
        h.diag_im[static_cast<std::size_t>(j)] = v.beta * x2 * x + v.delta * x;
    }
    return h;
}

DenseMatrix complex_embedding(const FdHamiltonian& h) {
    const std::size_t m = h.diag_re.size();
    DenseMatrix out(2 * m, 2 * m);
    for (std::size_t j = 0; j < m; ++j) {
        out(j, j) = h.diag_re[j];
        out(m + j, m + j) = h.diag_re[j];
        out(j, m + j) = -h.diag_im[j];
        out(m + j, j) = h.diag_im[j];
        if (j + 1 < m) {
            out(j, j + 1) = out(j + 1, j) = h.off_diag;
            out(m + j, m + j + 1) = out(m + j + 1, m + j) = h.off_diag;
        }
    }
    return out;
}

DenseMatrix pt_parity_reduction(const FdHamiltonian& h) {
    const int m = static_cast<int>(h.diag_re.size());
    const int half = m / 2;
    const bool has_middle = m % 2 == 1;
    const int n_even = half + (has_middle ? 1 : 0);

    // basis vectors as (grid index, weight) pairs
    struct Term {
        int index;
        double weight;
    };
    std::vector<std::vector<Term>> basis;
    const double r = std::numbers::sqrt2 / 2.0;
    for (int j = 0; j < half; ++j) basis.push_back({{j, r}, {m - 1 - j, r}});
    if (has_middle) basis.push_back({{half, 1.0}});
    for (int j = 0; j < half; ++j) basis.push_back({{j, r}, {m - 1 - j, -r}});

    // grid index -> (basis id, weight) for even and odd members
    std::vector<std::vector<Term>> owners(static_cast<std::size_t>(m));
    for (int b = 0; b < static_cast<int>(basis.size()); ++b)
        for (const Term& t : basis[static_cast<std::size_t>(b)]) owners[static_cast<std::size_t>(t.index)].push_back({b, t.weight});

    // Q^T A Q and Q^T B Q from the sparse columns
    DenseMatrix a_q(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    DenseMatrix b_q(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int col = 0; col < m; ++col) {
        for (const Term& t : basis[static_cast<std::size_t>(col)]) {
            const auto j = static_cast<std::size_t>(t.index);
            auto deposit = [&](DenseMatrix& target, int row_index, double value) {
                for (const Term& owner : owners[static_cast<std::size_t>(row_index)])
                    target(static_cast<std::size_t>(owner.index), static_cast<std::size_t>(col)) += owner.weight * value;
            };
            deposit(a_q, t.index, h.diag_re[j] * t.weight);
            if (t.index > 0) deposit(a_q, t.index - 1, h.off_diag * t.weight);
            if (t.index + 1 < m) deposit(a_q, t.index + 1, h.off_diag * t.weight);
            deposit(b_q, t.index, h.diag_im[j] * t.weight);
        }
    }

    // [[A_ee, -B_eo], [B_oe, A_oo]]
    DenseMatrix out(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const bool even_row = i < n_even;
            const bool even_col = j < n_even;
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            if (even_row == even_col)
                out(ui, uj) = a_q(ui, uj);
            else if (even_row)
                out(ui, uj) = -b_q(ui, uj);
            else
                out(ui, uj) = b_q(ui, uj);
        }
    return out;
}

std::vector<double> fd_real_levels(const FdHamiltonian& h, FdEmbedding embedding, double tol_imag) {
    const DenseMatrix m = embedding == FdEmbedding::pt_parity ? pt_parity_reduction(h) : complex_embedding(h);
    const ComplexEigenvalueList eigs = eigenvalues(m, 60);
    std::vector<double> real;
    for (const auto& e : eigs.values)
        if (std::abs(e.imag()) <= tol_imag * (1.0 + std::abs(e.real()))) real.push_back(e.real());
    std::sort(real.begin(), real.end());
    if (embedding == FdEmbedding::complex_doubling) {
        // every real eigenvalue of A + iB appears twice in the embedding
        std::vector<double> single;
        for (std::size_t i = 0; i < real.size(); i += 2) single.push_back(real[i]);
        real = std::move(single);
    }
    return real;
}

FdResult fd_reference_solver(const PolynomialPotential& v, const FdOptions& options) {
    if (options.levels < 1) throw InvalidParameter("need at least one finite-difference level");
    const std::vector<double> coarse =
        fd_real_levels(fd_hamiltonian(v, options.x_max, options.points), options.embedding, options.tol_imag);
    const std::vector<double> fine =
        fd_real_levels(fd_hamiltonian(v, options.x_max, 2 * options.points + 1), options.embedding, options.tol_imag);
    FdResult out;
    const std::size_t count = std::min({coarse.size(), fine.size(), static_cast<std::size_t>(options.levels)});
    for (std::size_t k = 0; k < count; ++k) {
        FdLevel level;
        level.k = static_cast<int>(k);
        level.coarse = coarse[k];
        level.fine = fine[k];
        level.extrapolated = (4.0 * fine[k] - coarse[k]) / 3.0;
        level.polluted = std::abs(fine[k] - coarse[k]) > options.pollution_threshold;
        out.levels.push_back(level);
        if (!level.polluted) out.energies.push_back(level.extrapolated);
    }
    return out;
}

FdResult fd_reference_solver(const OscillatorParams& params, const FdOptions& options) {
    validate(params);
    return fd_reference_solver(PolynomialPotential{params.a, params.beta, params.c, params.delta}, options);
}

}  // namespace hillpt
