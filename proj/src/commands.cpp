#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

#include "hillpt/app.hpp"
#include "hillpt/asymptotics.hpp"
#include "hillpt/eigensolver.hpp"
#include "hillpt/error.hpp"
#include "hillpt/hill_matrix.hpp"
#include "hillpt/io.hpp"
#include "hillpt/oracle.hpp"
#include "hillpt/wavefunction.hpp"

namespace hillpt::app {

using nlohmann::json;

namespace {

// Every command runs on the a = 1 problem; the growth gate fires before any numerics.
RescaledProblem prepare(const RunConfig& config) {
    const RescaledProblem problem = rescale_to_unit_quartic(config.params);
    require_growth_constraint(config.solver, problem.params);
    return problem;
}

json header(const std::string& command, const RunConfig& config) {
    return {{"command", command}, {"params", io::to_json(config.params)}, {"solver", io::to_json(config.solver)}};
}

std::string render_energy(double e, bool paper_style) {
    if (!paper_style) return io::format_number(e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", e);
    return buf;
}

double rounded(double v) { return io::round_significant(v); }

}  // namespace

CommandResult cmd_spectrum(const RunConfig& config) {
    prepare(config);
    const SpectrumResult spectrum = compute_spectrum(config.solver, config.params);
    const std::size_t count = std::min(spectrum.energies.size(), static_cast<std::size_t>(std::max(config.levels, 0)));

    CommandResult result;
    if (config.format == OutputFormat::json) {
        json doc = header("spectrum", config);
        doc["n_trunc"] = spectrum.n_trunc;
        doc["energies"] = json::array();
        doc["imag_flags"] = json::array();
        for (std::size_t k = 0; k < count; ++k) {
            doc["energies"].push_back(rounded(spectrum.energies[k]));
            doc["imag_flags"].push_back(rounded(spectrum.imag_flags[k]));
        }
        doc["dropped_complex_pairs"] = spectrum.dropped_complex_pairs;
        doc["dropped_pairs"] = json::array();
        for (const auto& p : spectrum.dropped_pairs) doc["dropped_pairs"].push_back({rounded(p.real()), rounded(p.imag())});
        result.content = doc.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "k,E_k,imag_flag\n";
        for (std::size_t k = 0; k < count; ++k)
            out << k << ',' << render_energy(spectrum.energies[k], config.paper_style) << ','
                << io::format_number(spectrum.imag_flags[k]) << '\n';
        result.content = out.str();
    }
    return result;
}


CommandResult cmd_converge(const RunConfig& config) {
    prepare(config);
    const int levels = std::max(config.levels, 1);

    struct Row {
        int n;
        std::vector<LevelSlot> slots;
        std::string status = "ok";
    };
    std::vector<Row> rows;
    for (int n : config.n_list) {
        Row row{n, {}};
        try {
            SolverConfig solver = config.solver;
            solver.n_trunc = n;
            row.slots = level_slots(compute_spectrum(solver, config.params));
        } catch (const std::exception& e) {
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }

    CommandResult result;
    if (config.format == OutputFormat::json) {
        json doc = header("converge", config);
        doc["levels"] = levels;
        doc["rows"] = json::array();
        for (const Row& row : rows) {
            json energies = json::array();
            for (int k = 0; k < levels; ++k) {
                const auto uk = static_cast<std::size_t>(k);
                if (uk < row.slots.size() && !row.slots[uk].complex_pair)
                    energies.push_back(rounded(row.slots[uk].value));
                else if (uk < row.slots.size())
                    energies.push_back("-");
                else
                    energies.push_back(nullptr);
            }
            doc["rows"].push_back({{"n_trunc", row.n}, {"energies", energies}, {"status", row.status}});
        }
        result.content = doc.dump(2) + "\n";
        return result;
    }
    std::ostringstream out;
    out << "N";
    for (int k = 0; k < levels; ++k) out << ",E_" << k;
    out << ",status\n";
    for (const Row& row : rows) {
        out << row.n;
        for (int k = 0; k < levels; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            out << ',';
            if (uk < row.slots.size()) out << (row.slots[uk].complex_pair ? "-" : render_energy(row.slots[uk].value, config.paper_style));
        }
        std::string status = row.status;
        std::replace(status.begin(), status.end(), ',', ';');
        out << ',' << status << '\n';
    }
    result.content = out.str();
    return result;
}

CommandResult cmd_wavefunction(const RunConfig& config) {
    const RescaledProblem problem = prepare(config);
    if (config.x_points < 2 || !(config.x_max > config.x_min)) throw InvalidParameter("bad sampling grid");
    const SpectrumResult spectrum = compute_spectrum(config.solver, config.params);
    if (config.level < 0 || static_cast<std::size_t>(config.level) >= spectrum.energies.size())
        throw NumericalFailure("level " + std::to_string(config.level) + " has no real eigenvalue at N = " +
                               std::to_string(config.solver.n_trunc));

    const double scale = problem.scale.factor;
    const BandedMatrix d = build_hill_operator(config.solver, problem.params);
    const InverseIterationResult vec =
        eigenvector_inverse_iteration(d, spectrum.energies[static_cast<std::size_t>(config.level)] / scale, config.solver);
    const WavefunctionSeries series = make_series(vec.h, config.solver.s, vec.energy);

    // original x maps to a^(1/6) x on the rescaled problem
    const double x_factor = std::pow(config.params.a, 1.0 / 6.0);
    std::vector<double> xs;
    std::vector<std::complex<double>> psi;
    std::vector<double> rescaled_grid;
    int dropped = 0;
    for (int i = 0; i < config.x_points; ++i) {
        const double x = config.x_min + (config.x_max - config.x_min) * i / (config.x_points - 1);
        try {
            psi.push_back(evaluate_psi(series, x * x_factor));
            xs.push_back(x);
            rescaled_grid.push_back(x * x_factor);
        } catch (const SeriesTruncationError&) {
            ++dropped;
        }
    }
    if (xs.empty()) throw NumericalFailure("no sample point lies within the reliable radius of the series");

    std::vector<double> symmetric;
    for (double x : rescaled_grid)
        if (within_reliable_radius(series, -x)) symmetric.push_back(x);
    const double defect = pt_defect(series, symmetric);
    const double residual = ode_residual(series, problem.params, rescaled_grid);

    json head = header("wavefunction", config);
    head["level"] = config.level;
    head["energy"] = rounded(vec.energy * scale);
    head["zeta"] = rounded(vec.zeta);
    head["pt_defect"] = rounded(defect);
    head["ode_residual"] = rounded(residual);
    head["eigenvector_residual"] = rounded(vec.residual);
    if (dropped > 0)
        head["warning"] = std::to_string(dropped) + " grid points outside the reliable radius of the truncated series were dropped";

    CommandResult result;
    if (residual > kWavefunctionResidualGate) {
        result.code = ExitCode::numerical_failure;
        result.message = "wavefunction rejected: ODE residual " + io::format_number(residual) + " exceeds " +
                         io::format_number(kWavefunctionResidualGate);
    }
    if (config.format == OutputFormat::json) {
        head["samples"] = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i)
            head["samples"].push_back({rounded(xs[i]), rounded(psi[i].real()), rounded(psi[i].imag()), rounded(std::abs(psi[i]))});
        result.content = head.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "# " << head.dump() << '\n';
        write_samples_csv(out, xs, psi);
        result.content = out.str();
    }
    return result;
}

CommandResult cmd_verify(const RunConfig& config) {
    const RescaledProblem problem = prepare(config);
    const double scale = problem.scale.factor;
    const int n = config.solver.n_trunc;
    const int levels = std::max(config.verify_levels, 1);

    const SpectrumResult hill = compute_spectrum(config.solver, config.params);

    // Newton seeds come from a smaller truncation when one is available
    SolverConfig seed_solver = config.solver;
    seed_solver.n_trunc = n >= 25 ? n - 10 : n;
    const SpectrumResult seed_spectrum = compute_spectrum(seed_solver, config.params);
    const BandedMatrix seed_d = build_hill_operator(seed_solver, problem.params);

    FdOptions fd_options;
    fd_options.x_max = config.fd_x_max;
    fd_options.points = config.fd_points;
    fd_options.levels = levels;
    const FdResult fd = fd_reference_solver(config.params, fd_options);

    bool all_pass = true;
    json doc = header("verify", config);
    doc["newton_seed_n_trunc"] = seed_solver.n_trunc;
    doc["fd"] = {{"x_max", config.fd_x_max}, {"points", config.fd_points}};
    doc["tolerance"] = config.cross_tolerance;
    doc["levels"] = json::array();
    for (int k = 0; k < levels; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        json entry{{"k", k}};
        std::optional<double> e_hill, e_newton, e_fd;
        if (uk < hill.energies.size()) e_hill = hill.energies[uk];
        if (uk < fd.energies.size()) e_fd = fd.energies[uk];
        if (uk < seed_spectrum.energies.size()) {
            try {
                const InverseIterationResult seed =
                    eigenvector_inverse_iteration(seed_d, seed_spectrum.energies[uk] / scale, seed_solver);
                const BoundaryState root =
                    solve_boundary_conditions({seed.energy, seed.zeta}, n, config.solver, problem.params);
                e_newton = root.energy * scale;
                entry["zeta"] = rounded(root.zeta);
            } catch (const NumericalFailure& e) {
                entry["newton_error"] = e.what();
            }
        }
        auto put = [&](const char* key, const std::optional<double>& v) {
            entry[key] = v ? json(rounded(*v)) : json(nullptr);
        };
        put("hill", e_hill);
        put("newton", e_newton);
        put("fd", e_fd);
        bool pass = e_hill && e_newton && e_fd;
        auto delta = [&](const char* key, const std::optional<double>& x, const std::optional<double>& y) {
            if (x && y) {
                const double d = std::abs(*x - *y);
                entry[key] = rounded(d);
                pass = pass && d <= config.cross_tolerance;
            } else {
                entry[key] = nullptr;
            }
        };
        delta("delta_hill_newton", e_hill, e_newton);
        delta("delta_hill_fd", e_hill, e_fd);
        delta("delta_newton_fd", e_newton, e_fd);
        entry["pass"] = pass;
        all_pass = all_pass && pass;
        doc["levels"].push_back(entry);
    }

    // the Gaussian exponent s must not move the spectrum
    SolverConfig at_s = config.solver;
    at_s.n_trunc = config.s_check_n;
    SolverConfig at_alt = at_s;
    at_alt.s = config.s_alt;
    require_growth_constraint(at_alt, problem.params);
    const SpectrumResult spec_s = compute_spectrum(at_s, config.params);
    const SpectrumResult spec_alt = compute_spectrum(at_alt, config.params);
    json s_check{{"s", config.solver.s}, {"s_alt", config.s_alt}, {"n_trunc", config.s_check_n},
                 {"tolerance", config.s_tolerance}, {"levels", json::array()}};
    bool s_pass = true;
    for (int k = 0; k < config.s_check_levels; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        if (uk >= spec_s.energies.size() || uk >= spec_alt.energies.size()) {
            s_pass = false;
            continue;
        }
        const double d = std::abs(spec_s.energies[uk] - spec_alt.energies[uk]);
        const bool ok = d <= config.s_tolerance;
        s_pass = s_pass && ok;
        s_check["levels"].push_back({{"k", k},
                                     {"e_s", rounded(spec_s.energies[uk])},
                                     {"e_alt", rounded(spec_alt.energies[uk])},
                                     {"delta", rounded(d)},
                                     {"pass", ok}});
    }
    s_check["pass"] = s_pass;
    doc["s_independence"] = s_check;
    const bool cross_pass = all_pass;
    all_pass = all_pass && s_pass;
    doc["pass"] = all_pass;

    CommandResult result;
    result.content = doc.dump(2) + "\n";
    if (!all_pass) {
        result.code = ExitCode::verification_mismatch;
        result.message = std::string("verification failed:") +
                         (cross_pass ? "" : " cross-method spread exceeds its bound;") +
                         (s_pass ? "" : " energies depend on s beyond the tolerance;");
        result.message.pop_back();
    }
    return result;
}

CommandResult cmd_asymptotics(const RunConfig& config) {
    const RescaledProblem problem = prepare(config);
    const double s = config.solver.s;
    const double beta = problem.params.beta;
    const auto solutions = birkhoff_solutions(s, beta);
    const double margin = dominance_margin(s, beta);
    const double energy = config.energy / problem.scale.factor;
    const CoefficientSequence seq =
        forward_coefficients(energy, config.h0, config.h1, config.n_hi, config.solver, problem.params);
    const GrowthFit fit = empirical_growth_fit(seq, config.n_lo, config.n_hi);

    CommandResult result;
    if (config.format == OutputFormat::json) {
        json doc = header("asymptotics", config);
        doc["energy"] = config.energy;
        doc["birkhoff"] = json::array();
        for (const auto& b : solutions)
            doc["birkhoff"].push_back({{"p", b.p},
                                       {"lambda", {rounded(b.lambda.real()), rounded(b.lambda.imag())}},
                                       {"gamma", {rounded(b.gamma.real()), rounded(b.gamma.imag())}},
                                       {"re_gamma", rounded(b.re_gamma)},
                                       {"re_gamma_closed_form", rounded(closed_form_re_gamma(b.p, s, beta))}});
        doc["dominance_margin"] = rounded(margin);
        doc["fit"] = {{"n_lo", config.n_lo},
                      {"n_hi", config.n_hi},
                      {"gamma_emp", rounded(fit.gamma)},
                      {"coeff_cbrt", rounded(fit.coeff_cbrt)},
                      {"constant", rounded(fit.constant)}};
        result.content = doc.dump(2) + "\n";
        return result;
    }
    std::ostringstream out;
    out << "# birkhoff: p,lambda_re,lambda_im,gamma_re,gamma_im,re_gamma_closed_form\n";
    for (const auto& b : solutions)
        out << "# " << b.p << ',' << io::format_number(b.lambda.real()) << ',' << io::format_number(b.lambda.imag())
            << ',' << io::format_number(b.gamma.real()) << ',' << io::format_number(b.gamma.imag()) << ','
            << io::format_number(closed_form_re_gamma(b.p, s, beta)) << '\n';
    out << "# dominance_margin=" << io::format_number(margin) << '\n';
    out << "# gamma_emp=" << io::format_number(fit.gamma) << " coeff_cbrt=" << io::format_number(fit.coeff_cbrt)
        << " constant=" << io::format_number(fit.constant) << '\n';
    write_growth_report(out, seq, fit, config.n_lo, config.n_hi);
    result.content = out.str();
    return result;
}

CommandResult cmd_determinants(const RunConfig& config) {
    const RescaledProblem problem = prepare(config);
    const double energy = config.energy / problem.scale.factor;
    const SplitSequences det = taylor_from_determinants(energy, config.n_max, config.solver, problem.params);
    const SplitSequences fwd = sigma_omega_forward(energy, std::max(config.n_max, 2), config.solver, problem.params);

    double worst = 0.0;
    auto rel = [](double a, double b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    };
    for (int k = 0; k <= config.n_max; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        worst = std::max({worst, rel(det.sigma.value(uk), fwd.sigma.value(uk)), rel(det.omega.value(uk), fwd.omega.value(uk))});
    }

    CommandResult result;
    if (config.format == OutputFormat::json) {
        json doc = header("determinants", config);
        doc["energy"] = config.energy;
        doc["max_relative_deviation"] = rounded(worst);
        doc["rows"] = json::array();
        for (int k = 0; k <= config.n_max; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            doc["rows"].push_back({{"n", k},
                                   {"sigma_forward", rounded(fwd.sigma.value(uk))},
                                   {"sigma_determinant", rounded(det.sigma.value(uk))},
                                   {"omega_forward", rounded(fwd.omega.value(uk))},
                                   {"omega_determinant", rounded(det.omega.value(uk))}});
        }
        result.content = doc.dump(2) + "\n";
        return result;
    }
    std::ostringstream out;
    out << "# max_relative_deviation=" << io::format_number(worst) << '\n';
    out << "n,sigma_forward,sigma_determinant,omega_forward,omega_determinant\n";
    for (int k = 0; k <= config.n_max; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        out << k << ',' << io::format_number(fwd.sigma.value(uk)) << ',' << io::format_number(det.sigma.value(uk))
            << ',' << io::format_number(fwd.omega.value(uk)) << ',' << io::format_number(det.omega.value(uk)) << '\n';
    }
    result.content = out.str();
    return result;
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
    try {
        if (name == "spectrum") return cmd_spectrum(config);
        if (name == "converge") return cmd_converge(config);
        if (name == "wavefunction") return cmd_wavefunction(config);
        if (name == "verify") return cmd_verify(config);
        if (name == "asymptotics") return cmd_asymptotics(config);
        if (name == "determinants") return cmd_determinants(config);
        return {ExitCode::invalid_parameters, {}, "unknown command '" + name + "'"};
    } catch (const InvalidParameter& e) {
        return {ExitCode::invalid_parameters, {}, e.what()};
    } catch (const NumericalFailure& e) {
        return {ExitCode::numerical_failure, {}, e.what()};
    } catch (const SeriesTruncationError& e) {
        return {ExitCode::numerical_failure, {}, e.what()};
    }
}

}  // namespace hillpt::app
