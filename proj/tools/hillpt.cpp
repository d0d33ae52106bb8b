// hillpt: spectrum and wavefunctions of p^2 + a x^4 + i beta x^3 + c x^2 + i delta x.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hillpt/app.hpp"
#include "hillpt/io.hpp"

namespace {

using hillpt::app::ExitCode;
using hillpt::app::RunConfig;

struct Flags {
    std::optional<double> a, beta, c, delta, s;
    std::optional<int> n_trunc, levels, seed;
    std::optional<std::string> config, out, format, n_list;
    bool paper_style = false;

    std::optional<int> level, x_points, n_lo, n_hi, n_max, fd_points;
    std::optional<double> x_min, x_max, energy, h0, h1, fd_x_max;
};

void add_common(CLI::App& app, Flags& f) {
    app.add_option("--a", f.a, "quartic coefficient (a > 0)");
    app.add_option("--beta", f.beta, "coefficient of i x^3");
    app.add_option("--c", f.c, "coefficient of x^2");
    app.add_option("--delta", f.delta, "coefficient of i x");
    app.add_option("--s", f.s, "Gaussian exponent of the series factor");
    app.add_option("--n-trunc", f.n_trunc, "matrix truncation N");
    app.add_option("--levels", f.levels, "number of levels reported");
    app.add_option("--config", f.config, "INI or JSON configuration file");
    app.add_option("--out", f.out, "output file (default stdout)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--paper-style", f.paper_style, "three-decimal energies");
    app.add_option("--seed", f.seed, "seed recorded in the configuration");
}

RunConfig merge(const Flags& f) {
    RunConfig cfg;
    if (f.config) cfg = hillpt::app::load_config_file(*f.config, cfg);
    auto set = [](auto& dst, const auto& src) {
        if (src) dst = *src;
    };
    set(cfg.params.a, f.a);
    set(cfg.params.beta, f.beta);
    set(cfg.params.c, f.c);
    set(cfg.params.delta, f.delta);
    set(cfg.solver.s, f.s);
    set(cfg.solver.n_trunc, f.n_trunc);
    set(cfg.levels, f.levels);
    set(cfg.verify_levels, f.levels);
    if (f.seed) cfg.solver.seed = static_cast<unsigned>(*f.seed);
    set(cfg.out, f.out);
    if (f.format) cfg.format = *f.format == "json" ? hillpt::app::OutputFormat::json : hillpt::app::OutputFormat::csv;
    if (f.paper_style) cfg.paper_style = true;
    if (f.n_list) cfg.n_list = hillpt::app::parse_n_list(*f.n_list);
    set(cfg.level, f.level);
    set(cfg.x_min, f.x_min);
    set(cfg.x_max, f.x_max);
    set(cfg.x_points, f.x_points);
    set(cfg.energy, f.energy);
    set(cfg.h0, f.h0);
    set(cfg.h1, f.h1);
    set(cfg.n_lo, f.n_lo);
    set(cfg.n_hi, f.n_hi);
    set(cfg.n_max, f.n_max);
    set(cfg.fd_points, f.fd_points);
    set(cfg.fd_x_max, f.fd_x_max);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hill-determinant solver for a PT-symmetric anharmonic oscillator"};
    app.require_subcommand(1);
    Flags f;

    auto* spectrum = app.add_subcommand("spectrum", "lowest real eigenvalues at one truncation");
    auto* converge = app.add_subcommand("converge", "eigenvalues over a list of truncations");
    auto* wavefunction = app.add_subcommand("wavefunction", "series wavefunction of one level on a grid");
    auto* verify = app.add_subcommand("verify", "cross-check Hill, shooting and finite differences");
    auto* asymptotics = app.add_subcommand("asymptotics", "Birkhoff exponents and coefficient growth");
    auto* determinants = app.add_subcommand("determinants", "Taylor coefficients via determinants vs recursion");
    for (auto* sub : {spectrum, converge, wavefunction, verify, asymptotics, determinants}) add_common(*sub, f);

    converge->add_option("--n-list", f.n_list, "truncations, e.g. 5-10,15,20-25");
    wavefunction->add_option("--level", f.level, "level index k");
    wavefunction->add_option("--x-min", f.x_min, "grid start");
    wavefunction->add_option("--x-max", f.x_max, "grid end");
    wavefunction->add_option("--x-points", f.x_points, "grid points");
    for (auto* sub : {asymptotics, determinants}) {
        sub->add_option("--energy", f.energy, "trial energy");
    }
    asymptotics->add_option("--h0", f.h0, "initial h_0");
    asymptotics->add_option("--h1", f.h1, "initial h_1");
    asymptotics->add_option("--n-lo", f.n_lo, "first index of the growth fit");
    asymptotics->add_option("--n-hi", f.n_hi, "last index of the growth fit");
    determinants->add_option("--n-max", f.n_max, "largest coefficient index");
    verify->add_option("--fd-points", f.fd_points, "finite-difference interior points");
    verify->add_option("--fd-x-max", f.fd_x_max, "finite-difference half width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::invalid_parameters);
    }

    std::string name;
    for (auto* sub : app.get_subcommands()) name = sub->get_name();

    RunConfig cfg;
    try {
        cfg = merge(f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid_parameters);
    }

    const auto result = hillpt::app::run_command(name, cfg);
    if (!result.message.empty()) std::cerr << (result.code == ExitCode::ok ? "warning: " : "error: ") << result.message << '\n';
    if (!result.content.empty()) {
        try {
            hillpt::io::write_output(cfg.out, result.content);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return static_cast<int>(ExitCode::numerical_failure);
        }
    }
    return static_cast<int>(result.code);
}
