#include "hillpt/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hillpt/error.hpp"

namespace hillpt::io {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double round_significant(double value, int digits) {
    if (!std::isfinite(value) || value == 0.0) return value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

void write_output(const std::string& path, std::string_view content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target);
}

nlohmann::json to_json(const OscillatorParams& params) {
    return {{"a", round_significant(params.a)},
            {"beta", round_significant(params.beta)},
            {"c", round_significant(params.c)},
            {"delta", round_significant(params.delta)}};
}

nlohmann::json to_json(const SolverConfig& config) {
    return {{"s", round_significant(config.s)},
            {"n_trunc", config.n_trunc},
            {"tol_imag", round_significant(config.tol_imag)},
            {"tol_residual", round_significant(config.tol_residual)},
            {"max_qr_sweeps_per_eigenvalue", config.max_qr_sweeps_per_eigenvalue},
            {"seed", config.seed}};
}

void merge_json(const nlohmann::json& doc, OscillatorParams& params, SolverConfig& config) {
    if (!doc.is_object()) throw InvalidParameter("JSON configuration must be an object");
    if (auto it = doc.find("params"); it != doc.end()) {
        params.a = it->value("a", params.a);
        params.beta = it->value("beta", params.beta);
        params.c = it->value("c", params.c);
        params.delta = it->value("delta", params.delta);
    }
    if (auto it = doc.find("solver"); it != doc.end()) {
        config.s = it->value("s", config.s);
        config.n_trunc = it->value("n_trunc", config.n_trunc);
        config.tol_imag = it->value("tol_imag", config.tol_imag);
        config.tol_residual = it->value("tol_residual", config.tol_residual);
        config.max_qr_sweeps_per_eigenvalue =
            it->value("max_qr_sweeps_per_eigenvalue", config.max_qr_sweeps_per_eigenvalue);
        config.seed = it->value("seed", config.seed);
    }
}

}  // namespace hillpt::io
