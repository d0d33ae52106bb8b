#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

#include "hillpt/app.hpp"
#include "hillpt/error.hpp"
#include "hillpt/io.hpp"

namespace hillpt::app {

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            const auto dash = item.find('-', 1);
            if (dash == std::string::npos) {
                out.push_back(std::stoi(item));
            } else {
                const int lo = std::stoi(item.substr(0, dash));
                const int hi = std::stoi(item.substr(dash + 1));
                if (hi < lo) throw InvalidParameter("descending range " + item);
                for (int n = lo; n <= hi; ++n) out.push_back(n);
            }
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const InvalidParameter*>(&e)) throw;
            throw InvalidParameter("cannot parse N list entry '" + item + "'");
        }
    }
    if (out.empty()) throw InvalidParameter("empty N list");
    return out;
}

namespace {

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw InvalidParameter("unknown output format '" + text + "' (expected csv or json)");
}

template <typename T>
void take(const boost::property_tree::ptree& tree, const char* key, T& target) {
    if (tree.get_child_optional(key)) target = tree.get<T>(key);
}

}  // namespace

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot read config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            io::merge_json(nlohmann::json::parse(text), base.params, base.solver);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidParameter("bad JSON config " + path + ": " + e.what());
        }
        return base;
    }

    boost::property_tree::ptree tree;
    try {
        std::istringstream stream(text);
        boost::property_tree::ini_parser::read_ini(stream, tree);
        take(tree, "params.a", base.params.a);
        take(tree, "params.beta", base.params.beta);
        take(tree, "params.c", base.params.c);
        take(tree, "params.delta", base.params.delta);
        take(tree, "solver.s", base.solver.s);
        take(tree, "solver.n_trunc", base.solver.n_trunc);
        take(tree, "solver.tol_imag", base.solver.tol_imag);
        take(tree, "solver.tol_residual", base.solver.tol_residual);
        take(tree, "solver.max_qr_sweeps_per_eigenvalue", base.solver.max_qr_sweeps_per_eigenvalue);
        take(tree, "solver.seed", base.solver.seed);
        take(tree, "run.levels", base.levels);
        if (auto v = tree.get_optional<std::string>("run.n_list")) base.n_list = parse_n_list(*v);
        if (auto v = tree.get_optional<std::string>("run.format")) base.format = parse_format(*v);
        take(tree, "run.paper_style", base.paper_style);
        take(tree, "run.level", base.level);
        take(tree, "run.x_min", base.x_min);
        take(tree, "run.x_max", base.x_max);
        take(tree, "run.x_points", base.x_points);
        take(tree, "run.energy", base.energy);
        take(tree, "run.h0", base.h0);
        take(tree, "run.h1", base.h1);
        take(tree, "run.n_lo", base.n_lo);
        take(tree, "run.n_hi", base.n_hi);
        take(tree, "run.n_max", base.n_max);
        take(tree, "run.fd_points", base.fd_points);
        take(tree, "run.fd_x_max", base.fd_x_max);
        take(tree, "run.verify_levels", base.verify_levels);
        take(tree, "run.s_alt", base.s_alt);
        take(tree, "run.s_check_n", base.s_check_n);
        take(tree, "run.s_check_levels", base.s_check_levels);
        take(tree, "run.cross_tolerance", base.cross_tolerance);
        take(tree, "run.s_tolerance", base.s_tolerance);
        if (auto v = tree.get_optional<std::string>("run.out")) base.out = *v;
    } catch (const boost::property_tree::ptree_error& e) {
        throw InvalidParameter("bad config file " + path + ": " + e.what());
    }
    return base;
}

}  // namespace hillpt::app
