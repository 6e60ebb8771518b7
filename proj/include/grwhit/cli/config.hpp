#ifndef GRWHIT_CLI_CONFIG_HPP
#define GRWHIT_CLI_CONFIG_HPP

#include "../errors.hpp"
#include "../residue.hpp"
#include "../spectral.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace grwhit::cli {

using json = nlohmann::json;

enum class Command { eval, asympt, verify, sweep, xval };
enum class Method { mb, residue, both };
enum class Format { json, csv };

inline constexpr std::uint64_t default_seed = 20240611;

inline std::string to_string(Command c)
{
    switch (c) {
    case Command::eval: return "eval";
    case Command::asympt: return "asympt";
    case Command::verify: return "verify";
    case Command::sweep: return "sweep";
    case Command::xval: return "xval";
    }
    return "?";
}

inline std::string to_string(Method m)
{
    switch (m) {
    case Method::mb: return "mb";
    case Method::residue: return "residue";
    case Method::both: return "both";
    }
    return "?";
}

inline std::string to_string(Format f) { return f == Format::json ? "json" : "csv"; }

inline Command parse_command(const std::string& s)
{
    if (s == "eval") return Command::eval;
    if (s == "asympt") return Command::asympt;
    if (s == "verify") return Command::verify;
    if (s == "sweep") return Command::sweep;
    if (s == "xval") return Command::xval;
    throw config_error("unknown command '" + s + "' (expected eval|asympt|verify|sweep|xval)");
}

inline Method parse_method(const std::string& s)
{
    if (s == "mb") return Method::mb;
    if (s == "residue") return Method::residue;
    if (s == "both") return Method::both;
    throw config_error("unknown method '" + s + "' (expected mb|residue|both)");
}

inline Format parse_format(const std::string& s)
{
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw config_error("unknown output format '" + s + "' (expected json|csv)");
}

/// Fixed-contour overrides; unset fields come from auto_contour.
struct ContourOverrides {
    std::optional<double> epsilon;
    std::optional<double> half_extent;
    std::optional<int> nodes_per_dim;
    double tol = 1e-10; ///< auto_contour tolerance
};

/**
 * Everything a run needs. Defaults:
 *   command eval, m = 1, N = 2, lambda = (0, 0), hbar = 1, x = 0, method mb,
 *   contour tol 1e-10, series max_order 40 / tol 1e-15, seed 20240611,
 *   output to stdout as json, empty x_grid, samples 20, perturb 0, threads 0 (all cores).
 */
struct RunConfig {
    Command command = Command::eval;
    SpectralData spectral;
    Method method = Method::mb;
    ContourOverrides contour;
    SeriesConfig series;
    std::uint64_t seed = default_seed;
    std::string output_path;
    Format output_format = Format::json;
    std::vector<double> x_grid;
    int samples = 20;
    double perturb = 0.0;
    unsigned threads = 0;
};

namespace detail {

inline void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object())
        throw config_error(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("unknown config key '" + (where.empty() ? "" : where + ".") + it.key() + "'");
}

template <class T>
T get_as(const json& j, const std::string& key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error("config key '" + key + "': " + e.what());
    }
}

inline double get_number(const json& j, const std::string& key)
{
    if (!j.at(key).is_number())
        throw config_error("config key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline int get_int(const json& j, const std::string& key)
{
    if (!j.at(key).is_number_integer())
        throw config_error("config key '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

} // namespace detail

/// Overlay a JSON config object onto cfg. Unknown keys are rejected at every level.
inline void apply_json(RunConfig& cfg, const json& j)
{
    using detail::get_int;
    using detail::get_number;
    detail::reject_unknown(j,
                           {"command", "spectral", "method", "contour", "series", "seed", "output_path",
                            "output_format", "x_grid", "samples", "perturb", "threads"},
                           "");
    if (j.contains("command"))
        cfg.command = parse_command(detail::get_as<std::string>(j, "command"));
    if (j.contains("spectral")) {
        const json& s = j.at("spectral");
        detail::reject_unknown(s, {"m", "N", "lambda", "hbar", "x"}, "spectral");
        if (s.contains("m"))
            cfg.spectral.m = get_int(s, "m");
        if (s.contains("N"))
            cfg.spectral.N = get_int(s, "N");
        if (s.contains("lambda"))
            cfg.spectral.lambda = detail::get_as<std::vector<double>>(s, "lambda");
        if (s.contains("hbar"))
            cfg.spectral.hbar = HbarParam{get_number(s, "hbar")};
        if (s.contains("x"))
            cfg.spectral.x = get_number(s, "x");
    }
    if (j.contains("method"))
        cfg.method = parse_method(detail::get_as<std::string>(j, "method"));
    if (j.contains("contour")) {
        const json& c = j.at("contour");
        detail::reject_unknown(c, {"epsilon", "half_extent", "nodes_per_dim", "tol"}, "contour");
        if (c.contains("epsilon"))
            cfg.contour.epsilon = get_number(c, "epsilon");
        if (c.contains("half_extent"))
            cfg.contour.half_extent = get_number(c, "half_extent");
        if (c.contains("nodes_per_dim"))
            cfg.contour.nodes_per_dim = get_int(c, "nodes_per_dim");
        if (c.contains("tol"))
            cfg.contour.tol = get_number(c, "tol");
    }
    if (j.contains("series")) {
        const json& s = j.at("series");
        detail::reject_unknown(s, {"max_order", "tol"}, "series");
        if (s.contains("max_order"))
            cfg.series.max_order = get_int(s, "max_order");
        if (s.contains("tol"))
            cfg.series.tol = get_number(s, "tol");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw config_error("config key 'seed' must be a non-negative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output_path"))
        cfg.output_path = detail::get_as<std::string>(j, "output_path");
    if (j.contains("output_format"))
        cfg.output_format = parse_format(detail::get_as<std::string>(j, "output_format"));
    if (j.contains("x_grid"))
        cfg.x_grid = detail::get_as<std::vector<double>>(j, "x_grid");
    if (j.contains("samples"))
        cfg.samples = get_int(j, "samples");
    if (j.contains("perturb"))
        cfg.perturb = get_number(j, "perturb");
    if (j.contains("threads")) {
        const int t = get_int(j, "threads");
        if (t < 0)
            throw config_error("config key 'threads' must be >= 0");
        cfg.threads = static_cast<unsigned>(t);
    }
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {})
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    apply_json(base, j);
    return base;
}

/// Cross-field checks that do not depend on the command's numerics.
inline void validate(const RunConfig& cfg)
{
    if (cfg.samples < 1)
        throw config_error("samples must be >= 1");
    if (cfg.output_format == Format::csv && cfg.command != Command::sweep)
        throw config_error("csv output is only available for sweep");
    if (!(cfg.contour.tol > 0.0))
        throw config_error("contour tol must be > 0");
    cfg.series.validate();
}

/// "0.5,-1,2" -> {0.5, -1, 2}
inline std::vector<double> parse_number_list(const std::string& text, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw config_error(what + ": cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

} // namespace grwhit::cli

#endif // GRWHIT_CLI_CONFIG_HPP
