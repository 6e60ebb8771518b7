#ifndef GRWHIT_CLI_COMMANDS_HPP
#define GRWHIT_CLI_COMMANDS_HPP

#include "../asymptotics.hpp"
#include "../gz.hpp"
#include "../mb_quadrature.hpp"
#include "../residue.hpp"
#include "config.hpp"
#include "record.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

namespace grwhit::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numerical = 3, exit_verification = 4 };

struct CommandOutput {
    int exit_code = exit_ok;
    std::string text;
};

/// Relative agreement threshold used by xval on top of the methods' own error bars.
inline constexpr double xval_tol = 1e-6;

namespace detail {

inline ErrorInfo classify(const std::exception& e)
{
    if (dynamic_cast<const config_error*>(&e))
        return {"config", e.what()};
    if (dynamic_cast<const pole_error*>(&e))
        return {"pole", e.what()};
    if (dynamic_cast<const domain_error*>(&e))
        return {"domain", e.what()};
    if (dynamic_cast<const genericity_error*>(&e))
        return {"genericity", e.what()};
    if (dynamic_cast<const convergence_error*>(&e))
        return {"convergence", e.what()};
    return {"numerical", e.what()};
}

inline int exit_for(const ErrorInfo& e) { return e.kind == "config" ? exit_config : exit_numerical; }

inline ContourConfig contour_for(const SpectralData& s, const RunConfig& cfg)
{
    ContourConfig c;
    const auto& o = cfg.contour;
    if (o.epsilon && o.half_extent && o.nodes_per_dim)
        c = {*o.epsilon, *o.half_extent, *o.nodes_per_dim};
    else
        c = auto_contour(s, o.tol);
    if (o.epsilon)
        c.epsilon = *o.epsilon;
    if (o.half_extent)
        c.half_extent = *o.half_extent;
    if (o.nodes_per_dim)
        c.nodes_per_dim = *o.nodes_per_dim;
    c.validate(s);
    return c;
}

inline ValueEntry run_mb(const SpectralData& s, const RunConfig& cfg, std::map<std::string, double>& diag)
{
    const ContourConfig c = contour_for(s, cfg);
    const MBResult r = eval_mb(s, c, {cfg.contour.tol, cfg.threads});
    diag["mb_epsilon"] = c.epsilon;
    diag["mb_half_extent"] = c.half_extent;
    diag["mb_nodes_per_dim"] = c.nodes_per_dim;
    diag["mb_nodes_evaluated"] = static_cast<double>(r.nodes_evaluated);
    diag["mb_truncation_bound"] = r.truncation_bound;
    diag["mb_discretization_estimate"] = r.discretization_estimate;
    diag["mb_roundoff_estimate"] = r.roundoff_estimate;
    diag["mb_converged"] = r.converged ? 1.0 : 0.0;
    return {r.value, r.error_estimate};
}

inline ValueEntry run_residue(const SpectralData& s, const RunConfig& cfg, std::map<std::string, double>& diag)
{
    const SeriesResult r = eval_residue_series(s, cfg.series);
    diag["residue_orders_used"] = r.orders_used;
    diag["residue_terms"] = static_cast<double>(r.terms);
    diag["residue_tail_estimate"] = r.tail_estimate;
    return {r.value, r.tail_estimate};
}

inline double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Evaluate one instance with cfg.method; failures become the record's error field.
inline ResultRecord evaluate(const SpectralData& s, const RunConfig& cfg, const std::string& command,
                             bool with_asymptotic)
{
    const auto t0 = std::chrono::steady_clock::now();
    ResultRecord r;
    r.command = command;
    r.method = to_string(cfg.method);
    r.inputs = InputEcho::of(s);
    try {
        s.validate();
        switch (cfg.method) {
        case Method::mb: r.value = run_mb(s, cfg, r.diagnostics); break;
        case Method::residue: r.value = run_residue(s, cfg, r.diagnostics); break;
        case Method::both:
            r.value = run_mb(s, cfg, r.diagnostics);
            r.residue = run_residue(s, cfg, r.diagnostics);
            r.discrepancy = relative_difference(r.value->value, r.residue->value);
            break;
        }
        if (with_asymptotic) {
            r.asymptotic = ValueEntry{leading_asymptotic(s), 0.0};
            const LogComplex q = r.value->value / r.asymptotic->value;
            r.ratio = q.value().real();
        }
    } catch (const std::exception& e) {
        r.error = classify(e);
    }
    r.wall_time = seconds_since(t0);
    return r;
}

inline json suite_json(const gz::SuiteResult& s)
{
    return {{"name", s.name},
            {"pass", s.pass},
            {"max_deviation", s.max_deviation},
            {"checks", s.checks},
            {"tolerance", s.tolerance}};
}

} // namespace detail

inline CommandOutput error_output(const RunConfig& cfg, const ErrorInfo& e)
{
    json j;
    j["schema"] = schema_version;
    j["command"] = to_string(cfg.command);
    j["library_version"] = grwhit::version;
    j["error"] = {{"kind", e.kind}, {"message", e.message}};
    return {detail::exit_for(e), j.dump(2)};
}

inline CommandOutput cmd_eval(const RunConfig& cfg)
{
    const ResultRecord r = detail::evaluate(cfg.spectral, cfg, "eval", false);
    return {r.error ? detail::exit_for(*r.error) : exit_ok, format_record(r)};
}

/// Leading x -> -inf term, plus the value by cfg.method and their ratio when it can be evaluated.
inline CommandOutput cmd_asympt(const RunConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    ResultRecord r;
    try {
        const auto lead = leading_asymptotic(cfg.spectral);
        r = detail::evaluate(cfg.spectral, cfg, "asympt", true);
        r.asymptotic = ValueEntry{lead, 0.0};
        r.diagnostics["cosets"] = static_cast<double>(enumerate_cosets(cfg.spectral.m, cfg.spectral.N).size());
    } catch (const std::exception& e) {
        r.command = "asympt";
        r.method = to_string(cfg.method);
        r.inputs = InputEcho::of(cfg.spectral);
        r.error = detail::classify(e);
    }
    r.wall_time = detail::seconds_since(t0);
    const bool ok = !r.error || r.asymptotic;
    return {ok ? exit_ok : detail::exit_for(*r.error), format_record(r)};
}

/**
 * Sweep over cfg.x_grid; every row carries value, leading asymptotic and
 * their ratio, or its own error. Row errors do not stop the sweep.
 */
inline CommandOutput cmd_sweep(const RunConfig& cfg)
{
    std::vector<ResultRecord> rows;
    for (double x : cfg.x_grid) {
        SpectralData s = cfg.spectral;
        s.x = x;
        rows.push_back(detail::evaluate(s, cfg, "sweep", true));
    }
    if (cfg.output_format == Format::csv) {
        std::string out = "x,method,log_mag,phase,re,im,error_estimate,asymptotic_log_mag,asymptotic_phase,ratio,error\n";
        char buf[64];
        auto num = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return std::string(buf);
        };
        for (const auto& r : rows) {
            out += num(r.inputs.x) + "," + r.method + ",";
            if (r.value) {
                const auto& v = r.value->value;
                out += (v.is_zero() ? std::string("-inf") : num(v.log_mag)) + "," + num(v.phase) + ",";
                if (v.representable())
                    out += num(v.value().real()) + "," + num(v.value().imag()) + ",";
                else
                    out += ",,";
                out += num(r.value->error_estimate) + ",";
            } else {
                out += ",,,,,";
            }
            if (r.asymptotic)
                out += num(r.asymptotic->value.log_mag) + "," + num(r.asymptotic->value.phase) + ",";
            else
                out += ",,";
            out += (r.ratio ? num(*r.ratio) : std::string()) + ",";
            if (r.error) {
                std::string msg = r.error->kind + ": " + r.error->message;
                for (char& ch : msg)
                    if (ch == '"')
                        ch = '\'';
                out += "\"" + msg + "\"";
            }
            out += "\n";
        }
        return {exit_ok, out};
    }
    json j;
    j["schema"] = schema_version;
    j["command"] = "sweep";
    j["library_version"] = grwhit::version;
    j["rows"] = json::array();
    for (const auto& r : rows)
        j["rows"].push_back(to_json(r));
    return {exit_ok, j.dump(2)};
}

/**
 * Cross-validation of quadrature against the residue series, at cfg.spectral.x
 * or over cfg.x_grid. An instance agrees when the discrepancy is within the
 * combined error bars or xval_tol, whichever is larger.
 */
inline CommandOutput cmd_xval(const RunConfig& cfg)
{
    RunConfig c = cfg;
    c.method = Method::both;
    std::vector<double> xs = cfg.x_grid.empty() ? std::vector<double>{cfg.spectral.x} : cfg.x_grid;
    json j;
    j["schema"] = schema_version;
    j["command"] = "xval";
    j["library_version"] = grwhit::version;
    j["tolerance"] = xval_tol;
    j["rows"] = json::array();
    bool all = true;
    int code = exit_ok;
    for (double x : xs) {
        SpectralData s = cfg.spectral;
        s.x = x;
        const ResultRecord r = detail::evaluate(s, c, "xval", false);
        json row = to_json(r);
        if (r.error) {
            all = false;
            code = std::max(code, detail::exit_for(*r.error));
        } else {
            const double bars = r.value->error_estimate + r.residue->error_estimate;
            const bool agree = *r.discrepancy <= std::max(bars, xval_tol);
            row["combined_error"] = bars;
            row["agree"] = agree;
            all = all && agree;
        }
        j["rows"].push_back(row);
    }
    j["pass"] = all;
    if (code == exit_ok && !all)
        code = exit_verification;
    return {code, j.dump(2)};
}

/**
 * All GZ suites for (m, N) at cfg.seed: partial-fraction identities (n <= 8),
 * gl relations and the E_{n,N} closed form, the left vector and the right-vector
 * support relations (the last two need m >= 2). No timing in the report, so
 * equal configs give byte-identical output.
 */
inline json verify_report(const RunConfig& cfg)
{
    const int m = cfg.spectral.m, N = cfg.spectral.N;
    const double hb = cfg.spectral.hbar.value();
    if (m < 1 || m >= N)
        throw config_error("verify: require 1 <= m < N");
    json j;
    j["schema"] = schema_version;
    j["command"] = "verify";
    j["library_version"] = grwhit::version;
    j["inputs"] = {{"m", m}, {"N", N}, {"hbar", hb}, {"seed", cfg.seed}, {"samples", cfg.samples},
                   {"perturb", cfg.perturb}};
    json suites = json::array();
    bool all = true;

    for (const auto& s : gz::combin_suite(8, cfg.samples, cfg.seed)) {
        suites.push_back(detail::suite_json(s));
        all = all && s.pass;
    }
    for (const auto& s : gz::algebra_suite(N, cfg.samples, cfg.samples, cfg.seed, hb)) {
        suites.push_back(detail::suite_json(s));
        all = all && s.pass;
    }

    if (m >= 2) {
        const auto L = gz::verify_left_whittaker(m, N, cfg.samples, cfg.seed, hb, cfg.perturb);
        json rel = json::array();
        for (const auto& r : L.relations)
            rel.push_back({{"k", r.k},
                           {"resolved", {r.resolved.first, r.resolved.second}},
                           {"sign", r.sign},
                           {"max_deviation", r.max_deviation},
                           {"pass", r.pass}});
        suites.push_back({{"name", "left_whittaker"},
                          {"pass", L.pass},
                          {"max_deviation", L.max_deviation()},
                          {"tolerance", gz::whittaker_tol},
                          {"relations", rel}});
        all = all && L.pass;

        const auto R = gz::verify_right_support_relations(m, N, cfg.samples, cfg.seed, hb);
        json checks = json::array();
        for (const auto& c : R.checks)
            checks.push_back({{"name", c.name},
                              {"max_deviation", c.max_deviation},
                              {"evaluations", c.evaluations},
                              {"pass", c.pass}});
        suites.push_back({{"name", "right_support"},
                          {"pass", R.pass},
                          {"max_deviation", R.max_deviation()},
                          {"tolerance", gz::whittaker_tol},
                          {"eigen_sign", R.eigen_sign},
                          {"sign_matches_parity", R.sign_matches_parity},
                          {"checks", checks}});
        all = all && R.pass;
    } else {
        for (const char* name : {"left_whittaker", "right_support"})
            suites.push_back({{"name", name}, {"pass", true}, {"skipped", true}, {"reason", "requires m >= 2"}});
    }
    j["suites"] = suites;
    j["pass"] = all;
    return j;
}

inline CommandOutput cmd_verify(const RunConfig& cfg)
{
    const json j = verify_report(cfg);
    return {j.at("pass").get<bool>() ? exit_ok : exit_verification, j.dump(2)};
}

/// Dispatch on cfg.command; exceptions become structured error output.
inline CommandOutput run(const RunConfig& cfg)
{
    try {
        validate(cfg);
        switch (cfg.command) {
        case Command::eval: return cmd_eval(cfg);
        case Command::asympt: return cmd_asympt(cfg);
        case Command::verify: return cmd_verify(cfg);
        case Command::sweep: return cmd_sweep(cfg);
        case Command::xval: return cmd_xval(cfg);
        }
    } catch (const std::exception& e) {
        return error_output(cfg, detail::classify(e));
    }
    return error_output(cfg, {"config", "unhandled command"});
}

} // namespace grwhit::cli

#endif // GRWHIT_CLI_COMMANDS_HPP
