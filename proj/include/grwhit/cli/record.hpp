#ifndef GRWHIT_CLI_RECORD_HPP
#define GRWHIT_CLI_RECORD_HPP

#include "../log_complex.hpp"
#include "../spectral.hpp"
#include "../version.hpp"
#include "config.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grwhit::cli {

inline constexpr int schema_version = 1;

/// re/im are emitted only when |log_mag| < this.
inline constexpr double representable_log_mag = 700.0;

struct ValueEntry {
    LogComplex value;
    double error_estimate = 0.0;

    friend bool operator==(const ValueEntry&, const ValueEntry&) = default;
};

struct InputEcho {
    int m = 1, N = 2;
    std::vector<double> lambda;
    double hbar = 1.0;
    double x = 0.0;

    static InputEcho of(const SpectralData& s) { return {s.m, s.N, s.lambda, s.hbar.value(), s.x}; }
    friend bool operator==(const InputEcho&, const InputEcho&) = default;
};

struct ErrorInfo {
    std::string kind; ///< config | pole | domain | genericity | convergence | numerical
    std::string message;

    friend bool operator==(const ErrorInfo&, const ErrorInfo&) = default;
};

/// One evaluation (eval / asympt / one sweep row / one xval instance).
struct ResultRecord {
    std::string command;
    std::string method;
    InputEcho inputs;
    std::optional<ValueEntry> value;      ///< primary value (mb for method=both)
    std::optional<ValueEntry> residue;    ///< second value when method=both
    std::optional<double> discrepancy;    ///< relative difference of the two methods
    std::optional<ValueEntry> asymptotic; ///< leading x -> -inf term (sweep, asympt)
    std::optional<double> ratio;          ///< value / asymptotic
    std::map<std::string, double> diagnostics;
    std::optional<ErrorInfo> error;
    double wall_time = 0.0;
    std::string library_version = grwhit::version;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

namespace detail {

inline json log_mag_json(double lm) { return std::isinf(lm) && lm < 0 ? json(nullptr) : json(lm); }

inline json value_json(const ValueEntry& v)
{
    json j;
    j["log_mag"] = log_mag_json(v.value.log_mag);
    j["phase"] = v.value.phase;
    if (v.value.is_zero() || std::abs(v.value.log_mag) < representable_log_mag) {
        const cplx z = v.value.value();
        j["re"] = z.real();
        j["im"] = z.imag();
    }
    j["error_estimate"] = v.error_estimate;
    return j;
}

inline ValueEntry value_from_json(const json& j)
{
    ValueEntry v;
    const json& lm = j.at("log_mag");
    v.value.log_mag = lm.is_null() ? -std::numeric_limits<double>::infinity() : lm.get<double>();
    v.value.phase = j.at("phase").get<double>();
    v.error_estimate = j.at("error_estimate").get<double>();
    return v;
}

} // namespace detail

inline json to_json(const ResultRecord& r)
{
    json j;
    j["schema"] = schema_version;
    j["command"] = r.command;
    j["method"] = r.method;
    j["library_version"] = r.library_version;
    j["inputs"] = {{"m", r.inputs.m},
                   {"N", r.inputs.N},
                   {"lambda", r.inputs.lambda},
                   {"hbar", r.inputs.hbar},
                   {"x", r.inputs.x}};
    if (r.value)
        j["value"] = detail::value_json(*r.value);
    if (r.residue)
        j["residue"] = detail::value_json(*r.residue);
    if (r.discrepancy)
        j["discrepancy"] = *r.discrepancy;
    if (r.asymptotic)
        j["asymptotic"] = detail::value_json(*r.asymptotic);
    if (r.ratio)
        j["ratio"] = *r.ratio;
    if (!r.diagnostics.empty())
        j["diagnostics"] = r.diagnostics;
    if (r.error)
        j["error"] = {{"kind", r.error->kind}, {"message", r.error->message}};
    j["wall_time"] = r.wall_time;
    return j;
}

inline ResultRecord record_from_json(const json& j)
{
    try {
        if (j.at("schema").get<int>() != schema_version)
            throw config_error("unsupported record schema " + j.at("schema").dump());
        ResultRecord r;
        r.command = j.at("command").get<std::string>();
        r.method = j.at("method").get<std::string>();
        r.library_version = j.at("library_version").get<std::string>();
        const json& in = j.at("inputs");
        r.inputs = {in.at("m").get<int>(), in.at("N").get<int>(), in.at("lambda").get<std::vector<double>>(),
                    in.at("hbar").get<double>(), in.at("x").get<double>()};
        if (j.contains("value"))
            r.value = detail::value_from_json(j.at("value"));
        if (j.contains("residue"))
            r.residue = detail::value_from_json(j.at("residue"));
        if (j.contains("discrepancy"))
            r.discrepancy = j.at("discrepancy").get<double>();
        if (j.contains("asymptotic"))
            r.asymptotic = detail::value_from_json(j.at("asymptotic"));
        if (j.contains("ratio"))
            r.ratio = j.at("ratio").get<double>();
        if (j.contains("diagnostics"))
            r.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
        if (j.contains("error"))
            r.error = ErrorInfo{j.at("error").at("kind").get<std::string>(),
                                j.at("error").at("message").get<std::string>()};
        r.wall_time = j.at("wall_time").get<double>();
        return r;
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed result record: ") + e.what());
    }
}

inline std::string format_record(const ResultRecord& r) { return to_json(r).dump(2); }
inline ResultRecord parse_record(const std::string& text) { return record_from_json(json::parse(text)); }

} // namespace grwhit::cli

#endif // GRWHIT_CLI_RECORD_HPP
