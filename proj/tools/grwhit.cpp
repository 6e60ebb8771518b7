// grwhit: evaluate and cross-check the parabolic Whittaker function from the command line.
//
//   grwhit eval   --m 2 --N 4 --lambda 0.9,0.3,-0.2,-0.8 --x -4 --method both
//   grwhit sweep  --m 1 --N 2 --lambda 0.3,-0.4 --x-grid -2,-4,-6 --format csv
//   grwhit verify --m 2 --N 4 --seed 7
//
// Exit status: 0 ok, 2 configuration error, 3 numerical-domain error, 4 verification failure.

#include "grwhit/cli/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Flags {
    std::optional<int> m, N, samples, nodes, max_order;
    std::optional<std::string> lambda, method, config, out, format, x_grid;
    std::optional<double> hbar, x, perturb, epsilon, half_extent, contour_tol, series_tol;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

void add_flags(CLI::App* sub, Flags& f)
{
    sub->add_option("--m", f.m, "Grassmannian rank m (1 <= m < N)");
    sub->add_option("--N", f.N, "N");
    sub->add_option("--lambda", f.lambda, "comma-separated lambda_1..lambda_N");
    sub->add_option("--hbar", f.hbar, "deformation parameter (> 0)");
    sub->add_option("--x", f.x, "argument x");
    sub->add_option("--method", f.method, "mb | residue | both");
    sub->add_option("--seed", f.seed, "RNG seed for verify");
    sub->add_option("--config", f.config, "JSON config file (CLI flags take precedence)");
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--format", f.format, "json | csv (csv for sweep only)");
    sub->add_option("--x-grid", f.x_grid, "comma-separated x values for sweep / xval");
    sub->add_option("--samples", f.samples, "random samples per verify check");
    sub->add_option("--perturb", f.perturb, "offset added to one left-vector gamma argument (sensitivity test)");
    sub->add_option("--epsilon", f.epsilon, "contour offset override");
    sub->add_option("--half-extent", f.half_extent, "contour half extent T override");
    sub->add_option("--nodes", f.nodes, "trapezoid nodes per dimension override");
    sub->add_option("--contour-tol", f.contour_tol, "auto_contour tolerance");
    sub->add_option("--max-order", f.max_order, "residue series maximal order");
    sub->add_option("--series-tol", f.series_tol, "residue series stopping tolerance");
    sub->add_option("--threads", f.threads, "quadrature worker threads (0: all cores)");
}

grwhit::cli::RunConfig build_config(const std::string& command, const Flags& f)
{
    using namespace grwhit::cli;
    RunConfig cfg;
    if (f.config)
        cfg = load_config_file(*f.config, cfg);
    cfg.command = parse_command(command);
    auto& s = cfg.spectral;
    if (f.m) s.m = *f.m;
    if (f.N) s.N = *f.N;
    if (f.lambda) s.lambda = parse_number_list(*f.lambda, "--lambda");
    if (f.hbar) s.hbar = grwhit::HbarParam{*f.hbar};
    if (f.x) s.x = *f.x;
    if (f.method) cfg.method = parse_method(*f.method);
    if (f.seed) cfg.seed = *f.seed;
    if (f.out) cfg.output_path = *f.out;
    if (f.format) cfg.output_format = parse_format(*f.format);
    if (f.x_grid) cfg.x_grid = parse_number_list(*f.x_grid, "--x-grid");
    if (f.samples) cfg.samples = *f.samples;
    if (f.perturb) cfg.perturb = *f.perturb;
    if (f.epsilon) cfg.contour.epsilon = *f.epsilon;
    if (f.half_extent) cfg.contour.half_extent = *f.half_extent;
    if (f.nodes) cfg.contour.nodes_per_dim = *f.nodes;
    if (f.contour_tol) cfg.contour.tol = *f.contour_tol;
    if (f.max_order) cfg.series.max_order = *f.max_order;
    if (f.series_tol) cfg.series.tol = *f.series_tol;
    if (f.threads) cfg.threads = *f.threads;
    return cfg;
}

int emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text << (text.empty() || text.back() != '\n' ? "\n" : "");
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    out << text << (text.empty() || text.back() != '\n' ? "\n" : "");
    if (!out) {
        std::cerr << "grwhit: cannot write '" << path << "'\n";
        return grwhit::cli::exit_config;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parabolic Whittaker function: quadrature, residue series, asymptotics and GZ checks"};
    app.require_subcommand(1);
    Flags flags;
    for (const char* name : {"eval", "asympt", "verify", "sweep", "xval"})
        add_flags(app.add_subcommand(name), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : grwhit::cli::exit_config;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    grwhit::cli::RunConfig cfg;
    try {
        cfg = build_config(command, flags);
    } catch (const std::exception& e) {
        cfg.command = grwhit::cli::parse_command(command);
        const auto out = grwhit::cli::error_output(cfg, {"config", e.what()});
        emit(flags.out.value_or(""), out.text);
        return out.exit_code;
    }

    const auto out = grwhit::cli::run(cfg);
    const int wrc = emit(cfg.output_path, out.text);
    return out.exit_code != 0 ? out.exit_code : wrc;
}
