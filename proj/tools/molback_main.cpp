// molback: mollified backward reconstruction for sub-diffusion final data.
//
// Subcommands: forward, backward, example, rates, montecarlo, verify.
// Every run writes CSV reports plus two-column plot-data files and echoes the
// effective configuration beside them; identical config and seed produce
// byte-identical outputs (timings go to stderr only).
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "molback/config.hpp"
#include "molback/diagnostics.hpp"
#include "molback/experiments.hpp"
#include "molback/field_io.hpp"
#include "molback/fourier.hpp"
#include "molback/parameter_choice.hpp"

namespace fs = std::filesystem;
using namespace molback;

namespace {

struct CliOverrides {
    std::optional<double> gamma, T, L, tau, s, theta, q, alpha0, fixed_alpha, psi_h;
    std::optional<int> N, max_iters, threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
};

void add_override_flags(CLI::App& app, CliOverrides& ov) {
    app.add_option("--gamma", ov.gamma, "fractional order in (0,1)");
    app.add_option("--T", ov.T, "final time");
    app.add_option("--L", ov.L, "spatial half-width");
    app.add_option("--N", ov.N, "points per axis (power of two)");
    app.add_option("--tau", ov.tau, "mollifier strength");
    app.add_option("--s", ov.s, "mollifier exponent");
    app.add_option("--theta", ov.theta, "discrepancy factor (> 1)");
    app.add_option("--q", ov.q, "geometric search ratio in (0,1)");
    app.add_option("--alpha0", ov.alpha0, "geometric search start");
    app.add_option("--max-iters", ov.max_iters, "geometric search iteration cap");
    app.add_option("--seed", ov.seed, "noise seed");
    app.add_option("--output-dir", ov.output_dir, "output directory");
    app.add_option("--fixed-alpha", ov.fixed_alpha, "bypass the Morozov search (> 0)");
    app.add_option("--psi-h", ov.psi_h, "invert with the h-perturbed propagator");
    app.add_option("--threads", ov.threads, "Monte Carlo worker threads");
}

void apply_overrides(PipelineConfig& cfg, const CliOverrides& ov) {
    if (ov.gamma) cfg.gamma = *ov.gamma;
    if (ov.T) cfg.T = *ov.T;
    if (ov.L) cfg.L = *ov.L;
    if (ov.N) cfg.N = *ov.N;
    if (ov.tau) cfg.tau = *ov.tau;
    if (ov.s) cfg.s = *ov.s;
    if (ov.theta) cfg.theta = *ov.theta;
    if (ov.q) cfg.q = *ov.q;
    if (ov.alpha0) cfg.alpha0 = *ov.alpha0;
    if (ov.max_iters) cfg.max_iters = *ov.max_iters;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.output_dir) cfg.output_dir = *ov.output_dir;
    if (ov.fixed_alpha) cfg.fixed_alpha = *ov.fixed_alpha;
    if (ov.psi_h) cfg.psi_h = *ov.psi_h;
    if (ov.threads) cfg.threads = *ov.threads;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    return out;
}

void write_config_echo(const PipelineConfig& cfg, const fs::path& path) {
    open_out(path) << config_echo(cfg);
}

// Cross-section along the first axis at the row nearest the origin.
void write_midline(const RealField& f, const fs::path& path) {
    std::ofstream out = open_out(path);
    const int n = f.grid.points_per_axis;
    if (f.grid.n_dims == 1) {
        for (int i = 0; i < n; ++i)
            out << format_double(f.grid.node(i)) << " " << format_double(f.values[i]) << "\n";
    } else {
        const int j = n / 2;
        for (int i = 0; i < n; ++i)
            out << format_double(f.grid.node(i)) << " "
                << format_double(f.values[static_cast<std::size_t>(i) * n + j]) << "\n";
    }
}

fs::path prepare_output_dir(const PipelineConfig& cfg) {
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

int run_forward(const PipelineConfig& cfg, int example_id, const std::string& in_file,
                double t_arg, const std::string& out_name) {
    const fs::path dir = prepare_output_dir(cfg);
    const double t = t_arg < 0 ? cfg.T : t_arg;
    RealField u0 = in_file.empty()
                       ? initial_condition(ExampleId(example_id), make_grid(2, cfg.L, cfg.N))
                       : read_field(in_file);
    const DiffusionModel model(cfg.gamma, cfg.T);
    const RealField out = forward_solve(u0, model, t);
    write_field(out, (dir / (out_name + ".field")).string());
    write_midline(out, dir / (out_name + "_midline.dat"));
    write_config_echo(cfg, dir / (out_name + "_config.txt"));
    std::cerr << "forward: wrote " << (dir / (out_name + ".field")) << "\n";
    return 0;
}

int run_backward(const PipelineConfig& cfg, const std::string& in_file, double alpha,
                 bool use_morozov, double delta, double t, const std::string& out_name) {
    const fs::path dir = prepare_output_dir(cfg);
    const RealField gdelta = read_field(in_file);
    const MollifierParams mp{cfg.tau, cfg.s};
    if (use_morozov)
        alpha = morozov_geometric(gdelta, delta, mp,
                                  MorozovConfig{cfg.theta, cfg.q, cfg.alpha0, cfg.max_iters});
    const DiffusionModel model =
        cfg.psi_h > 0.0 ? DiffusionModel(build_psi_approx(cfg.gamma, cfg.psi_h), cfg.T)
                        : DiffusionModel(cfg.gamma, cfg.T);
    const RealField recon = regularized_backward(gdelta, alpha, model, mp, t);
    write_field(recon, (dir / (out_name + ".field")).string());
    write_midline(recon, dir / (out_name + "_midline.dat"));
    write_config_echo(cfg, dir / (out_name + "_config.txt"));
    std::ofstream rep = open_out(dir / (out_name + "_report.csv"));
    rep << "alpha,t\n" << format_double(alpha) << "," << format_double(t) << "\n";
    std::cerr << "backward: alpha = " << alpha << "\n";
    return 0;
}

int run_example_cmd(const PipelineConfig& cfg, int example_id, double perc_noise,
                    bool compare_cutoff) {
    const fs::path dir = prepare_output_dir(cfg);
    const RunResult res = run_example_full(ExampleId(example_id), perc_noise, cfg.seed, cfg);

    std::ofstream csv = open_out(dir / "example_report.csv");
    csv << "example,perc_noise,delta,alpha,rel_err";
    if (compare_cutoff) csv << ",cutoff_xi_max,cutoff_rel_err";
    csv << "\n";
    csv << res.report.example << "," << format_double(res.report.perc_noise) << ","
        << format_double(res.report.delta) << "," << format_double(res.report.alpha) << ","
        << format_double(res.report.rel_err);
    if (compare_cutoff) {
        const DiffusionModel model(cfg.gamma, cfg.T);
        const CutoffRun cut = tune_spectral_cutoff(res.data, res.truth, model);
        csv << "," << format_double(cut.xi_max) << "," << format_double(cut.rel_err);
        std::cerr << "cutoff baseline: xi_max = " << cut.xi_max << " rel_err = " << cut.rel_err
                  << "\n";
    }
    csv << "\n";

    write_field(res.reconstruction, (dir / "example_recon.field").string());
    write_field(res.truth, (dir / "example_truth.field").string());
    write_midline(res.reconstruction, dir / "example_recon_midline.dat");
    write_midline(res.truth, dir / "example_truth_midline.dat");
    write_config_echo(cfg, dir / "example_config.txt");
    std::cerr << "example " << example_id << ": alpha = " << res.report.alpha
              << " rel_err = " << res.report.rel_err << " (" << res.report.elapsed_seconds
              << " s)\n";
    return 0;
}

int run_rates_cmd(const PipelineConfig& cfg, int example_id, std::vector<double> levels,
                  std::vector<std::uint64_t> seeds) {
    const fs::path dir = prepare_output_dir(cfg);
    if (seeds.empty()) seeds = {cfg.seed, cfg.seed + 1, cfg.seed + 2};
    const RatesReport rep = convergence_study(ExampleId(example_id), levels, seeds, cfg);

    std::ofstream csv = open_out(dir / "rates_report.csv");
    csv << "ln_delta,ln_rel_err,slope,intercept,r_squared\n";
    for (const auto& [x, y] : rep.points)
        csv << format_double(x) << "," << format_double(y) << "," << format_double(rep.slope)
            << "," << format_double(rep.intercept) << "," << format_double(rep.r_squared)
            << "\n";
    std::ofstream dat = open_out(dir / "rates_points.dat");
    for (const auto& [x, y] : rep.points)
        dat << format_double(x) << " " << format_double(y) << "\n";
    write_config_echo(cfg, dir / "rates_config.txt");
    std::cerr << "rates: slope = " << rep.slope << " r^2 = " << rep.r_squared << "\n";
    return 0;
}

int run_montecarlo_cmd(const PipelineConfig& cfg, int example_id, double perc_noise, int reps) {
    const fs::path dir = prepare_output_dir(cfg);
    const MCResult res =
        monte_carlo_detailed(ExampleId(example_id), perc_noise, reps, cfg.seed, cfg);

    std::ofstream csv = open_out(dir / "montecarlo_summary.csv");
    csv << "example,perc_noise,n_reps,mean_rel_err,var_rel_err,mean_alpha\n";
    csv << example_id << "," << format_double(perc_noise) << "," << res.summary.n_reps << ","
        << format_double(res.summary.mean_rel_err) << ","
        << format_double(res.summary.var_rel_err) << ","
        << format_double(res.summary.mean_alpha) << "\n";
    std::ofstream dat = open_out(dir / "montecarlo_reps.dat");
    for (int i = 0; i < res.summary.n_reps; ++i)
        dat << i << " " << format_double(res.rel_errs[i]) << "\n";
    write_config_echo(cfg, dir / "montecarlo_config.txt");
    std::cerr << "montecarlo: mean rel_err = " << res.summary.mean_rel_err
              << " var = " << res.summary.var_rel_err << "\n";
    return 0;
}

int run_verify_cmd() {
    const auto checks = run_verification();
    int failures = 0;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (measured "
                  << c.measured << ", bound " << c.bound << ")\n";
        if (!c.pass) ++failures;
    }
    std::cout << (failures == 0 ? "verify: all checks passed"
                                : "verify: " + std::to_string(failures) + " check(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mollified backward solver for final-value sub-diffusion data"};
    app.require_subcommand(1);

    std::string config_file;
    bool env_override = false;
    app.add_option("--config", config_file, "key = value configuration file");
    app.add_flag("--env-override", env_override,
                 "let MOLBACK_* environment variables override the config file");
    CliOverrides ov;
    add_override_flags(app, ov);

    auto* cmd_forward = app.add_subcommand("forward", "evolve an initial state to time t");
    int fwd_id = 1;
    std::string fwd_in, fwd_out = "forward";
    double fwd_t = -1.0;
    cmd_forward->add_option("--id", fwd_id, "built-in initial condition (1..4)");
    cmd_forward->add_option("--in", fwd_in, "initial state field file (overrides --id)");
    cmd_forward->add_option("--t", fwd_t, "evolution time (default T)");
    cmd_forward->add_option("--out", fwd_out, "output name stem");

    auto* cmd_backward = app.add_subcommand("backward", "reconstruct from final data");
    std::string bwd_in, bwd_out = "backward";
    double bwd_alpha = 0.0, bwd_delta = 0.0, bwd_t = 0.0;
    bool bwd_morozov = false;
    cmd_backward->add_option("--in", bwd_in, "final data field file")->required();
    cmd_backward->add_option("--alpha", bwd_alpha, "regularization parameter");
    cmd_backward->add_flag("--morozov", bwd_morozov, "select alpha by the discrepancy rule");
    cmd_backward->add_option("--delta", bwd_delta, "noise level for --morozov");
    cmd_backward->add_option("--t", bwd_t, "reconstruction time (default 0)");
    cmd_backward->add_option("--out", bwd_out, "output name stem");

    auto* cmd_example = app.add_subcommand("example", "run a reference example end to end");
    int ex_id = 1;
    double ex_noise = 1.0;
    bool ex_cutoff = false;
    cmd_example->add_option("--id", ex_id, "example id (1..4)")->required();
    cmd_example->add_option("--perc-noise", ex_noise, "noise level in percent");
    cmd_example->add_flag("--compare-cutoff", ex_cutoff,
                          "also report the tuned spectral cut-off baseline");

    auto* cmd_rates = app.add_subcommand("rates", "log-log convergence study");
    int rt_id = 1;
    std::vector<double> rt_levels{4.0, 2.0, 1.0, 0.5, 0.25};
    std::vector<std::uint64_t> rt_seeds;
    cmd_rates->add_option("--id", rt_id, "example id (1..4)")->required();
    cmd_rates->add_option("--levels", rt_levels, "noise levels in percent")->delimiter(',');
    cmd_rates->add_option("--seeds", rt_seeds, "seeds averaged per level")->delimiter(',');

    auto* cmd_mc = app.add_subcommand("montecarlo", "replicated noise study");
    int mc_id = 1, mc_reps = 50;
    double mc_noise = 1.0;
    cmd_mc->add_option("--id", mc_id, "example id (1..4)")->required();
    cmd_mc->add_option("--perc-noise", mc_noise, "noise level in percent");
    cmd_mc->add_option("--reps", mc_reps, "number of replications");

    auto* cmd_verify =
        app.add_subcommand("verify", "run the special-function verification checks");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg;
        if (!config_file.empty()) apply_config_file(cfg, config_file);
        if (env_override) apply_config_env(cfg);
        apply_overrides(cfg, ov);
        validate(cfg);

        if (cmd_verify->parsed()) return run_verify_cmd();
        if (cmd_forward->parsed()) return run_forward(cfg, fwd_id, fwd_in, fwd_t, fwd_out);
        if (cmd_backward->parsed()) {
            if (!bwd_morozov && bwd_alpha <= 0.0)
                throw ConfigError("backward needs --alpha > 0 or --morozov with --delta");
            return run_backward(cfg, bwd_in, bwd_alpha, bwd_morozov, bwd_delta, bwd_t, bwd_out);
        }
        if (cmd_example->parsed()) return run_example_cmd(cfg, ex_id, ex_noise, ex_cutoff);
        if (cmd_rates->parsed()) return run_rates_cmd(cfg, rt_id, rt_levels, rt_seeds);
        if (cmd_mc->parsed()) return run_montecarlo_cmd(cfg, mc_id, mc_noise, mc_reps);
        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 3;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: runtime: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 5;
    }
}
