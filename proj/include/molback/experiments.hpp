// experiments.hpp
// The four reference initial conditions, seeded noise synthesis, single-run
// reports, log-log convergence studies, and Monte Carlo summaries.
#pragma once

#include <cstdint>
#include <vector>

#include "molback/config.hpp"
#include "molback/grid.hpp"
#include "molback/operators.hpp"

namespace molback {

// 1: Gaussian e^{-x1^2-x2^2}          (smooth, H^p for every p)
// 2: bilateral exponential e^{-|x1|-|x2|}
// 3: triangle impulse v(x1)v(x2), v supported on [-3, 3]
// 4: indicator of the square [-5, 5]^2
struct ExampleId {
    int id = 1;
    explicit ExampleId(int i);
};

RealField initial_condition(ExampleId ex, const GridSpec& grid);

struct NoisyData {
    RealField gdelta;
    double delta = 0.0;  // discrete L2 norm of the added noise field
};

// g + eta * eps with eps i.i.d. standard normal from the counter RNG; the
// same seed reproduces the output bit for bit.
NoisyData add_noise(const RealField& g, double eta, std::uint64_t seed);

// eta such that add_noise yields delta = (perc/100) * ||g||.
double eta_for_percent_noise(const RealField& g, double perc_noise, std::uint64_t seed);

struct RunReport {
    int example = 0;
    double perc_noise = 0;
    double delta = 0;
    double alpha = 0;
    double rel_err = 0;
    double elapsed_seconds = 0;  // wall clock; kept out of serialized reports
};

struct RunResult {
    RunReport report;
    RealField truth;           // u(., 0)
    RealField data;            // g_delta
    RealField reconstruction;  // u_alpha^delta(., 0)
};

// Full pipeline: synthesize exact final data with the exact propagator, add
// noise, select alpha by the geometric Morozov search, reconstruct at t = 0.
// cfg.psi_h > 0 switches the inversion (not the synthesis) to the perturbed
// propagator; cfg.fixed_alpha > 0 bypasses the Morozov search, which is the
// only way to run noise-free data.
RunResult run_example_full(ExampleId ex, double perc_noise, std::uint64_t seed,
                           const PipelineConfig& cfg);
RunReport run_example(ExampleId ex, double perc_noise, std::uint64_t seed,
                      const PipelineConfig& cfg);

struct RatesReport {
    std::vector<std::pair<double, double>> points;  // (ln delta, ln rel_err)
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

// Least-squares fit of ln(rel_err) against ln(delta) over noise levels given
// in percent; each level averages run_example over the provided seeds.
// Requires at least 3 levels spanning a ratio of 10^1.2 or more.
RatesReport convergence_study(ExampleId ex, const std::vector<double>& perc_levels,
                              const std::vector<std::uint64_t>& seeds,
                              const PipelineConfig& cfg);

struct MCSummary {
    int n_reps = 0;
    double mean_rel_err = 0;
    double var_rel_err = 0;  // unbiased sample variance; 0 for a single rep
    double mean_alpha = 0;
};

struct MCResult {
    MCSummary summary;
    std::vector<double> rel_errs;  // per replication, indexed by i
    std::vector<double> alphas;
};

// Replication i uses seed base_seed + i; aggregation is a fixed-order
// compensated reduction, so the fan-out schedule cannot change the result.
MCResult monte_carlo_detailed(ExampleId ex, double perc_noise, int n_reps,
                              std::uint64_t base_seed, const PipelineConfig& cfg);
MCSummary monte_carlo(ExampleId ex, double perc_noise, int n_reps, std::uint64_t base_seed,
                      const PipelineConfig& cfg);

struct CutoffRun {
    double xi_max = 0;
    double rel_err = 0;
};

// Best spectral cut-off reconstruction over a ladder of xi_max values,
// scored against the known truth (benchmark baseline).
CutoffRun tune_spectral_cutoff(const RealField& gdelta, const RealField& u0,
                               const DiffusionModel& model, int n_scan = 64);

}  // namespace molback
