#include "molback/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "molback/fourier.hpp"
#include "molback/parameter_choice.hpp"
#include "molback/rng.hpp"

namespace molback {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error("experiments: " + msg);
}

double triangle_impulse(double x) {
    const double a = std::abs(x);
    return a <= 3.0 ? 1.0 - a / 3.0 : 0.0;
}

// Fixed-order Neumaier summation: the reduction result is independent of the
// thread schedule because inputs are gathered into an indexed array first.
double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace

ExampleId::ExampleId(int i) : id(i) {
    require(i >= 1 && i <= 4, "example id must lie in {1, 2, 3, 4}");
}

RealField initial_condition(ExampleId ex, const GridSpec& grid) {
    require(grid.n_dims == 2, "reference initial conditions are two-dimensional");
    switch (ex.id) {
        case 1:
            return RealField::sample(grid, [](double x, double y) {
                return std::exp(-x * x - y * y);
            });
        case 2:
            return RealField::sample(grid, [](double x, double y) {
                return std::exp(-std::abs(x) - std::abs(y));
            });
        case 3:
            return RealField::sample(grid, [](double x, double y) {
                return triangle_impulse(x) * triangle_impulse(y);
            });
        default:
            return RealField::sample(grid, [](double x, double y) {
                return (std::abs(x) <= 5.0 && std::abs(y) <= 5.0) ? 1.0 : 0.0;
            });
    }
}

NoisyData add_noise(const RealField& g, double eta, std::uint64_t seed) {
    require(std::isfinite(eta) && eta >= 0.0, "noise amplitude eta must be >= 0");
    NoisyData out{g, 0.0};
    if (eta == 0.0) return out;
    const std::vector<double> eps = gaussian_vector(seed, g.values.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        out.gdelta.values[i] += eta * eps[i];
        sq += eps[i] * eps[i];
    }
    const double kappa = g.grid.spacing();
    const double measure = g.grid.n_dims == 1 ? kappa : kappa * kappa;
    out.delta = eta * std::sqrt(measure * sq);
    return out;
}

double eta_for_percent_noise(const RealField& g, double perc_noise, std::uint64_t seed) {
    require(std::isfinite(perc_noise) && perc_noise >= 0.0, "perc_noise must be >= 0");
    if (perc_noise == 0.0) return 0.0;
    const std::vector<double> eps = gaussian_vector(seed, g.values.size());
    double sq = 0.0;
    for (double e : eps) sq += e * e;
    const double kappa = g.grid.spacing();
    const double measure = g.grid.n_dims == 1 ? kappa : kappa * kappa;
    const double eps_norm = std::sqrt(measure * sq);
    require(eps_norm > 0.0, "degenerate noise draw");
    return perc_noise / 100.0 * l2_norm(g) / eps_norm;
}

RunResult run_example_full(ExampleId ex, double perc_noise, std::uint64_t seed,
                           const PipelineConfig& cfg) {
    validate(cfg);
    require(std::isfinite(perc_noise) && perc_noise >= 0.0, "perc_noise must be >= 0");
    const auto t_start = std::chrono::steady_clock::now();

    const GridSpec grid = make_grid(2, cfg.L, cfg.N);
    const MollifierParams mp{cfg.tau, cfg.s};
    const DiffusionModel exact_model(cfg.gamma, cfg.T);

    RealField u0 = initial_condition(ex, grid);
    RealField g = forward_solve(u0, exact_model, cfg.T);

    const double eta = eta_for_percent_noise(g, perc_noise, seed);
    NoisyData noisy = add_noise(g, eta, seed);

    double alpha;
    if (cfg.fixed_alpha > 0.0) {
        alpha = cfg.fixed_alpha;
    } else {
        // Noise-free data cannot satisfy 0 < theta*delta; the fixed-alpha
        // fallback is the documented way to run that case.
        alpha = morozov_geometric(noisy.gdelta, noisy.delta, mp,
                                  MorozovConfig{cfg.theta, cfg.q, cfg.alpha0, cfg.max_iters});
    }

    const DiffusionModel inversion_model =
        cfg.psi_h > 0.0 ? DiffusionModel(build_psi_approx(cfg.gamma, cfg.psi_h), cfg.T)
                        : exact_model;
    RealField recon = regularized_backward(noisy.gdelta, alpha, inversion_model, mp, 0.0);

    const double rel_err = l2_distance(recon, u0) / l2_norm(u0);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    RunResult out{RunReport{ex.id, perc_noise, noisy.delta, alpha, rel_err, elapsed},
                  std::move(u0), std::move(noisy.gdelta), std::move(recon)};
    return out;
}

RunReport run_example(ExampleId ex, double perc_noise, std::uint64_t seed,
                      const PipelineConfig& cfg) {
    return run_example_full(ex, perc_noise, seed, cfg).report;
}

RatesReport convergence_study(ExampleId ex, const std::vector<double>& perc_levels,
                              const std::vector<std::uint64_t>& seeds,
                              const PipelineConfig& cfg) {
    require(perc_levels.size() >= 3, "convergence study needs at least 3 noise levels");
    require(!seeds.empty(), "convergence study needs at least one seed");
    double lo = perc_levels.front(), hi = perc_levels.front();
    for (double p : perc_levels) {
        require(p > 0.0, "noise levels must be positive");
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    require(hi / lo >= std::pow(10.0, 1.2),
            "noise levels must span at least a 10^1.2 ratio");

    RatesReport rep;
    for (double perc : perc_levels) {
        std::vector<double> errs;
        double delta = 0.0;
        for (std::uint64_t seed : seeds) {
            const RunReport r = run_example(ex, perc, seed, cfg);
            errs.push_back(r.rel_err);
            delta = r.delta;  // identical across seeds by construction
        }
        const double mean_err = compensated_sum(errs) / static_cast<double>(errs.size());
        rep.points.emplace_back(std::log(delta), std::log(mean_err));
    }

    const std::size_t n = rep.points.size();
    double sx = 0, sy = 0;
    for (auto [x, y] : rep.points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : rep.points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    rep.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return rep;
}

MCResult monte_carlo_detailed(ExampleId ex, double perc_noise, int n_reps,
                              std::uint64_t base_seed, const PipelineConfig& cfg) {
    require(n_reps >= 1, "monte_carlo needs n_reps >= 1");
    std::vector<double> rel_errs(n_reps), alphas(n_reps);
    std::vector<std::string> failures(n_reps);

    auto run_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            try {
                const RunReport r =
                    run_example(ex, perc_noise, base_seed + static_cast<std::uint64_t>(i), cfg);
                rel_errs[i] = r.rel_err;
                alphas[i] = r.alpha;
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };

    const int n_threads = std::max(1, std::min(cfg.threads, n_reps));
    if (n_threads == 1) {
        run_range(0, n_reps);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n_reps + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min(n_reps, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (int i = 0; i < n_reps; ++i)
        if (!failures[i].empty())
            throw std::runtime_error("experiments: replication " + std::to_string(i) +
                                     " (seed " + std::to_string(base_seed + i) +
                                     ") failed: " + failures[i]);

    MCSummary s;
    s.n_reps = n_reps;
    s.mean_rel_err = compensated_sum(rel_errs) / n_reps;
    s.mean_alpha = compensated_sum(alphas) / n_reps;
    if (n_reps > 1) {
        std::vector<double> sq(n_reps);
        for (int i = 0; i < n_reps; ++i) {
            const double d = rel_errs[i] - s.mean_rel_err;
            sq[i] = d * d;
        }
        s.var_rel_err = compensated_sum(sq) / (n_reps - 1);
    }
    return MCResult{s, std::move(rel_errs), std::move(alphas)};
}

MCSummary monte_carlo(ExampleId ex, double perc_noise, int n_reps, std::uint64_t base_seed,
                      const PipelineConfig& cfg) {
    return monte_carlo_detailed(ex, perc_noise, n_reps, base_seed, cfg).summary;
}

CutoffRun tune_spectral_cutoff(const RealField& gdelta, const RealField& u0,
                               const DiffusionModel& model, int n_scan) {
    require(n_scan >= 2, "cutoff scan needs at least 2 points");
    const double omega = gdelta.grid.freq_half_width();
    const double u0_norm = l2_norm(u0);
    CutoffRun best{0.0, std::numeric_limits<double>::infinity()};
    for (int i = 1; i <= n_scan; ++i) {
        const double xi_max = omega * i / n_scan;
        const RealField rec = spectral_cutoff_backward(gdelta, xi_max, model, 0.0);
        const double err = l2_distance(rec, u0) / u0_norm;
        if (err < best.rel_err) best = CutoffRun{xi_max, err};
    }
    return best;
}

}  // namespace molback
