#include "molback/parameter_choice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "molback/fourier.hpp"

namespace molback {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error("parameter_choice: " + msg);
}

}  // namespace

void validate(const MorozovConfig& cfg) {
    require(std::isfinite(cfg.theta) && cfg.theta > 1.0, "theta must exceed 1");
    require(std::isfinite(cfg.q) && cfg.q > 0.0 && cfg.q < 1.0, "q must lie in (0, 1)");
    require(std::isfinite(cfg.alpha0) && cfg.alpha0 > 0.0, "alpha0 must be positive");
    require(cfg.max_iters >= 1, "max_iters must be >= 1");
}

double apriori_alpha(double delta, double E, double p, double h) {
    require(std::isfinite(delta) && delta >= 0.0, "apriori: delta must be >= 0");
    require(std::isfinite(E) && E > 0.0, "apriori: smoothness bound E must be positive");
    require(std::isfinite(p) && p > 0.0, "apriori: smoothness order p must be positive");
    require(std::isfinite(h) && h >= 0.0, "apriori: operator error h must be >= 0");
    require(delta + h * E > 0.0, "apriori: delta + h*E must be positive");
    return std::pow(h + delta / E, 1.0 / (p + 2.0));
}

DiscrepancyCurve::DiscrepancyCurve(const RealField& gdelta, const MollifierParams& mp)
    : tau_(mp.tau), s_(mp.s) {
    validate(mp);
    const SpectralField F = forward_ft(gdelta);
    const GridSpec& g = gdelta.grid;
    const int n = g.points_per_axis;
    const double dxi = g.freq_spacing();
    const double measure = g.n_dims == 1 ? dxi : dxi * dxi;
    weight_.resize(g.total_points());
    rho_pow_s_.resize(g.total_points());
    double tail = 0.0;
    if (g.n_dims == 1) {
        for (int k = 0; k < n; ++k) {
            const double rho = std::abs(g.freq_node(k));
            weight_[k] = measure * std::norm(F.coeffs[k]);
            rho_pow_s_[k] = std::pow(rho, s_);
            if (rho != 0.0) tail += weight_[k];
        }
    } else {
        std::size_t idx = 0;
        for (int k1 = 0; k1 < n; ++k1) {
            const double a = g.freq_node(k1);
            for (int k2 = 0; k2 < n; ++k2, ++idx) {
                const double b = g.freq_node(k2);
                const double rho = std::hypot(a, b);
                weight_[idx] = measure * std::norm(F.coeffs[idx]);
                rho_pow_s_[idx] = std::pow(rho, s_);
                if (rho != 0.0) tail += weight_[idx];
            }
        }
    }
    sup_ = std::sqrt(tail);
}

double DiscrepancyCurve::operator()(double alpha) const {
    require(std::isfinite(alpha) && alpha >= 0.0, "discrepancy: alpha must be >= 0");
    const double as = std::pow(alpha, s_);
    double sum = 0.0;
    for (std::size_t i = 0; i < weight_.size(); ++i) {
        const double m = -std::expm1(-tau_ * as * rho_pow_s_[i]);  // 1 - e^{-...}
        sum += m * m * weight_[i];
    }
    return std::sqrt(sum);
}

double discrepancy(const RealField& gdelta, double alpha, const MollifierParams& mp) {
    return DiscrepancyCurve(gdelta, mp)(alpha);
}

bool check_noise_condition(const RealField& gdelta, double delta, double theta) {
    require(std::isfinite(delta) && delta >= 0.0, "noise condition: delta must be >= 0");
    require(std::isfinite(theta) && theta > 1.0, "noise condition: theta must exceed 1");
    const double bound = theta * delta;
    return bound > 0.0 && bound < l2_norm(gdelta);
}

double morozov_geometric(const RealField& gdelta, double delta, const MollifierParams& mp,
                         const MorozovConfig& cfg) {
    validate(cfg);
    if (!check_noise_condition(gdelta, delta, cfg.theta))
        throw std::domain_error(
            "parameter_choice: noise condition 0 < theta*delta < ||g_delta|| violated");
    const DiscrepancyCurve v(gdelta, mp);
    const double target = cfg.theta * delta;
    double alpha = cfg.alpha0;
    for (int k = 0; k < cfg.max_iters; ++k) {
        if (v(alpha) <= target) return alpha;
        alpha *= cfg.q;
    }
    throw std::runtime_error(
        "parameter_choice: geometric search exhausted max_iters=" +
        std::to_string(cfg.max_iters) + " before the discrepancy dropped to theta*delta");
}

double morozov_bisect(const RealField& gdelta, double delta, const MollifierParams& mp,
                      double theta, double rel_tol) {
    require(std::isfinite(rel_tol) && rel_tol > 0.0, "bisect: rel_tol must be positive");
    if (!check_noise_condition(gdelta, delta, theta))
        throw std::domain_error(
            "parameter_choice: noise condition 0 < theta*delta < ||g_delta|| violated");
    const DiscrepancyCurve v(gdelta, mp);
    const double target = theta * delta;
    if (target >= v.sup_value())
        throw std::runtime_error(
            "parameter_choice: bracket failure, theta*delta is not exceeded by the "
            "discrepancy anywhere on the grid band (sup v = " +
            std::to_string(v.sup_value()) + ")");

    // Geometric scan for a bracket [lo, hi] with v(lo) <= target < v(hi).
    double lo = 1.0, hi = 1.0;
    int guard = 0;
    if (v(1.0) <= target) {
        while (v(hi) <= target && ++guard < 2000) hi *= 2.0;  // terminates: target < sup v
        lo = hi / 2.0;
    } else {
        while (v(lo) > target && ++guard < 2000) lo *= 0.5;  // terminates: v(0) = 0
        hi = 2.0 * lo;
    }
    if (guard >= 2000)
        throw std::runtime_error("parameter_choice: bracket scan failed to enclose theta*delta");

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double vm = v(mid);
        if (std::abs(vm - target) <= rel_tol * target) return mid;
        (vm <= target ? lo : hi) = mid;
    }
    throw std::runtime_error("parameter_choice: bisection failed to reach rel_tol");
}

}  // namespace molback
