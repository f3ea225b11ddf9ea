#include "molback/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "molback/fourier.hpp"

namespace molback {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error("operators: " + msg);
}

// Per-axis frequency magnitudes with mirror nodes k and N-k canonicalized to
// the same double, so even symbols (including indicators with ties at node
// magnitudes) cannot break the conjugate symmetry of the spectrum.
std::vector<double> axis_freq_abs(const GridSpec& g) {
    const int n = g.points_per_axis;
    std::vector<double> abs_xi(n);
    for (int k = 0; k < n; ++k)
        abs_xi[k] = std::abs(g.freq_node(std::min(k, n - k)));
    return abs_xi;
}

// Applies an even multiplier m(|xi_1|, |xi_2|) in the frequency domain.
template <class Mult>
RealField apply_symbol(const RealField& f, Mult&& m) {
    SpectralField F = forward_ft(f);
    const GridSpec& g = f.grid;
    const int n = g.points_per_axis;
    const std::vector<double> abs_xi = axis_freq_abs(g);
    if (g.n_dims == 1) {
        for (int k = 0; k < n; ++k) F.coeffs[k] *= m(abs_xi[k], 0.0);
    } else {
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2)
                F.coeffs[static_cast<std::size_t>(k1) * n + k2] *= m(abs_xi[k1], abs_xi[k2]);
    }
    return inverse_ft(F);
}

}  // namespace

void validate(const MollifierParams& mp) {
    require(std::isfinite(mp.tau) && mp.tau > 0.0, "mollifier tau must be positive");
    require(std::isfinite(mp.s) && mp.s > 0.0, "mollifier s must be positive");
}

DiffusionModel::DiffusionModel(double gamma, double T)
    : T_(T), backend_(MittagLefflerEvaluator(gamma)) {
    require(gamma > 0.0 && gamma < 1.0, "model gamma must lie in (0, 1)");
    require(std::isfinite(T) && T > 0.0, "final time T must be positive");
}

DiffusionModel::DiffusionModel(const PsiApprox& psi, double T) : T_(T), backend_(psi) {
    require(psi.gamma() > 0.0 && psi.gamma() < 1.0, "model gamma must lie in (0, 1)");
    require(std::isfinite(T) && T > 0.0, "final time T must be positive");
}

double DiffusionModel::gamma() const {
    return std::visit([](const auto& b) { return b.gamma(); }, backend_);
}

bool DiffusionModel::perturbed() const {
    return std::holds_alternative<PsiApprox>(backend_);
}

double DiffusionModel::perturbation() const {
    const auto* psi = std::get_if<PsiApprox>(&backend_);
    return psi ? psi->h() : 0.0;
}

void DiffusionModel::check_time(double t) const {
    require(std::isfinite(t) && t >= 0.0 && t <= T_, "time must lie in [0, T]");
}

double DiffusionModel::propagator(double freq_abs, double t) const {
    check_time(t);
    if (t == 0.0) return 1.0;
    if (const auto* psi = std::get_if<PsiApprox>(&backend_)) return (*psi)(freq_abs, t);
    const auto& ml = std::get<MittagLefflerEvaluator>(backend_);
    return ml(-freq_abs * freq_abs * std::pow(t, ml.gamma()));
}

double DiffusionModel::backward_ratio(double freq_abs, double t) const {
    check_time(t);
    if (t == T_) return 1.0;
    if (const auto* psi = std::get_if<PsiApprox>(&backend_)) {
        const double denom = (*psi)(freq_abs, T_);
        if (t == 0.0) return 1.0 / denom;
        return std::max((*psi)(freq_abs, t) / denom, 1.0);
    }
    const auto& ml = std::get<MittagLefflerEvaluator>(backend_);
    const double lam = freq_abs * freq_abs;
    if (t == 0.0) return 1.0 / ml(-lam * std::pow(T_, ml.gamma()));
    return ml.ratio(lam, t, T_);
}

double DiffusionModel::exact_final_propagator(double freq_abs) const {
    MittagLefflerEvaluator ml(gamma());
    return ml(-freq_abs * freq_abs * std::pow(T_, gamma()));
}

RealField forward_solve(const RealField& u0, const DiffusionModel& model, double t) {
    require(std::isfinite(t) && t >= 0.0 && t <= model.final_time(),
            "forward_solve: time must lie in [0, T]");
    return apply_symbol(u0, [&](double a, double b) {
        return model.propagator(std::hypot(a, b), t);
    });
}

RealField mollify(const RealField& f, double alpha, const MollifierParams& mp) {
    validate(mp);
    require(std::isfinite(alpha) && alpha >= 0.0, "mollify: alpha must be >= 0");
    return apply_symbol(f, [&](double a, double b) {
        return std::exp(-mp.tau * std::pow(alpha * std::hypot(a, b), mp.s));
    });
}

RealField regularized_backward(const RealField& gdelta, double alpha,
                               const DiffusionModel& model, const MollifierParams& mp,
                               double t) {
    validate(mp);
    require(std::isfinite(alpha) && alpha > 0.0,
            "regularized_backward: alpha must be positive (the unregularized "
            "inversion is rejected)");
    require(std::isfinite(t) && t >= 0.0 && t <= model.final_time(),
            "regularized_backward: time must lie in [0, T]");
    return apply_symbol(gdelta, [&](double a, double b) {
        const double rho = std::hypot(a, b);
        return std::exp(-mp.tau * std::pow(alpha * rho, mp.s)) * model.backward_ratio(rho, t);
    });
}

RealField spectral_cutoff_backward(const RealField& gdelta, double xi_max,
                                   const DiffusionModel& model, double t) {
    require(std::isfinite(xi_max) && xi_max >= 0.0,
            "spectral_cutoff_backward: xi_max must be >= 0");
    require(std::isfinite(t) && t >= 0.0 && t <= model.final_time(),
            "spectral_cutoff_backward: time must lie in [0, T]");
    return apply_symbol(gdelta, [&](double a, double b) -> double {
        if (a > xi_max || b > xi_max) return 0.0;
        return model.backward_ratio(std::hypot(a, b), t);
    });
}

RealField source_representer(const RealField& u0, const DiffusionModel& model, double p) {
    require(std::isfinite(p) && p >= 0.0, "source_representer: p must be >= 0");
    require(!model.perturbed(), "source_representer: requires the exact evaluator");
    MittagLefflerEvaluator ml(model.gamma());
    const double Tg = std::pow(model.final_time(), model.gamma());
    return apply_symbol(u0, [&](double a, double b) {
        const double rho2 = a * a + b * b;
        return std::pow(ml(-rho2 * Tg), -0.5 * p);
    });
}

}  // namespace molback
