#include "molback/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace molback {

namespace {

constexpr double kPi = std::numbers::pi;

double log_gamma_pos(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

// sin(pi*z) with the argument reduced against the nearest integer, exact zero
// at integer z.
double sin_pi(double z) {
    const double m = std::nearbyint(z);
    const double f = z - m;
    if (f == 0.0) return 0.0;
    const double s = std::sin(kPi * f);
    return (static_cast<long long>(m) % 2 == 0) ? s : -s;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error("mittag_leffler: " + msg);
}

// Nats of precision consumed by the alternating series at argument -a: the
// largest term grows like exp(a^{1/g}) while the sum itself is only
// algebraically small (exponentially small at g = 1).
double series_cancellation_nats(double gamma, double a) {
    if (a <= 0) return 0.0;
    if (gamma >= 1.0) return 2.0 * a;
    return std::pow(a, 1.0 / gamma) + std::log1p(a) + std::max(0.0, log_gamma_pos(1.0 - gamma));
}

// Largest a for which the extended-precision series still meets ~1e-13.
double solve_series_threshold(double gamma) {
    constexpr double budget = 12.0;  // nats
    double lo = 0.25, hi = 64.0;
    if (series_cancellation_nats(gamma, hi) < budget) return hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (series_cancellation_nats(gamma, mid) < budget ? lo : hi) = mid;
    }
    return lo;
}

// Bound on the smallest achievable relative error of the truncated asymptotic
// expansion at argument -a (first omitted term over the crude magnitude
// 1/((1+a) Gamma(1-g)) of E itself).
double asymptotic_best_rel_error(double gamma, double a) {
    const double lna = std::log(a);
    const double log_scale = std::log1p(a) + log_gamma_pos(1.0 - gamma);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 220; ++k) {
        const double lt = log_gamma_pos(gamma * k) - k * lna - std::log(kPi) + log_scale;
        best = std::min(best, lt);
        if (lt > best + 40.0) break;  // far past the optimal truncation
    }
    return std::exp(best);
}

double solve_asymptotic_threshold(double gamma, double x_lo) {
    constexpr double target = 1e-14;
    double lo = std::max(x_lo, 1.0), hi = 1e6;
    if (asymptotic_best_rel_error(gamma, lo) <= target) return lo;
    for (int i = 0; i < 120; ++i) {
        const double mid = std::sqrt(lo * hi);
        (asymptotic_best_rel_error(gamma, mid) <= target ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

MittagLefflerEvaluator::MittagLefflerEvaluator(double gamma, double rel_tol)
    : gamma_(gamma), rel_tol_(rel_tol) {
    require(std::isfinite(gamma) && gamma > 0.0 && gamma <= 1.0,
            "gamma must lie in (0, 1]");
    require(std::isfinite(rel_tol) && rel_tol > 0.0 && rel_tol < 1e-6,
            "rel_tol must lie in (0, 1e-6)");
    x_lo_ = solve_series_threshold(gamma_);
    if (gamma_ == 1.0) {
        x_hi_ = x_lo_;  // exp identity beyond the series range
        quad_step_ = 0.0;
        return;
    }
    x_hi_ = std::max(solve_asymptotic_threshold(gamma_, x_lo_), x_lo_);
    // Trapezoid step tied to the width of the analyticity strip of the
    // log-substituted integrand: error ~ exp(-2 pi d / h).
    const double d = 0.9 * std::min(kPi / 2.0, kPi * (1.0 - gamma_) / gamma_);
    quad_step_ = std::min(0.05, 2.0 * kPi * d / 36.0);
}

double MittagLefflerEvaluator::eval_series(double x) const {
    if (x == 0.0) return 1.0;
    const double a = -x;
    const long double lna = std::log(static_cast<long double>(a));
    const long double gl = static_cast<long double>(gamma_);
    long double sum = 1.0L;
    long double prev_ln = std::numeric_limits<long double>::lowest();
    const long double ln_cut = std::log(0.05L * static_cast<long double>(rel_tol_));
    for (int k = 1; k <= 4000; ++k) {
        const long double ln_term = k * lna - ::lgammal(gl * k + 1.0L);
        const long double term = std::exp(ln_term);
        sum += (k % 2 == 0) ? term : -term;
        const bool descending = ln_term < prev_ln;
        prev_ln = ln_term;
        if (descending && ln_term < ln_cut + std::log(std::max(std::abs(sum), 1e-300L)))
            break;
    }
    return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

double MittagLefflerEvaluator::eval_integral(double x) const {
    // E(-a) = int_0^inf e^{-r a^{1/g}} K(r) dr with the spectral density K;
    // log substitution r = e^u and plain trapezoid (geometric convergence in
    // the step since the integrand is analytic in a strip).
    const double a = -x;
    const double b = std::pow(a, 1.0 / gamma_);
    const double sg = std::sin(kPi * gamma_);
    const double cg = std::cos(kPi * gamma_);
    const double h = quad_step_;
    // Truncation points: the integrand decays like e^{g u} on the left and is
    // killed by e^{-b e^u} on the right.
    const double u_lo = -50.0 / gamma_;
    const double u_hi = std::max(4.0, std::log(55.0 / b) + 2.0);
    const long n = static_cast<long>(std::ceil((u_hi - u_lo) / h));
    double sum = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double u = u_lo + i * h;
        const double r = std::exp(u);
        const double w = std::exp(gamma_ * u);  // r^gamma
        const double denom = w * w + 2.0 * w * cg + 1.0;
        double f = std::exp(-b * r) * w / denom;
        if (i == 0 || i == n) f *= 0.5;
        sum += f;
    }
    return std::clamp(sg / kPi * h * sum, 0.0, 1.0);
}

// S(a) = sum_{j>=0} (-1)^j a^{-j} / Gamma(1 - gamma (j+1)), so that the
// asymptotic value is E(-a) ~ S(a) / a.
double MittagLefflerEvaluator::asymptotic_tail_sum(double a) const {
    const double lna = std::log(a);
    double sum = 0.0;
    double prev_bound = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= 300; ++j) {
        const double gk = gamma_ * (j + 1);
        const double bound = log_gamma_pos(gk) - j * lna - std::log(kPi);
        if (j >= 1 && bound > prev_bound) break;  // past optimal truncation
        prev_bound = bound;
        const double s = sin_pi(gk);
        if (s != 0.0) {
            const double mag = std::exp(log_gamma_pos(gk) - j * lna) * std::abs(s) / kPi;
            sum += ((j % 2 == 0) ? 1.0 : -1.0) * ((s > 0) ? mag : -mag);
        }
        if (std::exp(bound) < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
    }
    return sum;
}

double MittagLefflerEvaluator::eval_asymptotic(double x) const {
    const double a = -x;
    return std::clamp(asymptotic_tail_sum(a) / a, 0.0, 1.0);
}

double MittagLefflerEvaluator::operator()(double x) const {
    require(std::isfinite(x), "argument must be finite");
    require(x <= 0.0, "argument must be <= 0");
    if (x == 0.0) return 1.0;
    const double a = -x;
    double v;
    if (a <= x_lo_)
        v = eval_series(x);
    else if (gamma_ == 1.0)
        v = std::exp(x);
    else if (a >= x_hi_)
        v = eval_asymptotic(x);
    else
        v = eval_integral(x);
    if (!(v > 0.0))
        throw std::runtime_error("mittag_leffler: evaluation underflowed to a nonpositive value");
    return v;
}

double MittagLefflerEvaluator::ratio(double freq_sq, double t, double T) const {
    require(std::isfinite(freq_sq) && freq_sq >= 0.0, "freq_sq must be >= 0");
    require(std::isfinite(t) && std::isfinite(T) && t > 0.0 && t <= T,
            "time arguments must satisfy 0 < t <= T");
    require(gamma_ < 1.0, "ratio requires gamma in (0, 1)");
    if (t == T || freq_sq == 0.0) return 1.0;
    const double a_t = freq_sq * std::pow(t, gamma_);
    const double a_T = freq_sq * std::pow(T, gamma_);
    const double scale = std::pow(T / t, gamma_);
    if (!std::isfinite(a_T))  // both tails reduce to 1/Gamma(1-g)
        return scale;
    double r;
    if (a_t >= x_hi_ && a_T >= x_hi_)
        r = scale * (asymptotic_tail_sum(a_t) / asymptotic_tail_sum(a_T));
    else
        r = (*this)(-a_t) / (*this)(-a_T);
    return std::max(r, 1.0);
}

double ml_e_gamma_1(double gamma, double x) {
    static std::mutex mu;
    static std::map<double, std::shared_ptr<const MittagLefflerEvaluator>> cache;
    std::shared_ptr<const MittagLefflerEvaluator> ev;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(gamma);
        if (it == cache.end()) {
            ev = std::make_shared<MittagLefflerEvaluator>(gamma);
            cache.emplace(gamma, ev);
        } else {
            ev = it->second;
        }
    }
    return (*ev)(x);
}

double ml_ratio(double gamma, double freq_sq, double t, double T) {
    require(std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0,
            "ratio requires gamma in (0, 1)");
    MittagLefflerEvaluator ev(gamma);
    return ev.ratio(freq_sq, t, T);
}

PsiApprox::PsiApprox(double gamma, double h)
    : PsiApprox(gamma, h, [](double r) { return std::cos(r); }) {}

PsiApprox::PsiApprox(double gamma, double h, std::function<double(double)> profile)
    : h_(h), profile_(std::move(profile)), eval_(gamma) {
    require(std::isfinite(h) && h >= 0.0 && h <= 0.5, "psi perturbation h must lie in [0, 1/2]");
}

double PsiApprox::operator()(double freq_abs, double t) const {
    require(std::isfinite(freq_abs) && freq_abs >= 0.0, "psi requires |xi| >= 0");
    require(std::isfinite(t) && t > 0.0, "psi is defined for t > 0");
    const double exact = eval_(-freq_abs * freq_abs * std::pow(t, eval_.gamma()));
    return exact * (1.0 + h_ * profile_(freq_abs));
}

PsiApprox build_psi_approx(double gamma, double h) { return PsiApprox(gamma, h); }

namespace {

double fbd_value(double b, double d, double x) {
    return (1.0 + x) * std::exp(-b * std::pow(x, d));
}

// phi(x) = log(b d) + (d-1) log x + log(1+x); stationary points of f_{b,d}
// solve phi(x) = 0.  Bisection on an interval where phi is monotone.
double bisect_phi(double b, double d, double lo, double hi) {
    auto phi = [&](double x) {
        return std::log(b * d) + (d - 1.0) * std::log(x) + std::log1p(x);
    };
    double flo = phi(lo);
    for (int i = 0; i < 500 && (hi - lo) > 1e-15 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = phi(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

FbdSup sup_fbd(double b, double d) {
    require(std::isfinite(b) && b > 0.0, "sup_fbd requires b > 0");
    require(std::isfinite(d) && d > 0.0, "sup_fbd requires d > 0");

    auto phi = [&](double x) {
        return std::log(b * d) + (d - 1.0) * std::log(x) + std::log1p(x);
    };

    double root = -1.0;
    if (d >= 1.0) {
        // phi increases from -inf to +inf: single stationary point, a maximum.
        double lo = 1e-300, hi = 1.0;
        if (phi(hi) < 0.0) {
            while (phi(hi) < 0.0 && hi < 1e300) hi *= 2.0;
            lo = hi / 2.0;
        }
        root = bisect_phi(b, d, lo, hi);
    } else {
        // phi dips to a single minimum at (1-d)/d; a local maximum of f exists
        // only if the dip crosses zero, and it is the larger root.
        const double x_m = (1.0 - d) / d;
        if (phi(x_m) <= 0.0) {
            double hi = std::max(2.0 * x_m, 1.0);
            while (phi(hi) < 0.0 && hi < 1e300) hi *= 2.0;
            root = bisect_phi(b, d, x_m, hi);
        }
    }

    FbdSup out;
    if (root > 0.0) {
        const double v = fbd_value(b, d, root);
        if (v > 1.0) {
            out.argmax = root;
            out.max_value = v;
            return out;
        }
    }
    return out;  // boundary: f(0) = 1
}

}  // namespace molback
