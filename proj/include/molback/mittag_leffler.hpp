// mittag_leffler.hpp
// Evaluation of the Mittag-Leffler function E_{gamma,1} on the closed negative
// real axis, stable ratios E(-l t^g)/E(-l T^g), the perturbed propagator
// psi_h, and the envelope maximum sup_{x>=0} (1+x) e^{-b x^d}.
#pragma once

#include <functional>
#include <utility>

namespace molback {

inline constexpr double kMlDefaultRelTol = 1e-12;

// Three-regime evaluator for E_{gamma,1}(x), x <= 0:
//   |x| <= series_threshold()      power series, extended-precision accumulation
//   |x| >= asymptotic_threshold()  asymptotic expansion -sum x^{-k}/Gamma(1-gamma k)
//   in between                     trapezoidal quadrature of the spectral density
//                                  K(r) = sin(pi g)/pi * r^{g-1} / (r^{2g} + 2 r^g cos(pi g) + 1)
// Thresholds are fixed per gamma: the series bound derives from the worst-case
// cancellation of the alternating sum in 80-bit accumulation, the asymptotic
// bound from the smallest optimally-truncated term.  gamma = 1 short-circuits
// to exp beyond the series range (the expansion degenerates there); it is
// admitted for oracle testing only.
class MittagLefflerEvaluator {
public:
    explicit MittagLefflerEvaluator(double gamma, double rel_tol = kMlDefaultRelTol);

    double gamma() const { return gamma_; }
    double rel_tol() const { return rel_tol_; }

    // E_{gamma,1}(x) for x <= 0; result in (0,1], equal to 1 iff x == 0.
    double operator()(double x) const;

    // E(-freq_sq t^g) / E(-freq_sq T^g) for 0 < t <= T; always >= 1.
    // Evaluated as a fused ratio of asymptotic sums when both arguments are
    // deep in the algebraic tail, so no intermediate quantity degrades.
    double ratio(double freq_sq, double t, double T) const;

    double series_threshold() const { return x_lo_; }
    double asymptotic_threshold() const { return x_hi_; }

    // Individual regimes without dispatch, exposed so the seam agreement can
    // be checked directly.  Arguments must lie where the regime is valid.
    double eval_series(double x) const;
    double eval_integral(double x) const;
    double eval_asymptotic(double x) const;

private:
    double gamma_ = 0;
    double rel_tol_ = kMlDefaultRelTol;
    double x_lo_ = 0;   // series regime: |x| <= x_lo_
    double x_hi_ = 0;   // asymptotic regime: |x| >= x_hi_
    double quad_step_ = 0;  // trapezoid step for the integral regime

    double asymptotic_tail_sum(double a) const;  // S(a) with E(-a) = S(a)/a
};

// Convenience wrappers over a small evaluator cache (thread-safe).
double ml_e_gamma_1(double gamma, double x);
double ml_ratio(double gamma, double freq_sq, double t, double T);

// Perturbed propagator psi_h(r, t) = E_{gamma,1}(-r^2 t^g) * (1 + h*chi(r)),
// |chi| <= 1, 0 <= h <= 1/2.  Positive everywhere, relative deviation from the
// exact propagator bounded by h with equality attained on a dense set of r.
class PsiApprox {
public:
    PsiApprox(double gamma, double h);
    PsiApprox(double gamma, double h, std::function<double(double)> profile);

    double gamma() const { return eval_.gamma(); }
    double h() const { return h_; }

    // psi_h(r, t), r = |xi| >= 0, t > 0.
    double operator()(double freq_abs, double t) const;

private:
    double h_;
    std::function<double(double)> profile_;  // chi; default cos
    MittagLefflerEvaluator eval_;
};

PsiApprox build_psi_approx(double gamma, double h);

// Maximum of f_{b,d}(x) = (1+x) e^{-b x^d} over x >= 0, located by bracketing
// the stationarity condition and comparing against the boundary value f(0)=1.
// Scales like (d e)^{-1/d} b^{-1/d} as b -> 0.
struct FbdSup {
    double argmax = 0;
    double max_value = 1;
};

FbdSup sup_fbd(double b, double d);

}  // namespace molback
