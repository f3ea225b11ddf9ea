// operators.hpp
// Forward sub-diffusion evolution, frequency-domain mollification, the
// regularized backward solvers (smooth kernel and spectral cut-off baseline),
// and the source-condition diagnostic.
#pragma once

#include <variant>

#include "molback/grid.hpp"
#include "molback/mittag_leffler.hpp"

namespace molback {

// Mollifier symbol e^{-tau (alpha |xi|)^s} with two free positive parameters.
struct MollifierParams {
    double tau = 0.5;
    double s = 4.0;
};

void validate(const MollifierParams& mp);

// Sub-diffusion model (gamma, T) with its propagator backend: the exact
// Mittag-Leffler evaluator or the h-perturbed surrogate psi_h.  The
// propagator at t = 0 is 1 by definition in either backend.
class DiffusionModel {
public:
    DiffusionModel(double gamma, double T);          // exact backend
    DiffusionModel(const PsiApprox& psi, double T);  // perturbed backend

    double gamma() const;
    double final_time() const { return T_; }
    bool perturbed() const;
    double perturbation() const;  // h (0 for the exact backend)

    // psi(|xi|, t) for t in [0, T].
    double propagator(double freq_abs, double t) const;

    // psi(|xi|, t) / psi(|xi|, T), with psi(., 0) := 1; always >= 1 exact-side.
    // Evaluated as a fused ratio so no intermediate leaves representable range.
    double backward_ratio(double freq_abs, double t) const;

    // E_{gamma,1}(-|xi|^2 T^gamma) from the exact evaluator (diagnostics).
    double exact_final_propagator(double freq_abs) const;

private:
    double T_;
    std::variant<MittagLefflerEvaluator, PsiApprox> backend_;

    void check_time(double t) const;
};

// u(., t) from u(., 0): multiplies the spectrum by the propagator.
RealField forward_solve(const RealField& u0, const DiffusionModel& model, double t);

// M_alpha f: multiplies the spectrum by e^{-tau (alpha |xi|)^s}; alpha = 0 is
// the identity and the operation is never expansive in L2.
RealField mollify(const RealField& f, double alpha, const MollifierParams& mp);

// Mollified backward reconstruction at time t from final data gdelta:
//   u_alpha(xi, t) = e^{-tau (alpha |xi|)^s} * psi(|xi|, t)/psi(|xi|, T) * g_hat(xi).
// alpha = 0 (unregularized inversion) is rejected.
RealField regularized_backward(const RealField& gdelta, double alpha,
                               const DiffusionModel& model, const MollifierParams& mp,
                               double t);

// Spectral cut-off baseline: the mollifier is replaced by the indicator of the
// per-axis box {|xi_j| <= xi_max} (Dirichlet-kernel convention).
RealField spectral_cutoff_backward(const RealField& gdelta, double xi_max,
                                   const DiffusionModel& model, double t);

// w with w_hat = E_{gamma,1}(-|xi|^2 T^gamma)^{-p/2} u0_hat: the representer of
// the Hoelder source condition equivalent to H^p smoothness.  Diagnostic only.
RealField source_representer(const RealField& u0, const DiffusionModel& model, double p);

}  // namespace molback
