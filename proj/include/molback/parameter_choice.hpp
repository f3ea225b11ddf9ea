// parameter_choice.hpp
// A-priori rule, Morozov discrepancy functional and its geometric search,
// plus a bisection refinement exploiting the strict monotonicity of
// v(alpha) = ||g_delta - M_alpha g_delta||.
#pragma once

#include <vector>

#include "molback/grid.hpp"
#include "molback/operators.hpp"

namespace molback {

struct MorozovConfig {
    double theta = 1.01;   // > 1
    double q = 0.99;       // in (0, 1)
    double alpha0 = 10.0;  // > 0
    int max_iters = 5000;  // >= 1
};

void validate(const MorozovConfig& cfg);

// (h + delta/E)^{1/(p+2)}.
double apriori_alpha(double delta, double E, double p, double h);

// v(alpha) for fixed data and mollifier, as a reusable frequency-domain form:
// one transform up front, then each evaluation is a weighted sum.
class DiscrepancyCurve {
public:
    DiscrepancyCurve(const RealField& gdelta, const MollifierParams& mp);

    double operator()(double alpha) const;

    // lim_{alpha->inf} v(alpha): the data norm less the zero-frequency node,
    // which the mollifier symbol leaves untouched for every alpha.
    double sup_value() const { return sup_; }

private:
    double tau_, s_;
    double sup_ = 0;
    std::vector<double> weight_;     // |g_hat|^2 times the frequency measure
    std::vector<double> rho_pow_s_;  // |xi|^s per node
};

// ||(1 - e^{-tau (alpha |xi|)^s}) g_hat||; equals
// l2_norm(gdelta - mollify(gdelta, alpha, mp)) by discrete Parseval.
double discrepancy(const RealField& gdelta, double alpha, const MollifierParams& mp);

// true iff 0 < theta*delta < ||gdelta||.
bool check_noise_condition(const RealField& gdelta, double delta, double theta);

// First alpha in {alpha0 q^k} with v(alpha) <= theta*delta; hence
// v(alpha) <= theta*delta < v(alpha/q) whenever at least one step ran.
double morozov_geometric(const RealField& gdelta, double delta, const MollifierParams& mp,
                         const MorozovConfig& cfg);

// alpha with |v(alpha) - theta*delta| <= rel_tol * theta*delta, by bisection
// on the strictly increasing v; the bracket is grown geometrically first and
// a failure to bracket (theta*delta at or above sup v) is reported.
double morozov_bisect(const RealField& gdelta, double delta, const MollifierParams& mp,
                      double theta, double rel_tol);

}  // namespace molback
