#include "molback/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "molback/mittag_leffler.hpp"

namespace molback {

namespace {

// e^{x^2} erfc(x) without overflow (asymptotic tail beyond x = 5).
double erfcx(double x) {
    if (x < 5.0) return std::exp(x * x) * std::erfc(x);
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 64; ++k) {
        const double next = term * (2 * k - 1) * inv2x2;
        if (next >= std::abs(term)) break;
        term = next;
        sum += (k % 2 == 0) ? term : -term;
        if (term < 1e-18 * sum) break;
    }
    return sum / (x * std::sqrt(std::numbers::pi));
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

std::vector<VerifyCheck> run_verification() {
    std::vector<VerifyCheck> out;
    auto add = [&](const std::string& name, double measured, double bound, bool below = true) {
        out.push_back({name, below ? measured <= bound : measured >= bound, measured, bound});
    };

    {
        MittagLefflerEvaluator ev(1.0);
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = -30.0 * i / 1000.0;
            worst = std::max(worst, rel(ev(x), std::exp(x)));
        }
        add("ml exp identity (gamma=1, x in [-30,0])", worst, 1e-10);
    }
    {
        MittagLefflerEvaluator ev(0.5);
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double y = 25.0 * i / 1000.0;
            worst = std::max(worst, rel(ev(-y), erfcx(y)));
        }
        add("ml erfc identity (gamma=1/2, x in [-25,0])", worst, 1e-8);
    }
    {
        double worst = 0.0;
        for (double g : {0.2, 0.5, 0.8, 0.9}) {
            MittagLefflerEvaluator ev(g);
            const double xl = ev.series_threshold(), xh = ev.asymptotic_threshold();
            worst = std::max(worst, rel(ev.eval_series(-xl), ev.eval_integral(-xl)));
            worst = std::max(worst, rel(ev.eval_asymptotic(-xh), ev.eval_integral(-xh)));
        }
        add("ml regime seam continuity", worst, 1e-11);
    }
    {
        bool mono = true;
        double ratio_worst = 0.0;
        for (double g : {0.2, 0.5, 0.8}) {
            MittagLefflerEvaluator ev(g);
            double prev = 0.0, bmin = 1e300, bmax = 0.0;
            for (int i = 1200; i >= 0; --i) {
                const double a = std::exp(std::log(1e-6) + (std::log(1e6) - std::log(1e-6)) *
                                                               i / 1200.0);
                const double v = ev(-a);
                mono = mono && v >= prev && v > 0.0 && v <= 1.0;
                prev = v;
                const double b = (1.0 + a) * v;
                bmin = std::min(bmin, b);
                bmax = std::max(bmax, b);
            }
            ratio_worst = std::max(ratio_worst, bmax / bmin);
        }
        out.push_back({"ml monotone and positive on (-inf,0]", mono, mono ? 1.0 : 0.0, 1.0});
        add("ml (1-x)E(x) bounded ratio", ratio_worst, 1e3);
    }
    {
        MittagLefflerEvaluator ev(0.7);
        double worst = 1e300;
        for (int i = 0; i <= 400; ++i) {
            const double lam = std::pow(10.0, 8.0 * i / 400.0) - 1.0;
            for (double t : {0.05, 0.4, 0.97})
                worst = std::min(worst, ev.ratio(lam, t, 1.0));
        }
        add("ml ratio >= 1", worst, 1.0, false);
    }
    {
        const FbdSup r = sup_fbd(0.1, 1.0);
        const double want = 10.0 * std::exp(-0.9);
        add("sup_fbd closed form at d=1", rel(r.max_value, want), 1e-10);
    }
    for (double d : {0.5, 1.0, 2.0}) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int e = 1; e <= 6; ++e) {
            const double x = std::log(std::pow(10.0, -e));
            const double y = std::log(sup_fbd(std::pow(10.0, -e), d).max_value);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (6 * sxy - sx * sy) / (6 * sxx - sx * sx);
        add("sup_fbd log-log slope vs -1/d (d=" + std::to_string(d) + ")",
            std::abs(slope + 1.0 / d), 0.05);
    }
    return out;
}

}  // namespace molback
