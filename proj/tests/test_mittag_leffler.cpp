#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "molback/mittag_leffler.hpp"
#include "support/ml_reference.hpp"
#include "support/oracles.hpp"

using namespace molback;
using molback::testing::erfcx;
using molback::testing::fit_line;
using molback::testing::golden_max;
using molback::testing::ml_reference;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> xs(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) xs[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return xs;
}

}  // namespace

TEST_CASE("ml_e_gamma_1 pinned values") {
    CHECK(ml_e_gamma_1(0.8, 0.0) == 1.0);
    CHECK(rel_err(ml_e_gamma_1(1.0, -2.0), std::exp(-2.0)) < 1e-12);
    CHECK(rel_err(ml_e_gamma_1(0.5, -1.0), std::exp(1.0) * std::erfc(1.0)) < 1e-8);
    // frozen from the erfc oracle: e^1 erfc(1)
    CHECK(ml_e_gamma_1(0.5, -1.0) == doctest::Approx(0.42758357615580472).epsilon(1e-12));
    CHECK(rel_err(ml_e_gamma_1(0.8, -50.0), ml_reference(0.8, -50.0, 1e-18)) < 1e-12);
}

TEST_CASE("ml_e_gamma_1 domain errors") {
    CHECK_THROWS_AS(ml_e_gamma_1(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(ml_e_gamma_1(1.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(ml_e_gamma_1(-0.3, -1.0), std::domain_error);
    CHECK_THROWS_AS(ml_e_gamma_1(0.8, 0.5), std::domain_error);
    CHECK_THROWS_AS(ml_e_gamma_1(0.8, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(ml_e_gamma_1(0.8, -std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(MittagLefflerEvaluator(0.8, 1e-3), std::domain_error);
}

TEST_CASE("range, monotonicity and Lemma-2.1-style boundedness") {
    for (double gamma : {0.2, 0.5, 0.8}) {
        MittagLefflerEvaluator ev(gamma);
        const auto xs = log_spaced(1e-6, 1e6, 1200);
        double prev = 0.0;  // values increase as x increases toward 0
        double ratio_min = std::numeric_limits<double>::infinity();
        double ratio_max = 0.0;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
            const double v = ev(-*it);
            CHECK(v > 0.0);
            CHECK(v < 1.0);
            CHECK(v >= prev);
            prev = v;
            const double bounded = (1.0 + *it) * v;  // (1 - x) E(x) at x = -|x|
            ratio_min = std::min(ratio_min, bounded);
            ratio_max = std::max(ratio_max, bounded);
        }
        CHECK(ratio_min > 0.0);
        CHECK(ratio_max / ratio_min < 1e3);
    }
    CHECK(ml_e_gamma_1(0.3, 0.0) == 1.0);
}

TEST_CASE("oracle identities over the acceptance ranges") {
    SUBCASE("gamma = 1 against exp") {
        MittagLefflerEvaluator ev(1.0);
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = -30.0 * i / 1000.0;
            worst = std::max(worst, rel_err(ev(x), std::exp(x)));
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("gamma = 1/2 against erfcx") {
        MittagLefflerEvaluator ev(0.5);
        double worst = 0.0;
        for (int i = 0; i <= 500; ++i) {
            const double y = 5.0 * i / 500.0;  // E(-y) = erfcx(y)
            worst = std::max(worst, rel_err(ev(-y), erfcx(y)));
        }
        CHECK(worst < 1e-8);
        for (int i = 0; i <= 500; ++i) {
            const double x = -25.0 * i / 500.0;
            worst = std::max(worst, rel_err(ev(x), erfcx(-x)));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("regime seams agree to 1e-12") {
    for (double gamma : {0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.95}) {
        CAPTURE(gamma);
        MittagLefflerEvaluator ev(gamma);
        const double xl = ev.series_threshold();
        const double xh = ev.asymptotic_threshold();
        CHECK(xl > 0.0);
        CHECK(xh >= xl);
        CHECK(rel_err(ev.eval_series(-xl), ev.eval_integral(-xl)) < 1e-12);
        CHECK(rel_err(ev.eval_asymptotic(-xh), ev.eval_integral(-xh)) < 1e-12);
    }
}

TEST_CASE("dense sweep against the high-precision reference") {
    for (double gamma : {0.2, 0.5, 0.8, 0.9}) {
        CAPTURE(gamma);
        MittagLefflerEvaluator ev(gamma);
        double worst = 0.0;
        for (double a : log_spaced(1e-3, 1e4, 140))
            worst = std::max(worst, rel_err(ev(-a), ml_reference(gamma, -a, 1e-16)));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("ml_reference cross-checks") {
    using molback::testing::ml_reference_integral;
    using molback::testing::ml_reference_series;
    CHECK(ml_reference(0.8, 0.0, 1e-14) == 1.0);
    CHECK(rel_err(ml_reference(1.0, -1.0, 1e-14), std::exp(-1.0)) < 1e-14);
    CHECK(rel_err(ml_reference(0.5, -2.0, 1e-12), std::exp(4.0) * std::erfc(2.0)) < 1e-12);
    // Route overlap: series and quadrature are independent computations.
    CHECK(rel_err(ml_reference_series(0.5, -20.0, 1e-20),
                  ml_reference_integral(0.5, -20.0, 1e-18)) < 2e-15);
    CHECK(rel_err(ml_reference_series(0.2, -3.5, 1e-20),
                  ml_reference_integral(0.2, -3.5, 1e-18)) < 2e-15);
    CHECK(rel_err(ml_reference_series(0.8, -100.0, 1e-20),
                  ml_reference_integral(0.8, -100.0, 1e-18)) < 2e-15);
    CHECK_THROWS(ml_reference(0.5, -1.0, 1e-60));
}

TEST_CASE("ml_ratio") {
    SUBCASE("pinned and reference values") {
        CHECK(ml_ratio(0.8, 7.0, 1.0, 1.0) == 1.0);
        CHECK(ml_ratio(0.8, 0.0, 0.3, 1.0) == 1.0);
        const double num = ml_reference(0.8, -100.0 * std::pow(0.5, 0.8), 1e-18);
        const double den = ml_reference(0.8, -100.0, 1e-18);
        CHECK(rel_err(ml_ratio(0.8, 100.0, 0.5, 1.0), num / den) < 2e-12);
    }
    SUBCASE("fused large-frequency path against the reference") {
        MittagLefflerEvaluator ev(0.8);
        for (double lam : {1e4, 1e6, 1e8}) {
            CAPTURE(lam);
            const double num = ml_reference(0.8, -lam * std::pow(0.5, 0.8), 1e-18);
            const double den = ml_reference(0.8, -lam, 1e-18);
            CHECK(rel_err(ev.ratio(lam, 0.5, 1.0), num / den) < 2e-12);
        }
        CHECK(std::isfinite(ev.ratio(1e300, 0.5, 1.0)));
    }
    SUBCASE("ratio >= 1 on a sample") {
        MittagLefflerEvaluator ev(0.6);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ut(1e-6, 1.0), ul(0.0, 9.0);
        for (int i = 0; i < 2000; ++i) {
            const double lam = std::pow(10.0, ul(rng)) - 1.0;
            CHECK(ev.ratio(lam, ut(rng), 1.0) >= 1.0);
        }
    }
    SUBCASE("domain errors") {
        MittagLefflerEvaluator ev(0.8);
        CHECK_THROWS_AS(ev.ratio(1.0, 0.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(ev.ratio(1.0, -0.1, 1.0), std::domain_error);
        CHECK_THROWS_AS(ev.ratio(1.0, 1.5, 1.0), std::domain_error);
        CHECK_THROWS_AS(ev.ratio(-1.0, 0.5, 1.0), std::domain_error);
        CHECK_THROWS_AS(MittagLefflerEvaluator(1.0).ratio(1.0, 0.5, 1.0), std::domain_error);
    }
}

TEST_CASE("psi_h surrogate") {
    SUBCASE("h = 0 reproduces the exact propagator bit for bit") {
        PsiApprox psi = build_psi_approx(0.8, 0.0);
        MittagLefflerEvaluator ev(0.8);
        for (double r : {0.0, 0.3, 2.0, 11.0, 40.0})
            for (double t : {0.2, 0.5, 1.0})
                CHECK(psi(r, t) == ev(-r * r * std::pow(t, 0.8)));
    }
    SUBCASE("relative deviation bounded by h and attained") {
        const double h = 0.1;
        PsiApprox psi = build_psi_approx(0.8, h);
        MittagLefflerEvaluator ev(0.8);
        double sup_dev = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double r = 40.0 * i / 400.0;
            for (double t : {0.25, 1.0}) {
                const double exact = ev(-r * r * std::pow(t, 0.8));
                const double dev = std::abs(psi(r, t) - exact) / exact;
                CHECK(dev <= h * (1.0 + 1e-12));
                CHECK(psi(r, t) > 0.0);
                sup_dev = std::max(sup_dev, dev);
            }
        }
        CHECK(sup_dev > 0.95 * h);  // cos attains +-1 on a dense set
        CHECK(psi(0.0, 1.0) == doctest::Approx(1.1).epsilon(1e-15));
    }
    SUBCASE("h outside [0, 1/2] rejected") {
        CHECK_THROWS_AS(build_psi_approx(0.8, -0.01), std::domain_error);
        CHECK_THROWS_AS(build_psi_approx(0.8, 0.51), std::domain_error);
    }
}

TEST_CASE("sup_fbd") {
    SUBCASE("closed form at d = 1") {
        const FbdSup r = sup_fbd(0.1, 1.0);
        CHECK(rel_err(r.argmax, 9.0) < 1e-10);
        CHECK(rel_err(r.max_value, 10.0 * std::exp(-0.9)) < 1e-10);
        const FbdSup boundary = sup_fbd(2.0, 1.0);
        CHECK(boundary.argmax == 0.0);
        CHECK(boundary.max_value == 1.0);
    }
    SUBCASE("asymptotic constant at d = 2") {
        const FbdSup r = sup_fbd(1e-3, 2.0);
        CHECK(std::abs(r.max_value * std::sqrt(1e-3) - 1.0 / std::sqrt(2.0 * std::exp(1.0))) <
              0.05 / std::sqrt(2.0 * std::exp(1.0)));
    }
    SUBCASE("golden-section cross-check") {
        for (auto [b, d] : std::vector<std::pair<double, double>>{
                 {0.03, 1.7}, {0.2, 0.6}, {1e-4, 3.0}, {0.5, 0.9}, {1e-2, 0.5}}) {
            CAPTURE(b);
            CAPTURE(d);
            const FbdSup r = sup_fbd(b, d);
            auto f = [&](double x) { return (1.0 + x) * std::exp(-b * std::pow(x, d)); };
            const auto [xg, fg] = golden_max(f, 0.0, std::max(10.0, 4.0 * r.argmax + 10.0));
            CHECK(rel_err(r.max_value, std::max(fg, 1.0)) < 1e-9);
        }
    }
    SUBCASE("log-log slope is -1/d") {
        for (double d : {0.5, 1.0, 2.0}) {
            CAPTURE(d);
            std::vector<double> lb, lf;
            for (int e = 1; e <= 6; ++e) {
                const double b = std::pow(10.0, -e);
                lb.push_back(std::log(b));
                lf.push_back(std::log(sup_fbd(b, d).max_value));
            }
            const auto fit = fit_line(lb, lf);
            CHECK(std::abs(fit.slope + 1.0 / d) < 0.05);
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(sup_fbd(0.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(sup_fbd(1.0, -2.0), std::domain_error);
    }
}
