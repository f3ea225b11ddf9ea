#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "molback/experiments.hpp"
#include "molback/fourier.hpp"
#include "molback/parameter_choice.hpp"

using namespace molback;

namespace {

const MollifierParams kMp{0.5, 4.0};

// Example-1 style noisy data on a small grid.
struct TestData {
    RealField gdelta;
    double delta;
};

TestData make_data(double perc, std::uint64_t seed, int n = 128) {
    const GridSpec g = make_grid(2, 10.0, n);
    const DiffusionModel model(0.8, 1.0);
    const RealField u0 = RealField::sample(g, [](double x, double y) {
        return std::exp(-x * x - y * y);
    });
    const RealField gexact = forward_solve(u0, model, 1.0);
    const double eta = eta_for_percent_noise(gexact, perc, seed);
    NoisyData nd = add_noise(gexact, eta, seed);
    return {std::move(nd.gdelta), nd.delta};
}

}  // namespace

TEST_CASE("apriori_alpha") {
    CHECK(apriori_alpha(1e-3, 1.0, 2.0, 0.0) == doctest::Approx(std::pow(1e-3, 0.25)).epsilon(1e-14));
    CHECK(apriori_alpha(0.0, 1.0, 2.0, 1e-4) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(apriori_alpha(0.01, 2.0, 4.0, 0.0) ==
          doctest::Approx(std::pow(0.005, 1.0 / 6.0)).epsilon(1e-14));
    CHECK_THROWS_AS(apriori_alpha(0.0, 1.0, 2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(apriori_alpha(1e-3, 0.0, 2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(apriori_alpha(1e-3, 1.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(apriori_alpha(-1e-3, 1.0, 2.0, 0.0), std::domain_error);
}

TEST_CASE("discrepancy functional") {
    const TestData td = make_data(1.0, 42, 64);
    SUBCASE("v(0) = 0") { CHECK(discrepancy(td.gdelta, 0.0, kMp) == 0.0); }
    SUBCASE("v(inf) approaches the data norm without the zero node") {
        const DiscrepancyCurve v(td.gdelta, kMp);
        const double big = v(1e6);
        CHECK(big == doctest::Approx(v.sup_value()).epsilon(1e-12));
        CHECK(big < l2_norm(td.gdelta));
        CHECK(big > 0.99 * v.sup_value());
    }
    SUBCASE("matches the physical-space form through mollify") {
        for (double alpha : {0.1, 0.5, 2.0}) {
            CAPTURE(alpha);
            const double via_freq = discrepancy(td.gdelta, alpha, kMp);
            RealField diff = td.gdelta;
            const RealField sm = mollify(td.gdelta, alpha, kMp);
            for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= sm.values[i];
            CHECK(via_freq == doctest::Approx(l2_norm(diff)).epsilon(1e-12));
        }
    }
    SUBCASE("direct frequency-domain oracle") {
        const SpectralField F = forward_ft(td.gdelta);
        const GridSpec& g = td.gdelta.grid;
        const int n = g.points_per_axis;
        const double alpha = 0.5;
        double acc = 0.0;
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = 0; k2 < n; ++k2) {
                const double rho = std::hypot(g.freq_node(k1), g.freq_node(k2));
                const double m = 1.0 - std::exp(-kMp.tau * std::pow(alpha * rho, kMp.s));
                acc += m * m * std::norm(F.coeffs[static_cast<std::size_t>(k1) * n + k2]);
            }
        const double want = g.freq_spacing() * std::sqrt(acc);
        CHECK(discrepancy(td.gdelta, alpha, kMp) == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("monotone nondecreasing on a 100-point ladder") {
        const DiscrepancyCurve v(td.gdelta, kMp);
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double alpha = 1e-3 * std::pow(10.0 / 1e-3, i / 100.0);
            const double cur = v(alpha);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("check_noise_condition") {
    const GridSpec g = make_grid(2, 10.0, 32);
    RealField f = RealField::sample(g, [](double, double) { return 0.05; });  // ||f|| = 1
    CHECK(l2_norm(f) == doctest::Approx(1.0));
    CHECK(check_noise_condition(f, 0.5, 1.01));
    CHECK_FALSE(check_noise_condition(f, 1.0, 1.01));
    CHECK_FALSE(check_noise_condition(f, 0.0, 1.01));
    CHECK_THROWS_AS(check_noise_condition(f, -0.1, 1.01), std::domain_error);
    CHECK_THROWS_AS(check_noise_condition(f, 0.5, 1.0), std::domain_error);
}

TEST_CASE("morozov_geometric") {
    const MorozovConfig cfg{1.01, 0.99, 10.0, 5000};
    SUBCASE("reference configuration yields the bracket property") {
        const TestData td = make_data(1.0, 7);
        const double alpha = morozov_geometric(td.gdelta, td.delta, kMp, cfg);
        CHECK(alpha > 0.0);
        CHECK(alpha <= 10.0);
        const DiscrepancyCurve v(td.gdelta, kMp);
        CHECK(v(alpha) <= 1.01 * td.delta);
        CHECK(v(alpha / 0.99) > 1.01 * td.delta);
    }
    SUBCASE("returns alpha0 when the threshold is already met") {
        const TestData td = make_data(1.0, 7);
        const DiscrepancyCurve v(td.gdelta, kMp);
        const double big_delta = v(10.0) / 1.01 * 1.5;
        if (check_noise_condition(td.gdelta, big_delta, 1.01))
            CHECK(morozov_geometric(td.gdelta, big_delta, kMp, cfg) == 10.0);
    }
    SUBCASE("iteration limit reported") {
        const TestData td = make_data(1.0, 7, 32);
        const MorozovConfig tiny{1.01, 0.99, 10.0, 3};
        CHECK_THROWS_AS(morozov_geometric(td.gdelta, td.delta * 1e-4, kMp, tiny),
                        std::runtime_error);
    }
    SUBCASE("noise condition enforced") {
        const TestData td = make_data(1.0, 7, 32);
        CHECK_THROWS_AS(morozov_geometric(td.gdelta, 0.0, kMp, cfg), std::domain_error);
        CHECK_THROWS_AS(
            morozov_geometric(td.gdelta, 2.0 * l2_norm(td.gdelta), kMp, cfg), std::domain_error);
    }
    SUBCASE("invalid configs rejected") {
        const TestData td = make_data(1.0, 7, 32);
        CHECK_THROWS_AS(morozov_geometric(td.gdelta, td.delta, kMp, {0.99, 0.99, 10.0, 100}),
                        std::domain_error);
        CHECK_THROWS_AS(morozov_geometric(td.gdelta, td.delta, kMp, {1.01, 1.5, 10.0, 100}),
                        std::domain_error);
        CHECK_THROWS_AS(morozov_geometric(td.gdelta, td.delta, kMp, {1.01, 0.99, 0.0, 100}),
                        std::domain_error);
    }
}

TEST_CASE("morozov_bisect") {
    SUBCASE("hits the characterization and stays near the geometric pick") {
        const TestData td = make_data(1.0, 7);
        const double a_geo =
            morozov_geometric(td.gdelta, td.delta, kMp, MorozovConfig{1.01, 0.99, 10.0, 5000});
        const double a_bis = morozov_bisect(td.gdelta, td.delta, kMp, 1.01, 1e-6);
        const DiscrepancyCurve v(td.gdelta, kMp);
        CHECK(std::abs(v(a_bis) - 1.01 * td.delta) <= 1e-6 * 1.01 * td.delta);
        CHECK(a_bis <= a_geo / 0.99 * (1.0 + 1e-9));
        CHECK(a_bis >= a_geo * 0.99 * (1.0 - 1e-9));
    }
    SUBCASE("bracket extends upward for noise close to the data norm") {
        // Zero-mean data: sup v is essentially the full norm, so theta*delta
        // slightly below it is still reachable, just at a large alpha.
        const GridSpec g = make_grid(2, 10.0, 64);
        const RealField f = RealField::sample(g, [](double x, double y) {
            return std::sin(0.9 * x) * std::exp(-0.2 * (x * x + y * y));
        });
        const DiscrepancyCurve v(f, kMp);
        const double delta = 0.98 * v.sup_value() / 1.01;
        const double alpha = morozov_bisect(f, delta, kMp, 1.01, 1e-6);
        CHECK(alpha > 1.0);
        CHECK(std::abs(v(alpha) - 1.01 * delta) <= 1e-6 * 1.01 * delta);
    }
    SUBCASE("violated noise condition is a precondition error") {
        const TestData td = make_data(1.0, 7, 32);
        CHECK_THROWS_AS(morozov_bisect(td.gdelta, 2.0 * l2_norm(td.gdelta), kMp, 1.01, 1e-6),
                        std::domain_error);
        CHECK_THROWS_AS(morozov_bisect(td.gdelta, 0.0, kMp, 1.01, 1e-6), std::domain_error);
    }
    SUBCASE("bracket failure is reported, not clamped") {
        // Constant data: everything sits in the zero-frequency node, which
        // the mollifier never touches, so v never reaches theta*delta.
        const GridSpec g = make_grid(2, 10.0, 32);
        const RealField f = RealField::sample(g, [](double, double) { return 1.0; });
        CHECK_THROWS_AS(morozov_bisect(f, 0.5 * l2_norm(f) / 1.01, kMp, 1.01, 1e-6),
                        std::runtime_error);
    }
}

TEST_CASE("scale equivariance of the selected alpha") {
    const TestData td = make_data(1.0, 19, 64);
    const MorozovConfig cfg{1.01, 0.99, 10.0, 5000};
    const double a1 = morozov_geometric(td.gdelta, td.delta, kMp, cfg);
    const double b1 = morozov_bisect(td.gdelta, td.delta, kMp, 1.01, 1e-8);
    for (double c : {2.0, 1.7}) {
        CAPTURE(c);
        RealField scaled = td.gdelta;
        for (double& v : scaled.values) v *= c;
        const double a2 = morozov_geometric(scaled, c * td.delta, kMp, cfg);
        const double b2 = morozov_bisect(scaled, c * td.delta, kMp, 1.01, 1e-8);
        CHECK(std::abs(a2 - a1) <= 1e-10 * a1);
        CHECK(std::abs(b2 - b1) <= 1e-10 * b1);
    }
}

TEST_CASE("selected alpha shrinks with the noise level") {
    const MorozovConfig cfg{1.01, 0.99, 10.0, 5000};
    double prev = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 100;
    for (double perc : {4.0, 2.0, 1.0, 0.5}) {
        const TestData td = make_data(perc, seed++, 64);
        const double alpha = morozov_geometric(td.gdelta, td.delta, kMp, cfg);
        CHECK(alpha <= prev / 0.99);  // non-increasing up to one q step
        prev = alpha;
    }
}
