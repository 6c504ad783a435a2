#include <cmath>
#include <random>

#include "doctest.h"
#include "rrb/estimators.hpp"
#include "rrb/risk.hpp"

using namespace rrb;

namespace {

// Frozen from a symbolic expansion of r1 - r2 at n = 4, b = 2.
struct GapPoint {
    double k;
    double gap;
};
constexpr GapPoint kGaps[] = {
    {1.0, -0.01875},
    {10.0, -0.0015663109756097561},
    {100.0, -1.5625389650872818e-4},
    {1e4, -1.5625000039e-6},
    {1e6, -1.5625000000004e-8},
};
// lim k * gap = -(b - 1)^2 / (b^2 n^2)
constexpr double kGapLimit = -1.0 / 64.0;

struct Stats {
    double mean = 0.0;
    double se = 0.0;
};

template <class F>
Stats monte_carlo(int draws, F&& sample) {
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double v = sample();
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / draws;
    const double var = (sum2 - draws * mean * mean) / (draws - 1);
    return {mean, std::sqrt(var / draws)};
}

}  // namespace

TEST_CASE("risk_linear examples") {
    for (double delta : {0.3, 2.0, 17.0}) {
        CHECK(risk_linear({0.0, delta}, delta, 4) == 0.0);
    }
    for (int n = 2; n <= 9; ++n) {
        CHECK(risk_linear({1.0 / (n - 1), 0.0}, 3.0, n) == doctest::Approx(1.0 / (n - 1)).epsilon(1e-14));
    }
    CHECK(risk_linear({0.2, 0.5}, 2.0, 4, LossWeight::unscaled) ==
          doctest::Approx(4.0 * risk_linear({0.2, 0.5}, 2.0, 4)).epsilon(1e-15));
    CHECK_THROWS_AS(risk_linear({0.2, 0.5}, 0.0, 4), DomainError);
    CHECK_THROWS_AS(risk_linear({0.2, 0.5}, 1.0, 1), DomainError);
    CHECK_THROWS_AS(risk_linear({NAN, 0.5}, 1.0, 4), DomainError);
}

TEST_CASE("risk_linear matches Monte Carlo over Gamma(n - 1, delta) ranges") {
    std::mt19937_64 gen(31);
    std::gamma_distribution<double> range(3.0, 2.0);
    const Stats st = monte_carlo(1000000, [&] {
        const double e = 0.2 * range(gen) + 0.5;
        return (e - 2.0) * (e - 2.0) / 4.0;
    });
    CHECK(std::fabs(st.mean - risk_linear({0.2, 0.5}, 2.0, 4)) < 3.0 * st.se);
}

TEST_CASE("risk_linear decomposes into variance and bias of the matching estimator") {
    const PriorParams prior{3.0, 5.0};
    for (int n = 2; n <= 8; ++n) {
        for (double delta : {0.5, 2.0, 7.0}) {
            // bayes_quadratic = R / (a+n) + b / (a+n)
            const Moments q = analytic_moments(EstimatorId::bayes_quadratic, delta, n, prior);
            const LinearEstimator lin{1.0 / (prior.a + n), prior.b / (prior.a + n)};
            CHECK(risk_linear(lin, delta, n) == doctest::Approx(q.mse / (delta * delta)).epsilon(1e-12));
            const Moments u = analytic_moments(EstimatorId::mle_urr, delta, n, prior);
            CHECK(risk_linear({1.0 / (n - 1), 0.0}, delta, n) ==
                  doctest::Approx(u.mse / (delta * delta)).epsilon(1e-12));
        }
    }
}

TEST_CASE("bayes_risk_linear examples") {
    for (int n = 2; n <= 6; ++n) {
        for (double k : {0.5, 1.0, 10.0}) {
            CHECK(bayes_risk_linear({1.0 / n, 1.0 / n}, n, PriorParams{1.0 / k, 2.0}) ==
                  doctest::Approx(bayes_risk_r2(k, n, 2.0)).epsilon(1e-13));
        }
    }
    const double no_offset = std::pow(0.3 * 3 - 1.0, 2) + 0.09 * 3;
    CHECK(bayes_risk_linear({0.3, 0.0}, 4, PriorParams{3.0, 5.0}) == doctest::Approx(no_offset));
    CHECK(bayes_risk_linear({0.3, 0.0}, 4, PriorParams{0.4, 50.0}) == doctest::Approx(no_offset));
    CHECK_THROWS_AS(bayes_risk_linear({0.3, 0.1}, 4, PriorParams{2.0, 1.0}, LossWeight::unscaled),
                    DomainError);
}

TEST_CASE("bayes_risk_linear matches nested Monte Carlo on a grid of (m, d)") {
    const PriorParams prior{3.0, 5.0};
    const int n = 4;
    const LinearEstimator grid[] = {{0.2, 0.5}, {0.0, 1.0}, {0.25, 0.25}, {1.0 / 7.0, 5.0 / 7.0}, {0.5, 0.0}};
    std::mt19937_64 gen(37);
    std::gamma_distribution<double> precision(prior.a, 1.0 / prior.b);
    for (const auto& est : grid) {
        const Stats st = monte_carlo(1000000, [&] {
            const double delta = 1.0 / precision(gen);
            std::gamma_distribution<double> range(n - 1.0, delta);
            const double e = est.m * range(gen) + est.d;
            return (e - delta) * (e - delta) / (delta * delta);
        });
        INFO("m=" << est.m << " d=" << est.d);
        CHECK(std::fabs(st.mean - bayes_risk_linear(est, n, prior)) < 3.0 * st.se);
    }
}

TEST_CASE("unscaled bayes risk matches nested Monte Carlo") {
    const PriorParams prior{6.0, 5.0};
    std::mt19937_64 gen(41);
    std::gamma_distribution<double> precision(prior.a, 1.0 / prior.b);
    const Stats st = monte_carlo(1000000, [&] {
        const double delta = 1.0 / precision(gen);
        std::gamma_distribution<double> range(3.0, delta);
        const double e = 0.2 * range(gen) + 0.5;
        return (e - delta) * (e - delta);
    });
    CHECK(std::fabs(st.mean - bayes_risk_linear({0.2, 0.5}, 4, prior, LossWeight::unscaled)) <
          3.0 * st.se);
}

TEST_CASE("r1 and r2") {
    // r1 collapses to k / (1 + kn)
    for (double k : {0.1, 1.0, 7.0, 1e3}) {
        CHECK(bayes_risk_r1(k, 4, 2.0) == doctest::Approx(k / (1.0 + 4.0 * k)).epsilon(1e-12));
    }
    CHECK(bayes_risk_r2(1.0, 4, 2.0) == doctest::Approx(0.25 - 2.0 / 32.0 + 2.0 / 64.0));
    CHECK_THROWS_AS(r1_r2_gap(0.0, 4, 2.0), DomainError);
    CHECK_THROWS_AS(r1_r2_gap(1.0, 4, -2.0), DomainError);
}

TEST_CASE("r1 - r2 vanishes like 1/k") {
    double prev = INFINITY;
    for (const auto& p : kGaps) {
        const double gap = r1_r2_gap(p.k, 4, 2.0);
        INFO("k=" << p.k);
        CHECK(gap == doctest::Approx(p.gap).epsilon(1e-7));
        CHECK(std::fabs(gap) < prev);
        prev = std::fabs(gap);
    }
    CHECK(std::fabs(r1_r2_gap(1e6, 4, 2.0)) < 1e-4);
    CHECK(std::fabs(1e6 * r1_r2_gap(1e6, 4, 2.0) - kGapLimit) < 1e-6);
    CHECK(std::fabs(1e4 * r1_r2_gap(1e4, 4, 2.0) - kGapLimit) < 1e-6);
}

TEST_CASE("classify_admissible") {
    CHECK(classify_admissible({1.0 / 7.0, 5.0 / 7.0}, 4) == Admissibility::admissible_interior);
    CHECK(classify_admissible({0.25, 0.25}, 4) == Admissibility::admissible_boundary);
    CHECK(classify_admissible({0.5, 1.0}, 4) == Admissibility::outside_theorem);
    CHECK(classify_admissible({0.0, 1.0}, 4) == Admissibility::admissible_interior);
    CHECK(classify_admissible({0.1, 0.0}, 4) == Admissibility::outside_theorem);
    CHECK(classify_admissible({-0.1, 1.0}, 4) == Admissibility::outside_theorem);
    CHECK(classify_admissible({1.0 / 3.0, 1.0}, 3) == Admissibility::admissible_boundary);
    CHECK(to_string(Admissibility::admissible_boundary) == "admissible_boundary");
}

TEST_CASE("every Bayes rule with b > 0 is admissible_interior (random priors)") {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> u(1e-3, 50.0);
    std::uniform_int_distribution<int> un(2, 100);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(gen);
        const double b = u(gen);
        const int n = un(gen);
        CHECK(classify_admissible({1.0 / (a + n), b / (a + n)}, n) == Admissibility::admissible_interior);
    }
}
