#include <cmath>
#include <cstring>

#include "doctest.h"
#include "rrb/rng.hpp"
#include "rrb/sim.hpp"

using namespace rrb;

namespace {

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

void check_identical(const SimResult& x, const SimResult& y) {
    REQUIRE(x.point.size() == y.point.size());
    for (std::size_t i = 0; i < x.point.size(); ++i) {
        CHECK(same_bits(x.point[i].average, y.point[i].average));
        CHECK(same_bits(x.point[i].average_se, y.point[i].average_se));
        CHECK(same_bits(x.point[i].empirical_mse, y.point[i].empirical_mse));
        CHECK(same_bits(x.point[i].mse_se, y.point[i].mse_se));
    }
    REQUIRE(x.interval.size() == y.interval.size());
    for (std::size_t i = 0; i < x.interval.size(); ++i) {
        CHECK(same_bits(x.interval[i].empirical_coverage, y.interval[i].empirical_coverage));
        CHECK(same_bits(x.interval[i].mean_length, y.interval[i].mean_length));
        CHECK(x.interval[i].failures == y.interval[i].failures);
    }
}

}  // namespace

TEST_CASE("Accumulator") {
    Accumulator a;
    for (double x : {1.0, 2.0, 3.0, 4.0}) a.add(x);
    CHECK(a.mean == 2.5);
    CHECK(a.variance() == doctest::Approx(5.0 / 3.0));
    Accumulator b;
    Accumulator c;
    b.add(1.0);
    b.add(2.0);
    c.add(3.0);
    c.add(4.0);
    b.merge(c);
    CHECK(b.count == 4);
    CHECK(b.mean == doctest::Approx(2.5));
    CHECK(b.variance() == doctest::Approx(5.0 / 3.0));
    Accumulator empty;
    b.merge(empty);
    CHECK(b.count == 4);
}

TEST_CASE("derive_seed gives distinct substreams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("SimConfig validation") {
    SimConfig c;
    c.prior = {3.0, 5.0};
    CHECK_NOTHROW(c.validate());
    c.reps = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.reps = 10;
    c.n_records = {1};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.n_records = {3};
    c.alpha_list = {1.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.alpha_list = {0.1};
    c.threads = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.threads = 1;
    c.estimators = {EstimatorId::mle_sample};
    CHECK_THROWS_AS(run_point_sim(c), ConfigError);
}

TEST_CASE("run_point_sim with a single repetition") {
    SimConfig c;
    c.delta_true = 2.0;
    c.n_records = {4};
    c.reps = 1;
    c.seed = 12345;
    c.prior = {3.0, 5.0};
    c.estimators = {EstimatorId::bayes_quadratic};
    const SimResult r = run_point_sim(c);
    REQUIRE(r.point.size() == 1);
    const RecordSummary recs = sample_records_direct(2.0, 4, derive_seed(12345, 0));
    const double est = estimate(EstimatorId::bayes_quadratic, recs, 4, c.prior).value;
    CHECK(r.point[0].average == est);
    CHECK(r.point[0].empirical_mse == doctest::Approx((est - 2.0) * (est - 2.0)).epsilon(1e-15));
}

TEST_CASE("run_point_sim agrees with analytic moments") {
    SimConfig c;
    c.delta_true = 2.0;
    c.n_records = {4};
    c.reps = 100000;
    c.seed = 2024;
    c.prior = {3.0, 5.0};
    c.estimators = {EstimatorId::mle_records, EstimatorId::mle_urr, EstimatorId::bayes_quadratic,
                    EstimatorId::bayes_squared, EstimatorId::bayes_absolute};
    const SimResult r = run_point_sim(c);
    for (const PointRow& row : r.point) {
        INFO(std::string(to_string(row.estimator)));
        REQUIRE(row.analytic.has_value());
        CHECK(std::fabs(row.average - row.analytic->mean) < 3.0 * row.average_se);
        CHECK(std::fabs(row.empirical_mse - row.analytic->mse) < 3.0 * row.mse_se);
        if (row.estimator == EstimatorId::bayes_squared) {
            CHECK(row.analytic->mean == doctest::Approx(2.2).epsilon(1e-14));
        }
    }
}

TEST_CASE("run_point_sim unbiased case a = 1, b = 0") {
    SimConfig c;
    c.delta_true = 1.0;
    c.n_records = {5};
    c.reps = 100000;
    c.seed = 99;
    c.prior = {1.0, 0.0};
    c.estimators = {EstimatorId::bayes_squared};
    const SimResult r = run_point_sim(c);
    CHECK(std::fabs(r.point[0].average - 1.0) < 3.0 * r.point[0].average_se);
}

TEST_CASE("run_interval_sim Bayesian coverage") {
    SimConfig c;
    c.n_records = {3};
    c.reps = 100000;
    c.seed = 7;
    c.prior = {3.0, 4.0};
    c.alpha_list = {0.10, 0.50};
    c.interval_kinds = {IntervalKind::equal_tails, IntervalKind::hpd_exact};
    const SimResult r = run_interval_sim(c);
    REQUIRE(r.interval.size() == 4);
    for (const IntervalRow& row : r.interval) {
        INFO(std::string(to_string(row.kind)) << " alpha=" << row.alpha);
        CHECK(row.failures == 0);
        const double tol = row.alpha == 0.10 ? 0.01 : 0.015;
        CHECK(std::fabs(row.empirical_coverage - (1.0 - row.alpha)) < tol);
    }
    // hpd_exact is never longer than equal_tails at matched alpha
    CHECK(r.interval[2].mean_length <= r.interval[0].mean_length);
    CHECK(r.interval[3].mean_length <= r.interval[1].mean_length);

    c.prior = {3.0, 0.0};
    CHECK_THROWS_AS(run_interval_sim(c), ConfigError);
}

TEST_CASE("simulation results do not depend on the thread count") {
    SimConfig c;
    c.delta_true = 2.0;
    c.n_records = {2, 4, 7};
    c.reps = 3 * kSimBlock + 17;
    c.seed = 555;
    c.prior = {8.0, 2.0};
    c.alpha_list = {0.1, 0.05};
    c.threads = 1;
    const SimResult p1 = run_point_sim(c);
    const SimResult i1 = run_interval_sim(c);
    c.threads = 4;
    check_identical(p1, run_point_sim(c));
    check_identical(i1, run_interval_sim(c));
    c.threads = 3;
    check_identical(p1, run_point_sim(c));
    c.seed = 556;
    CHECK_FALSE(same_bits(run_point_sim(c).point[0].average, p1.point[0].average));
}

TEST_CASE("reproduce_table1") {
    const Table1 t = reproduce_table1(example1_data(), PriorParams{3.0, 5.0});
    REQUIRE(t.rows.size() == 5);
    const double mle_rec[] = {2.19098642, 1.88219847, 1.81655216, 1.88274270, 1.58658848};
    const double urr[] = {4.319232, 2.791927, 2.401156, 2.337743, 1.891358};
    const double quad[] = {1.863846, 1.763976, 1.743353, 1.793872, 1.606310};
    const double sq[] = {3.106411, 2.645964, 2.440694, 2.391829, 2.065256};
    auto sig6 = [](double x, double printed) {
        return std::fabs(x - printed) <= 5e-6 * std::fabs(printed);
    };
    for (int i = 0; i < 5; ++i) {
        CHECK(t.rows[i].n == i + 2);
        CHECK(sig6(t.rows[i].mle_records, mle_rec[i]));
        CHECK(sig6(t.rows[i].mle_urr, urr[i]));
        CHECK(sig6(t.rows[i].bayes_quadratic, quad[i]));
        CHECK(sig6(t.rows[i].bayes_squared, sq[i]));
    }
    CHECK(reproduce_table1(example2_data(), PriorParams{3.0, 4.0}).records.n() == 6);
    CHECK_THROWS_AS(reproduce_table1(example2_data().first(10), PriorParams{3.0, 5.0}),
                    InsufficientRecordsError);
}
