#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rrb/estimators.hpp"
#include "rrb/intervals.hpp"
#include "rrb/model.hpp"
#include "rrb/records.hpp"

namespace rrb {

/// Running mean / second central moment (Welford), mergeable in a fixed order.
struct Accumulator {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const Accumulator& other);
    double variance() const;        // sample variance (count - 1 denominator)
    double standard_error() const;  // sqrt(variance / count)
};

struct SimConfig {
    double delta_true = 1.0;
    std::vector<int> n_records{4};
    std::int64_t reps = 100;
    std::uint64_t seed = 1;
    PriorParams prior{};
    std::vector<EstimatorId> estimators{EstimatorId::mle_urr, EstimatorId::bayes_quadratic,
                                        EstimatorId::bayes_squared};
    std::vector<double> alpha_list{0.10};
    std::vector<IntervalKind> interval_kinds{IntervalKind::equal_tails,
                                             IntervalKind::hpd_exact};
    int threads = 1;

    /// Throws ConfigError on reps < 1, n < 2, alpha outside (0, 1), bad prior.
    void validate() const;
};

struct PointRow {
    EstimatorId estimator{};
    int n = 0;
    std::int64_t reps = 0;
    double average = 0.0;
    double average_se = 0.0;
    double empirical_mse = 0.0;  // mean of (estimate - delta_true)^2
    double mse_se = 0.0;
    std::optional<Moments> analytic;
};

struct IntervalRow {
    IntervalKind kind{};
    int n = 0;
    double alpha = 0.0;
    std::int64_t reps = 0;
    std::int64_t failures = 0;  // repetitions where the interval could not be formed
    double empirical_coverage = 0.0;
    double coverage_se = 0.0;
    double mean_length = 0.0;
};

struct SimResult {
    std::vector<PointRow> point;        // ordered by (estimator, n) as configured
    std::vector<IntervalRow> interval;  // ordered by (kind, alpha, n) as configured
};

/// Number of repetitions per reduction block. Blocks are reduced in index
/// order, so results do not depend on the thread count.
inline constexpr std::int64_t kSimBlock = 2048;

/// Repetition r samples max(n_records) records with seed derive_seed(seed, r)
/// and evaluates every estimator on the nested prefixes. mle_sample is
/// rejected (the direct sampler produces no raw sample).
SimResult run_point_sim(const SimConfig& config);

/// Repetition r draws delta from the prior, then records given delta, then
/// every configured interval; coverage counts delta in [lower, upper].
SimResult run_interval_sim(const SimConfig& config);

struct Table1Row {
    int n = 0;
    double mle_records = 0.0;
    double mle_urr = 0.0;
    double bayes_quadratic = 0.0;
    double bayes_squared = 0.0;
};

struct Table1 {
    RecordSummary records;
    std::vector<Table1Row> rows;  // n = 2..n_max
};

/// Deterministic estimator columns for n = 2..n_max from the upper records of `data`.
Table1 reproduce_table1(std::span<const double> data, const PriorParams& prior,
                        int n_max = 6);

/// The 53-value illustrative exponential sample.
std::span<const double> example1_data();
/// The 38-value illustrative sample drawn with delta = 1.
std::span<const double> example2_data();

}  // namespace rrb
