#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrb/model.hpp"

namespace rrb {

enum class EstimatorId {
    mle_sample,       // full-sample mean
    mle_records,      // last record / n
    mle_urr,          // range / (n - 1)
    bayes_quadratic,  // posterior rule under (d' - d)^2 / d^2 loss
    bayes_squared,    // posterior mean
    bayes_absolute,   // posterior median
};

std::string_view to_string(EstimatorId id);

/// Parses the snake_case name; throws DomainError on unknown names.
EstimatorId parse_estimator(std::string_view name);

/// All identifiers in declaration order.
std::span<const EstimatorId> all_estimators();

double mle_sample(std::span<const double> data);
double mle_records(double x_last_record, int n);
double mle_urr(double range, int n);
double bayes_quadratic(const PosteriorParams& post);
double bayes_squared(const PosteriorParams& post);
double bayes_absolute(const PosteriorParams& post);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double mse = 0.0;  // variance + (mean - delta_ref)^2
};

/// Sampling moments of an estimator under n records from Exp(delta_ref).
/// mle_sample is unsupported: its moments depend on the record times.
Moments analytic_moments(EstimatorId id, double delta_ref, int n, const PriorParams& prior);

struct EstimateReport {
    EstimatorId estimator = EstimatorId::mle_urr;
    int n = 0;
    double value = 0.0;
    std::optional<Moments> analytic;  // set when a reference delta was given (never for mle_sample)
};

/// Evaluates `id` on the first `n` records of `records`. `data` is only
/// consulted by mle_sample.
EstimateReport estimate(EstimatorId id, const RecordSummary& records, int n,
                        const PriorParams& prior, std::span<const double> data = {},
                        std::optional<double> delta_ref = std::nullopt);

}  // namespace rrb
