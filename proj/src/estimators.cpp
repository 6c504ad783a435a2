#include "rrb/estimators.hpp"

#include <array>
#include <cmath>
#include <string>

#include "rrb/errors.hpp"
#include "rrb/specfun.hpp"

namespace rrb {

namespace {

constexpr std::array kAll{
    EstimatorId::mle_sample,      EstimatorId::mle_records,   EstimatorId::mle_urr,
    EstimatorId::bayes_quadratic, EstimatorId::bayes_squared, EstimatorId::bayes_absolute,
};

void require_n(int n, int minimum, const char* fn) {
    if (n < minimum) {
        throw DomainError(std::string(fn) + ": n must be >= " + std::to_string(minimum));
    }
}

double median_quantile(const PosteriorParams& post) {
    // 2A / delta | data ~ chi-squared with 2a + 2n - 2 = 2s degrees of freedom
    return chi2_quantile(0.5, 2.0 * post.s);
}

}  // namespace

std::string_view to_string(EstimatorId id) {
    switch (id) {
        case EstimatorId::mle_sample: return "mle_sample";
        case EstimatorId::mle_records: return "mle_records";
        case EstimatorId::mle_urr: return "mle_urr";
        case EstimatorId::bayes_quadratic: return "bayes_quadratic";
        case EstimatorId::bayes_squared: return "bayes_squared";
        case EstimatorId::bayes_absolute: return "bayes_absolute";
    }
    return "unknown";
}

EstimatorId parse_estimator(std::string_view name) {
    for (EstimatorId id : kAll) {
        if (to_string(id) == name) return id;
    }
    throw DomainError("unknown estimator '" + std::string(name) + "'");
}

std::span<const EstimatorId> all_estimators() { return kAll; }

double mle_sample(std::span<const double> data) {
    if (data.empty()) throw DomainError("mle_sample: empty input");
    double sum = 0.0;
    for (double x : data) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw DomainError("mle_sample: data must be finite and > 0");
        }
        sum += x;
    }
    return sum / static_cast<double>(data.size());
}

double mle_records(double x_last_record, int n) {
    if (!std::isfinite(x_last_record) || x_last_record <= 0.0) {
        throw DomainError("mle_records: last record must be > 0");
    }
    require_n(n, 1, "mle_records");
    return x_last_record / n;
}

double mle_urr(double range, int n) {
    if (!std::isfinite(range) || range <= 0.0) {
        throw DomainError("mle_urr: range must be > 0");
    }
    require_n(n, 2, "mle_urr");
    return range / (n - 1);
}

double bayes_quadratic(const PosteriorParams& post) { return post.A / post.a_plus_n; }

double bayes_squared(const PosteriorParams& post) {
    if (post.s <= 1.0) {
        throw DomainError("bayes_squared: posterior mean undefined for a + n - 1 <= 1");
    }
    return post.A / (post.s - 1.0);
}

double bayes_absolute(const PosteriorParams& post) {
    return 2.0 * post.A / median_quantile(post);
}

Moments analytic_moments(EstimatorId id, double delta_ref, int n, const PriorParams& prior) {
    if (!std::isfinite(delta_ref) || delta_ref <= 0.0) {
        throw DomainError("analytic_moments: delta_ref must be > 0");
    }
    require_n(n, 2, "analytic_moments");
    prior.validate();

    const double d2 = delta_ref * delta_ref;
    const double m = n - 1.0;  // the range is Gamma(n - 1, delta)
    Moments out;
    switch (id) {
        case EstimatorId::mle_sample:
            throw UnsupportedError("analytic_moments: mle_sample moments depend on record times");
        case EstimatorId::mle_records:
            // last record is Gamma(n, delta)
            out.mean = delta_ref;
            out.variance = d2 / n;
            break;
        case EstimatorId::mle_urr:
            out.mean = delta_ref;
            out.variance = d2 / m;
            break;
        case EstimatorId::bayes_quadratic: {
            const double div = prior.a + n;
            out.mean = (m * delta_ref + prior.b) / div;
            out.variance = m * d2 / (div * div);
            break;
        }
        case EstimatorId::bayes_squared: {
            const double div = prior.a + n - 2.0;
            if (div <= 0.0) {
                throw DomainError("analytic_moments: bayes_squared needs a + n - 2 > 0");
            }
            out.mean = (m * delta_ref + prior.b) / div;
            out.variance = m * d2 / (div * div);
            break;
        }
        case EstimatorId::bayes_absolute: {
            const double q = chi2_quantile(0.5, 2.0 * prior.a + 2.0 * n - 2.0);
            out.mean = (2.0 * m * delta_ref + 2.0 * prior.b) / q;
            out.variance = 4.0 * m * d2 / (q * q);
            break;
        }
    }
    const double bias = out.mean - delta_ref;
    out.mse = out.variance + bias * bias;
    return out;
}

EstimateReport estimate(EstimatorId id, const RecordSummary& records, int n,
                        const PriorParams& prior, std::span<const double> data,
                        std::optional<double> delta_ref) {
    const RecordSummary sub = records.prefix(n);
    EstimateReport report;
    report.estimator = id;
    report.n = n;
    switch (id) {
        case EstimatorId::mle_sample: report.value = mle_sample(data); break;
        case EstimatorId::mle_records: report.value = mle_records(sub.values.back(), n); break;
        case EstimatorId::mle_urr: report.value = mle_urr(sub.range(), n); break;
        case EstimatorId::bayes_quadratic:
            report.value = bayes_quadratic(posterior_from(prior, sub));
            break;
        case EstimatorId::bayes_squared:
            report.value = bayes_squared(posterior_from(prior, sub));
            break;
        case EstimatorId::bayes_absolute:
            report.value = bayes_absolute(posterior_from(prior, sub));
            break;
    }
    if (delta_ref && id != EstimatorId::mle_sample) {
        report.analytic = analytic_moments(id, *delta_ref, n, prior);
    }
    return report;
}

}  // namespace rrb
