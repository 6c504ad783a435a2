#include "rrb/model.hpp"

#include <cmath>
#include <string>

#include "rrb/errors.hpp"
#include "rrb/specfun.hpp"

namespace rrb {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void PriorParams::validate() const {
    if (!positive_finite(a) || !std::isfinite(b) || b < 0.0) {
        throw DomainError("prior: a must be finite and > 0, b finite and >= 0");
    }
}

PosteriorParams PosteriorParams::from_shape_scale(double s, double A) {
    PosteriorParams p{s, A, s + 1.0};
    p.validate();
    return p;
}

void PosteriorParams::validate() const {
    if (!positive_finite(s) || !positive_finite(A)) {
        throw DomainError("posterior: s and A must be finite and > 0");
    }
    if (a_plus_n != s + 1.0) {
        throw DomainError("posterior: a_plus_n must equal s + 1");
    }
}

double range_pdf(double r, int n, double delta) {
    if (std::isnan(r) || r < 0.0) throw DomainError("range_pdf: r must be >= 0");
    if (n < 2) throw DomainError("range_pdf: n must be >= 2");
    if (!positive_finite(delta)) throw DomainError("range_pdf: delta must be > 0");
    const double shape = n - 1.0;
    if (r == 0.0) {
        return n == 2 ? 1.0 / delta : 0.0;
    }
    if (std::isinf(r)) return 0.0;
    // r^(n-2) e^(-r/delta) / ((n-2)! delta^(n-1))
    const double log_pdf =
        (shape - 1.0) * std::log(r) - r / delta - ln_gamma(shape) - shape * std::log(delta);
    return std::exp(log_pdf);
}

PosteriorParams posterior_from(const PriorParams& prior, int n, double range) {
    prior.validate();
    if (n < 2) {
        throw InsufficientRecordsError("posterior needs at least 2 records", n, 2);
    }
    if (std::isnan(range) || range < 0.0 || std::isinf(range)) {
        throw DomainError("posterior_from: range must be finite and >= 0");
    }
    PosteriorParams post;
    post.s = prior.a + n - 1.0;
    post.A = prior.b + range;
    post.a_plus_n = prior.a + n;
    if (!(post.A > 0.0)) {
        throw DomainError("posterior_from: b + range must be > 0");
    }
    return post;
}

PosteriorParams posterior_from(const PriorParams& prior, const RecordSummary& summary) {
    if (summary.n() < 2) {
        throw InsufficientRecordsError("posterior needs at least 2 records", summary.n(), 2);
    }
    return posterior_from(prior, summary.n(), summary.range());
}

double posterior_log_pdf(double delta, const PosteriorParams& post) {
    if (std::isnan(delta) || delta <= 0.0) {
        throw DomainError("posterior_pdf: delta must be > 0");
    }
    if (std::isinf(delta)) return -kInf;
    // A^s e^(-A/delta) / (Gamma(s) delta^(s+1))
    return post.s * std::log(post.A) - post.A / delta - ln_gamma(post.s) -
           post.a_plus_n * std::log(delta);
}

double posterior_pdf(double delta, const PosteriorParams& post) {
    return std::exp(posterior_log_pdf(delta, post));
}

double posterior_cdf(double c, const PosteriorParams& post) {
    return posterior_coverage(0.0, c, post);
}

double posterior_coverage(double c_lo, double c_hi, const PosteriorParams& post) {
    if (std::isnan(c_lo) || std::isnan(c_hi) || c_lo < 0.0) {
        throw DomainError("posterior_coverage: endpoints must be >= 0");
    }
    if (c_lo > c_hi) {
        throw DomainError("posterior_coverage: c_lo must not exceed c_hi");
    }
    // A / delta ~ Gamma(s, 1), so delta in [c_lo, c_hi] <=> A/delta in [A/c_hi, A/c_lo].
    const double x_lo = std::isinf(c_hi) ? 0.0 : post.A / c_hi;
    const double x_hi = c_lo == 0.0 ? kInf : post.A / c_lo;
    return reg_gamma_interval(post.s, x_lo, x_hi);
}

double posterior_mode(const PosteriorParams& post) { return post.A / post.a_plus_n; }

}  // namespace rrb
