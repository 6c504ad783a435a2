#pragma once

#include <limits>

#include "rrb/records.hpp"

namespace rrb {

/// Inverted-gamma prior on the exponential scale: b^a / (Gamma(a) d^(a+1)) e^(-b/d).
struct PriorParams {
    double a = 1.0;  // shape
    double b = 1.0;  // scale

    /// Throws DomainError unless a > 0 and b >= 0 (both finite). b == 0 is the
    /// limiting improper case; operations needing prior moments require b > 0.
    void validate() const;
};

/// Inverted-gamma posterior of the scale given n records with range R:
/// shape s = a + n - 1, scale A = b + R. The kernel exponent a + n is kept
/// alongside s so that both appear explicitly where they are used.
struct PosteriorParams {
    double s = 1.0;
    double A = 1.0;
    double a_plus_n = 2.0;

    /// Builds the posterior from its shape and scale (a_plus_n = s + 1).
    static PosteriorParams from_shape_scale(double s, double A);

    void validate() const;
};

/// Density of the upper record range of n exponential records,
/// i.e. Gamma(n - 1, delta).
double range_pdf(double r, int n, double delta);

/// Conjugate update from the first and last of `summary`'s records.
PosteriorParams posterior_from(const PriorParams& prior, const RecordSummary& summary);

/// Same update from the sufficient statistics directly.
PosteriorParams posterior_from(const PriorParams& prior, int n, double range);

double posterior_log_pdf(double delta, const PosteriorParams& post);
double posterior_pdf(double delta, const PosteriorParams& post);

/// Posterior CDF P(delta <= c | data); c may be +inf.
double posterior_cdf(double c, const PosteriorParams& post);

/// P(c_lo <= delta <= c_hi | data) for 0 <= c_lo <= c_hi <= inf.
double posterior_coverage(double c_lo, double c_hi, const PosteriorParams& post);

/// Posterior mode A / (a + n).
double posterior_mode(const PosteriorParams& post);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace rrb
