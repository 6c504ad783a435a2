#pragma once

// Special functions for the gamma family: log-gamma, regularized incomplete
// gamma, the generalized (two-limit) incomplete gamma and chi-squared
// quantiles. All functions are pure and reentrant.

namespace rrb {

struct ToleranceConfig {
    double abs_tol = 1e-14;
    double rel_tol = 1e-14;
    int max_iter = 500;

    /// Throws DomainError unless abs_tol > 0, rel_tol > 0 and max_iter >= 1.
    void validate() const;
};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
/// x may be +inf (returns 1).
double reg_lower_gamma(double s, double x, const ToleranceConfig& tol = {});

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), computed
/// without cancellation in the upper tail.
double reg_upper_gamma(double s, double x, const ToleranceConfig& tol = {});

/// P(s, x_hi) - P(s, x_lo) for 0 <= x_lo <= x_hi <= inf, evaluated on
/// whichever tail keeps the difference accurate.
double reg_gamma_interval(double s, double x_lo, double x_hi,
                          const ToleranceConfig& tol = {});

/// Generalized incomplete gamma: integral of t^(s-1) e^(-t) over [x_lo, x_hi].
double gen_incomplete_gamma(double s, double x_lo, double x_hi,
                            const ToleranceConfig& tol = {});

/// Quantile of the chi-squared distribution with nu degrees of freedom.
double chi2_quantile(double p, double nu, const ToleranceConfig& tol = {});

}  // namespace rrb
