#pragma once

#include <string_view>

#include "rrb/model.hpp"

namespace rrb {

/// The estimator m * R_n + d of the exponential scale.
struct LinearEstimator {
    double m = 0.0;
    double d = 0.0;
};

/// scaled:   L = (est - delta)^2 / delta^2
/// unscaled: L = (est - delta)^2
enum class LossWeight { scaled, unscaled };

std::string_view to_string(LossWeight w);
LossWeight parse_loss_weight(std::string_view name);

/// Frequentist risk of m R_n + d when R_n ~ Gamma(n - 1, delta). Under scaled
/// loss this is [(m(n-1) - 1)^2 + m^2 (n-1)] + 2d(m(n-1) - 1)/delta + d^2/delta^2.
double risk_linear(const LinearEstimator& est, double delta, int n,
                   LossWeight weight = LossWeight::scaled);

/// Prior expectation of risk_linear under the inverted-gamma prior. The
/// unscaled variant needs a > 2 for the prior second moment.
double bayes_risk_linear(const LinearEstimator& est, int n, const PriorParams& prior,
                         LossWeight weight = LossWeight::scaled);

/// Bayes risk of m = k/(1+kn), d = kb/(1+kn) under the prior a = 1/k,
/// written term by term as in the admissibility argument.
double bayes_risk_r1(double k, int n, double b);

/// Bayes risk of R_n/n + 1/n under the prior a = 1/k:
/// 1/n - 2/(b n^2 k) + (k+1)/(n^2 k^2 b^2).
double bayes_risk_r2(double k, int n, double b);

/// r1 - r2; tends to 0 as k grows.
double r1_r2_gap(double k, int n, double b);

enum class Admissibility { admissible_interior, admissible_boundary, outside_theorem };

std::string_view to_string(Admissibility a);

/// Sufficient conditions only: interior for 0 <= m < 1/n with d > 0,
/// boundary for m = 1/n with d > 0, otherwise outside_theorem (which is not
/// a claim of inadmissibility). m = 1/n is matched to a relative 1e-12.
Admissibility classify_admissible(const LinearEstimator& est, int n);

}  // namespace rrb
