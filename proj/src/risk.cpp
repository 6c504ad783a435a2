#include "rrb/risk.hpp"

#include <cmath>
#include <string>

#include "rrb/errors.hpp"

namespace rrb {

namespace {

void require_n(int n, const char* fn) {
    if (n < 2) throw DomainError(std::string(fn) + ": n must be >= 2");
}

void require_finite(const LinearEstimator& est, const char* fn) {
    if (!std::isfinite(est.m) || !std::isfinite(est.d)) {
        throw DomainError(std::string(fn) + ": m and d must be finite");
    }
}

void require_positive(double v, const char* fn, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(fn) + ": " + name + " must be finite and > 0");
    }
}

// (m(n-1) - 1)^2 + m^2 (n-1): the risk at d = 0, in units of delta^2
double scale_free_part(const LinearEstimator& est, int n) {
    const double bias = est.m * (n - 1) - 1.0;
    return bias * bias + est.m * est.m * (n - 1);
}

}  // namespace

std::string_view to_string(LossWeight w) {
    return w == LossWeight::scaled ? "scaled" : "unscaled";
}

LossWeight parse_loss_weight(std::string_view name) {
    if (name == "scaled") return LossWeight::scaled;
    if (name == "unscaled") return LossWeight::unscaled;
    throw DomainError("unknown loss weight '" + std::string(name) + "'");
}

double risk_linear(const LinearEstimator& est, double delta, int n, LossWeight weight) {
    require_finite(est, "risk_linear");
    require_positive(delta, "risk_linear", "delta");
    require_n(n, "risk_linear");
    const double bias = est.m * (n - 1) - 1.0;
    const double scaled = scale_free_part(est, n) + 2.0 * est.d * bias / delta +
                          est.d * est.d / (delta * delta);
    return weight == LossWeight::scaled ? scaled : scaled * delta * delta;
}

double bayes_risk_linear(const LinearEstimator& est, int n, const PriorParams& prior,
                         LossWeight weight) {
    require_finite(est, "bayes_risk_linear");
    require_n(n, "bayes_risk_linear");
    require_positive(prior.a, "bayes_risk_linear", "a");
    require_positive(prior.b, "bayes_risk_linear", "b");
    const double a = prior.a;
    const double b = prior.b;
    const double bias = est.m * (n - 1) - 1.0;
    if (weight == LossWeight::scaled) {
        // E[1/delta] = a/b, E[1/delta^2] = a(a+1)/b^2 under the inverted gamma
        return scale_free_part(est, n) + 2.0 * est.d * a * bias / b +
               est.d * est.d * a * (a + 1.0) / (b * b);
    }
    if (a <= 2.0) {
        throw DomainError("bayes_risk_linear: unscaled loss needs a > 2");
    }
    const double mean = b / (a - 1.0);
    const double second = b * b / ((a - 1.0) * (a - 2.0));
    return scale_free_part(est, n) * second + 2.0 * est.d * bias * mean + est.d * est.d;
}

double bayes_risk_r1(double k, int n, double b) {
    require_positive(k, "bayes_risk_r1", "k");
    require_positive(b, "bayes_risk_r1", "b");
    require_n(n, "bayes_risk_r1");
    const double m = k / (1.0 + k * n);
    const double d = k * b / (1.0 + k * n);
    const double bias = m * (n - 1) - 1.0;
    return (bias * bias + m * m * (n - 1)) + 2.0 * d * bias / (k * b) +
           (k + 1.0) / (k * k) * (d * d) / (b * b);
}

double bayes_risk_r2(double k, int n, double b) {
    require_positive(k, "bayes_risk_r2", "k");
    require_positive(b, "bayes_risk_r2", "b");
    require_n(n, "bayes_risk_r2");
    const double nn = static_cast<double>(n) * n;
    return 1.0 / n - 2.0 / (b * nn * k) + (k + 1.0) / (nn * k * k * b * b);
}

double r1_r2_gap(double k, int n, double b) { return bayes_risk_r1(k, n, b) - bayes_risk_r2(k, n, b); }

std::string_view to_string(Admissibility a) {
    switch (a) {
        case Admissibility::admissible_interior: return "admissible_interior";
        case Admissibility::admissible_boundary: return "admissible_boundary";
        case Admissibility::outside_theorem: return "outside_theorem";
    }
    return "unknown";
}

Admissibility classify_admissible(const LinearEstimator& est, int n) {
    if (n < 1 || !std::isfinite(est.m) || !std::isfinite(est.d) || !(est.d > 0.0)) {
        return Admissibility::outside_theorem;
    }
    const double scaled_m = est.m * n;  // m relative to 1/n
    if (std::fabs(scaled_m - 1.0) <= 1e-12) return Admissibility::admissible_boundary;
    if (est.m >= 0.0 && scaled_m < 1.0) return Admissibility::admissible_interior;
    return Admissibility::outside_theorem;
}

}  // namespace rrb
