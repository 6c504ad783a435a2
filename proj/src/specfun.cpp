#include "rrb/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "rrb/errors.hpp"

namespace rrb {

namespace {

constexpr double kTiny = 1e-300;

void require_finite_positive(double v, const char* fn, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(fn) + ": " + name + " must be finite and > 0");
    }
}

void require_gamma_args(double s, double x, const char* fn) {
    require_finite_positive(s, fn, "s");
    if (std::isnan(x) || x < 0.0) {
        throw DomainError(std::string(fn) + ": x must be >= 0");
    }
}

// log of x^s e^-x / Gamma(s), the common prefactor of both expansions
double log_prefactor(double s, double x) {
    return s * std::log(x) - x - ln_gamma(s);
}

// P(s, x) by the power series; valid (and fast) for x < s + 1.
double lower_series(double s, double x, const ToleranceConfig& tol) {
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int i = 0; i < tol.max_iter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * tol.rel_tol) {
            return sum * std::exp(log_prefactor(s, x));
        }
    }
    throw ConvergenceError("reg_lower_gamma: series did not converge", tol.max_iter);
}

// Q(s, x) by the continued fraction (modified Lentz); valid for x >= s + 1.
double upper_continued_fraction(double s, double x, const ToleranceConfig& tol) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= tol.max_iter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < tol.rel_tol) {
            return std::exp(log_prefactor(s, x)) * h;
        }
    }
    throw ConvergenceError("reg_upper_gamma: continued fraction did not converge",
                           tol.max_iter);
}

// Rough standard normal quantile (Abramowitz & Stegun 26.2.23, |err| < 4.5e-4).
double normal_quantile_guess(double p) {
    const double q = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(q));
    const double z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                             (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
    return p < 0.5 ? -z : z;
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
        throw DomainError("ToleranceConfig: abs_tol, rel_tol must be > 0 and max_iter >= 1");
    }
}

double ln_gamma(double x) {
    require_finite_positive(x, "ln_gamma", "x");
    return boost::math::lgamma(x);
}

double reg_lower_gamma(double s, double x, const ToleranceConfig& tol) {
    require_gamma_args(s, x, "reg_lower_gamma");
    tol.validate();
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < s + 1.0) return std::clamp(lower_series(s, x, tol), 0.0, 1.0);
    return std::clamp(1.0 - upper_continued_fraction(s, x, tol), 0.0, 1.0);
}

double reg_upper_gamma(double s, double x, const ToleranceConfig& tol) {
    require_gamma_args(s, x, "reg_upper_gamma");
    tol.validate();
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < s + 1.0) return std::clamp(1.0 - lower_series(s, x, tol), 0.0, 1.0);
    return std::clamp(upper_continued_fraction(s, x, tol), 0.0, 1.0);
}

double reg_gamma_interval(double s, double x_lo, double x_hi, const ToleranceConfig& tol) {
    require_gamma_args(s, x_lo, "reg_gamma_interval");
    require_gamma_args(s, x_hi, "reg_gamma_interval");
    if (x_lo > x_hi) {
        throw DomainError("reg_gamma_interval: x_lo must not exceed x_hi");
    }
    if (x_lo == x_hi) return 0.0;
    // Subtract in the tail where both values are small.
    const double diff = x_lo >= s
                            ? reg_upper_gamma(s, x_lo, tol) - reg_upper_gamma(s, x_hi, tol)
                            : reg_lower_gamma(s, x_hi, tol) - reg_lower_gamma(s, x_lo, tol);
    return std::clamp(diff, 0.0, 1.0);
}

double gen_incomplete_gamma(double s, double x_lo, double x_hi, const ToleranceConfig& tol) {
    return std::exp(ln_gamma(s)) * reg_gamma_interval(s, x_lo, x_hi, tol);
}

double chi2_quantile(double p, double nu, const ToleranceConfig& tol) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("chi2_quantile: p must lie in (0, 1)");
    }
    require_finite_positive(nu, "chi2_quantile", "nu");
    tol.validate();

    // Solve P(k, y) = p for y = x / 2. Above the median the residual is
    // formed from Q to keep precision for p close to 1.
    const double k = 0.5 * nu;
    const bool upper = p > 0.5;
    const double q = 1.0 - p;
    auto residual = [&](double y) {
        return upper ? q - reg_upper_gamma(k, y, tol) : reg_lower_gamma(k, y, tol) - p;
    };
    auto log_density = [&](double y) { return (k - 1.0) * std::log(y) - y - ln_gamma(k); };

    // Wilson-Hilferty start, with the small-y expansion P ~ y^k / Gamma(k+1)
    // where the cube goes non-positive.
    const double h = 2.0 / (9.0 * nu);
    const double wh = 1.0 - h + normal_quantile_guess(p) * std::sqrt(h);
    double y = wh > 0.0 ? 0.5 * nu * wh * wh * wh : 0.0;
    if (!(y > 0.0) || p < 1e-3) {
        const double small = std::exp((std::log(p) + ln_gamma(k + 1.0)) / k);
        if (small > 0.0 && (y <= 0.0 || small < y)) y = small;
    }
    if (!(y > 0.0)) y = std::numeric_limits<double>::min();

    double lo = 0.0;
    double hi = std::max(2.0 * y, 1.0);
    for (int i = 0; residual(hi) < 0.0; ++i) {
        if (i > 2000) throw ConvergenceError("chi2_quantile: no upper bracket", i);
        lo = hi;
        hi *= 2.0;
    }
    y = std::clamp(y, lo, hi);

    for (int iter = 1; iter <= tol.max_iter; ++iter) {
        const double f = residual(y);
        if (f == 0.0) return 2.0 * y;
        if (f < 0.0) {
            lo = y;
        } else {
            hi = y;
        }
        const double slope = std::exp(log_density(y));
        double next = y - f / slope;
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::fabs(next - y);
        y = next;
        if (step <= tol.rel_tol * y || hi - lo <= tol.rel_tol * hi) {
            return 2.0 * y;
        }
    }
    throw ConvergenceError("chi2_quantile: Newton/bisection did not converge", tol.max_iter);
}

}  // namespace rrb
