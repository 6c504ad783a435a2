#pragma once

// Test-only reference computations. Nothing here calls into the library:
// quadrature, bisection and closed forms are evaluated from scratch so they
// can serve as independent checks of the implementation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

namespace detail {

inline double simpson_step(const std::function<double(double)>& f, double a, double fa,
                           double b, double fb, double m, double fm, double whole, double tol,
                           int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b], pre-split into `pieces`.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14, int pieces = 64) {
    double total = 0.0;
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * h;
        const double hi = i + 1 == pieces ? b : lo + h;
        const double m = 0.5 * (lo + hi);
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(m);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        total += detail::simpson_step(f, lo, flo, hi, fhi, m, fm, whole, tol / pieces, 40);
    }
    return total;
}

/// Integral over [lo, hi] (lo > 0) after substituting x = e^u.
inline double integrate_log(const std::function<double(double)>& f, double lo, double hi,
                            double tol = 1e-14) {
    return integrate([&](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    }, std::log(lo), std::log(hi), tol, 256);
}

/// Root of an increasing function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iterations = 200) {
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Gamma(shape, scale) density, evaluated directly with tgamma.
inline double gamma_density(double x, double shape, double scale) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, shape - 1.0) * std::exp(-x / scale) /
           (std::tgamma(shape) * std::pow(scale, shape));
}

/// Integral of t^(s-1) e^(-t) over [lo, hi] by quadrature.
inline double incomplete_gamma_quadrature(double s, double lo, double hi) {
    if (s < 1.0 && lo == 0.0) {
        // t = u^(1/s) removes the integrable singularity at 0
        return integrate([s](double u) { return std::exp(-std::pow(u, 1.0 / s)); }, 0.0,
                         std::pow(hi, s), 1e-15, 128) / s;
    }
    return integrate([s](double t) { return t <= 0.0 ? (s == 1.0 ? 1.0 : 0.0)
                                                       : std::pow(t, s - 1.0) * std::exp(-t); },
                     lo, hi, 1e-15, 128);
}

/// P(s, x) by quadrature.
inline double reg_lower_gamma_quadrature(double s, double x) {
    return incomplete_gamma_quadrature(s, 0.0, x) / std::tgamma(s);
}

/// Chi-squared quantile by bisection on the quadrature CDF.
inline double chi2_quantile_bisection(double p, double nu) {
    auto cdf = [nu](double x) {
        return incomplete_gamma_quadrature(0.5 * nu, 0.0, 0.5 * x) / std::tgamma(0.5 * nu);
    };
    return bisect([&](double x) { return cdf(x) - p; }, 0.0, 20.0 * nu + 100.0, 120);
}

/// Inverted-gamma posterior density A^s e^(-A/d) / (Gamma(s) d^(s+1)), direct form.
inline double posterior_density(double d, double s, double A) {
    return std::pow(A, s) * std::exp(-A / d) / (std::tgamma(s) * std::pow(d, s + 1.0));
}

/// Posterior mass on [lo, hi] by log-substituted quadrature.
inline double posterior_mass(double lo, double hi, double s, double A) {
    return integrate_log([&](double d) { return posterior_density(d, s, A); }, lo, hi, 1e-15);
}

/// Posterior quantile by bisection on quadrature mass from a far-left cutoff.
inline double posterior_quantile(double p, double s, double A) {
    const double left = A * 1e-4;
    return bisect([&](double c) { return posterior_mass(left, c, s, A) - p; }, left, A * 1e4,
                  100);
}

/// HPD interval from a dense grid: threshold-sweep the density level and
/// take the super-level set of mass 1 - alpha. Returns {lower, upper}.
inline std::pair<double, double> hpd_grid(double s, double A, double alpha, double lo,
                                          double hi, int points) {
    std::vector<double> x(points);
    std::vector<double> dens(points);
    const double h = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        x[i] = lo + i * h;
        dens[i] = posterior_density(x[i], s, A);
    }
    // Mass of the super-level set {density >= level} on the grid (trapezoid
    // cells whose both ends exceed the level, plus linear end pieces).
    auto mass_above = [&](double level, double& left, double& right) {
        int i0 = -1;
        int i1 = -1;
        for (int i = 0; i < points; ++i) {
            if (dens[i] >= level) {
                if (i0 < 0) i0 = i;
                i1 = i;
            }
        }
        if (i0 <= 0 || i1 >= points - 1) {
            left = x.front();
            right = x.back();
            return 1.0;
        }
        // interpolate crossing points
        left = x[i0 - 1] + (level - dens[i0 - 1]) / (dens[i0] - dens[i0 - 1]) * h;
        right = x[i1] + (dens[i1] - level) / (dens[i1] - dens[i1 + 1]) * h;
        return posterior_mass(left, right, s, A);
    };
    double peak = *std::max_element(dens.begin(), dens.end());
    double lvl_lo = 0.0;
    double lvl_hi = peak;
    double left = 0.0;
    double right = 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lvl_lo + lvl_hi);
        if (mass_above(mid, left, right) > 1.0 - alpha) {
            lvl_lo = mid;
        } else {
            lvl_hi = mid;
        }
    }
    mass_above(0.5 * (lvl_lo + lvl_hi), left, right);
    return {left, right};
}

/// Kolmogorov-Smirnov distance of a sample to a continuous CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max({d, std::fabs(F - i / n), std::fabs((i + 1) / n - F)});
    }
    return d;
}

}  // namespace oracle
