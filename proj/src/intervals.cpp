#include "rrb/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rrb/errors.hpp"
#include "rrb/specfun.hpp"

namespace rrb {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxOuter = 200;
constexpr double kResidualTol = 1e-12;

void require_alpha(double alpha, const char* fn) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError(std::string(fn) + ": alpha must lie in (0, 1)");
    }
}

// Work in the standardized variable y = A / delta, under which the posterior
// log-density is (s+1) ln y - y up to a constant and coverage of [c_L, c_U]
// is P(s, A/c_L) - P(s, A/c_U).
struct Standardized {
    double s;
    double k;  // a + n = s + 1

    double log_kernel(double y) const { return k * std::log(y) - y; }

    // Root of log_kernel(y) = target on (0, k); log_kernel is increasing and
    // concave in w = ln y there, so Newton from the left never overshoots.
    double upper_side_root(double target) const {
        const double w_top = std::log(k);
        double w_lo = std::min(target / k, w_top);  // k w - e^w <= k w
        double w_hi = w_top;
        double w = w_lo;
        for (int i = 0; i < kMaxOuter; ++i) {
            const double ew = std::exp(w);
            const double f = k * w - ew - target;
            // near the mode f is flat and only known to rounding
            if (std::fabs(f) <= 8.0 * kEps * (std::fabs(k * w) + ew + std::fabs(target))) {
                return ew;
            }
            if (f < 0.0) {
                w_lo = w;
            } else {
                w_hi = w;
            }
            const double slope = k - ew;
            double next = slope > 0.0 ? w - f / slope : 0.5 * (w_lo + w_hi);
            if (!(next >= w_lo && next <= w_hi)) next = 0.5 * (w_lo + w_hi);
            const double step = std::fabs(next - w);
            w = next;
            if (step <= 4.0 * kEps * std::max(1.0, std::fabs(w)) ||
                w_hi - w_lo <= 4.0 * kEps * std::max(1.0, std::fabs(w_hi))) {
                return std::exp(w);
            }
        }
        throw ConvergenceError("hpd_exact: equal-density step did not converge", kMaxOuter);
    }
};

double identity_residual(double c_lo, double c_hi, const PosteriorParams& post) {
    const double lhs = post.a_plus_n * std::log(c_lo / c_hi);
    const double rhs = post.A * (1.0 / c_hi - 1.0 / c_lo);
    return std::fabs(std::expm1(lhs - rhs));
}

double hpm_lower(const PosteriorParams& post, double g) {
    const double an = post.a_plus_n;
    const double A = post.A;
    return (A + 2.0 * an * g + std::sqrt(A * A + 8.0 * A * an * g)) / (2.0 * an);
}

double hpm_coverage(const PosteriorParams& post, double g) {
    const double lo = hpm_lower(post, g);
    return posterior_coverage(lo, lo + g, post);
}

}  // namespace

std::string_view to_string(IntervalKind kind) {
    switch (kind) {
        case IntervalKind::equal_tails: return "equal_tails";
        case IntervalKind::hpd_exact: return "hpd_exact";
        case IntervalKind::hpd_hpm: return "hpd_hpm";
    }
    return "unknown";
}

IntervalKind parse_interval_kind(std::string_view name) {
    for (IntervalKind k : {IntervalKind::equal_tails, IntervalKind::hpd_exact,
                           IntervalKind::hpd_hpm}) {
        if (to_string(k) == name) return k;
    }
    throw DomainError("unknown interval kind '" + std::string(name) + "'");
}

CredibleInterval equal_tails(const PosteriorParams& post, double alpha) {
    require_alpha(alpha, "equal_tails");
    post.validate();
    const double nu = 2.0 * post.s;
    CredibleInterval ci;
    ci.kind = IntervalKind::equal_tails;
    ci.level = 1.0 - alpha;
    ci.lower = 2.0 * post.A / chi2_quantile(1.0 - 0.5 * alpha, nu);
    ci.upper = 2.0 * post.A / chi2_quantile(0.5 * alpha, nu);
    ci.diagnostics["coverage_residual"] =
        std::fabs(posterior_coverage(ci.lower, ci.upper, post) - ci.level);
    return ci;
}

CredibleInterval hpd_exact(const PosteriorParams& post, double alpha) {
    require_alpha(alpha, "hpd_exact");
    post.validate();
    const Standardized z{post.s, post.a_plus_n};
    const double target = 1.0 - alpha;

    // Bisection on t = c_L / mode in (0, 1); coverage falls from 1 to 0.
    double t_lo = 0.0;
    double t_hi = 1.0;
    double y_lo = 0.0;  // A / c_L
    double y_hi = 0.0;  // A / c_U
    double residual = 1.0;
    int iterations = 0;
    for (; iterations < kMaxOuter; ++iterations) {
        const double t = 0.5 * (t_lo + t_hi);
        y_lo = z.k / t;
        y_hi = z.upper_side_root(z.log_kernel(y_lo));
        residual = reg_gamma_interval(z.s, y_hi, y_lo) - target;
        if (residual > 0.0) {
            t_lo = t;
        } else {
            t_hi = t;
        }
        if (std::fabs(residual) <= kResidualTol || t_hi - t_lo <= 2.0 * kEps) break;
    }
    if (std::fabs(residual) > 1e-9) {
        throw ConvergenceError("hpd_exact: coverage residual " + std::to_string(residual) +
                                   " after " + std::to_string(iterations) + " iterations",
                               iterations);
    }

    CredibleInterval ci;
    ci.kind = IntervalKind::hpd_exact;
    ci.level = target;
    ci.lower = post.A / y_lo;
    ci.upper = post.A / y_hi;
    const double peak = z.log_kernel(z.k);
    ci.diagnostics["density_residual"] =
        std::fabs(std::exp(z.log_kernel(y_lo) - peak) - std::exp(z.log_kernel(y_hi) - peak));
    ci.diagnostics["coverage_residual"] =
        std::fabs(posterior_coverage(ci.lower, ci.upper, post) - target);
    ci.diagnostics["identity_residual"] = identity_residual(ci.lower, ci.upper, post);
    ci.diagnostics["iterations"] = iterations + 1;
    return ci;
}

CredibleInterval hpd_hpm_closed_form(const PosteriorParams& post, double g) {
    if (!std::isfinite(g) || g < 0.0) {
        throw DomainError("hpd_hpm_closed_form: g must be finite and >= 0");
    }
    post.validate();
    CredibleInterval ci;
    ci.kind = IntervalKind::hpd_hpm;
    ci.lower = hpm_lower(post, g);
    ci.upper = ci.lower + g;
    ci.level = posterior_coverage(ci.lower, ci.upper, post);
    ci.diagnostics["g"] = g;
    ci.diagnostics["mode_offset"] = ci.lower - posterior_mode(post);
    ci.diagnostics["log_density_gap"] =
        posterior_log_pdf(ci.upper, post) - posterior_log_pdf(ci.lower, post);
    return ci;
}

CredibleInterval hpd_hpm_calibrated(const PosteriorParams& post, double alpha) {
    require_alpha(alpha, "hpd_hpm_calibrated");
    post.validate();
    const double target = 1.0 - alpha;
    auto coverage = [&](double g) { return hpm_coverage(post, g); };

    // Grow the bracket by doubling; stop once the target is reached or the
    // coverage starts to fall (the maximum is then inside the last two steps).
    double g_prev2 = 0.0;
    double g_prev = 0.0;
    double c_prev = 0.0;
    double g = posterior_mode(post) / 10.0;
    double c = coverage(g);
    bool reached = c >= target;
    bool peaked = false;
    for (int i = 0; i < 60 && !reached; ++i) {
        g_prev2 = g_prev;
        g_prev = g;
        c_prev = c;
        g *= 2.0;
        c = coverage(g);
        if (c >= target) {
            reached = true;
        } else if (c < c_prev) {
            peaked = true;
            break;
        }
    }

    double g_left = g_prev;
    double g_right = g;
    if (!reached) {
        if (!peaked) {
            throw BracketError("hpd_hpm_calibrated: coverage never reached target", g, c);
        }
        // Golden-section search for the coverage maximum on [g_prev2, g].
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = g_prev2;
        double b = g;
        double x1 = b - inv_phi * (b - a);
        double x2 = a + inv_phi * (b - a);
        double f1 = coverage(x1);
        double f2 = coverage(x2);
        for (int i = 0; i < kMaxOuter && b - a > 1e-12 * b; ++i) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = coverage(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = coverage(x1);
            }
        }
        const double g_peak = f1 > f2 ? x1 : x2;
        const double c_peak = std::max(f1, f2);
        if (c_peak < target) {
            throw BracketError("hpd_hpm_calibrated: target coverage " + std::to_string(target) +
                                   " exceeds the closed form's maximum coverage " +
                                   std::to_string(c_peak),
                               g_peak, c_peak);
        }
        g_left = 0.0;
        g_right = g_peak;
    }

    // Bisection on the rising branch: coverage(g_left) < target <= coverage(g_right).
    double residual = coverage(g_right) - target;
    double g_star = g_right;
    for (int i = 0; i < kMaxOuter && std::fabs(residual) > 1e-11; ++i) {
        const double mid = 0.5 * (g_left + g_right);
        if (mid <= g_left || mid >= g_right) break;
        const double r = coverage(mid) - target;
        if (r < 0.0) {
            g_left = mid;
        } else {
            g_right = mid;
        }
        g_star = mid;
        residual = r;
    }
    if (std::fabs(residual) > 1e-8) {
        throw ConvergenceError("hpd_hpm_calibrated: coverage residual " +
                                   std::to_string(residual),
                               kMaxOuter);
    }

    CredibleInterval ci = hpd_hpm_closed_form(post, g_star);
    ci.diagnostics["coverage_residual"] = std::fabs(ci.level - target);
    ci.diagnostics["exact_length_ratio"] = ci.length() / hpd_exact(post, alpha).length();
    ci.level = target;
    return ci;
}

CredibleInterval credible_interval(IntervalKind kind, const PosteriorParams& post,
                                   double alpha) {
    switch (kind) {
        case IntervalKind::equal_tails: return equal_tails(post, alpha);
        case IntervalKind::hpd_exact: return hpd_exact(post, alpha);
        case IntervalKind::hpd_hpm: return hpd_hpm_calibrated(post, alpha);
    }
    throw DomainError("credible_interval: unknown kind");
}

std::vector<LengthPoint> length_of_alpha(const PosteriorParams& post,
                                         std::span<const double> alpha_grid, double h) {
    if (!(h > 0.0)) throw DomainError("length_of_alpha: step must be > 0");
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        require_alpha(alpha_grid[i], "length_of_alpha");
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1])) {
            throw DomainError("length_of_alpha: grid must be strictly increasing");
        }
    }
    std::vector<LengthPoint> out;
    out.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        const CredibleInterval ci = hpd_exact(post, alpha);
        const double step = std::min({h, 0.5 * alpha, 0.5 * (1.0 - alpha)});
        const double up = hpd_exact(post, alpha + step).length();
        const double down = hpd_exact(post, alpha - step).length();
        LengthPoint p;
        p.alpha = alpha;
        p.lower = ci.lower;
        p.upper = ci.upper;
        p.length = ci.length();
        p.fd_slope = (up - down) / (2.0 * step);
        p.theory_slope = -1.0 / posterior_pdf(ci.lower, post);
        out.push_back(p);
    }
    return out;
}

}  // namespace rrb
