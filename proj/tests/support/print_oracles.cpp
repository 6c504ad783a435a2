// Prints the oracle values frozen into the unit tests. Rebuild and run to
// regenerate them; it does not link the library.
#include <cmath>
#include <cstdio>

#include "oracles.hpp"

int main() {
    using namespace oracle;
    std::printf("P(4, 9.319232)            = %.17g\n", reg_lower_gamma_quadrature(4.0, 9.319232));
    std::printf("Gamma*(4, 0.5, 3)         = %.17g\n", incomplete_gamma_quadrature(4.0, 0.5, 3.0));
    std::printf("chi2q(0.95, 8)            = %.17g\n", chi2_quantile_bisection(0.95, 8.0));
    std::printf("chi2q(0.5, 8)             = %.17g\n", chi2_quantile_bisection(0.5, 8.0));
    std::printf("gamma_pdf(4; 4, 2)        = %.17g\n", gamma_density(4.0, 4.0, 2.0));
    const double s = 4.0, A = 9.319232;
    const double kernel_norm = integrate_log([&](double d) { return std::exp(-A / d) / std::pow(d, s + 1.0); }, A * 1e-4, A * 1e8);
    std::printf("post_pdf(2; 4, 9.319232)  = %.17g\n", std::exp(-A / 2.0) / std::pow(2.0, s + 1.0) / kernel_norm);
    std::printf("post_cov(1,5; 4, 9.319..) = %.17g\n", posterior_mass(1.0, 5.0, s, A));
    std::printf("bayes_abs(a3,b5,n2)       = %.17g\n", 2.0 * A / chi2_quantile_bisection(0.5, 8.0));
    std::printf("ET lo (s4, A6.013778, .1) = %.17g\n", posterior_quantile(0.05, 4.0, 6.013778));
    std::printf("ET hi (s4, A6.013778, .1) = %.17g\n", posterior_quantile(0.95, 4.0, 6.013778));
    auto [lo, hi] = hpd_grid(s, A, 0.10, 1e-3, 60.0, 1000000);
    std::printf("HPD grid lo (s4, .1)      = %.17g\n", lo);
    std::printf("HPD grid hi (s4, .1)      = %.17g\n", hi);
    std::printf("HPM g=1 lower             = %.17g\n", (A + 10.0 + std::sqrt(A * A + 40.0 * A)) / 10.0);
    return 0;
}
