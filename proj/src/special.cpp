#include "qpdec/special.hpp"

#include <cmath>
#include <cstdlib>

#include "qpdec/errors.hpp"

namespace qpdec {

double factorial(int n) {
    if (n < 0) throw config_error("factorial of negative argument");
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double ln_factorial(int n) {
    if (n < 0) throw config_error("ln_factorial of negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double z_factor(int n, double a) {
    if (n < 0) throw config_error("z_factor: n must be >= 0");
    // term ratio t_{k+1}/t_k = -(a^2/4) / ((k+1)(n+k+1))
    const double q = -0.25 * a * a;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        term *= q / (static_cast<double>(k + 1) * static_cast<double>(n + k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) return sum;
    }
    throw truncation_error("z_factor series did not converge");
}

double bessel_j_series(int n, double x) {
    if (n < 0) throw config_error("bessel_j_series: n must be >= 0");
    // J_n(x) = (x/2)^n / n! * Z_n(x)
    double pref = 1.0;
    for (int k = 1; k <= n; ++k) pref *= 0.5 * x / k;
    return pref * z_factor(n, x);
}

double assoc_laguerre(int n, int alpha, double x) {
    if (n < 0 || alpha < 0)
        throw config_error("assoc_laguerre: n and alpha must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;                     // L_0
    double l = 1.0 + alpha - x;           // L_1
    for (int k = 1; k < n; ++k) {
        const double lp1 =
            ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

}  // namespace qpdec
