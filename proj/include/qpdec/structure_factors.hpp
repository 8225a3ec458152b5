#pragma once

#include "qpdec/device.hpp"
#include "qpdec/distribution.hpp"
#include "qpdec/numerics.hpp"

namespace qpdec {

struct structure_factor {
    double value{0.0};
    double est_abs_error{0.0};
    bool below_threshold{false};
    int evaluations{0};
};

struct structure_factor_pair {
    structure_factor plus;
    structure_factor minus;
};

// Tunneling structure factors
//   S_pm[w] = int_{max(dl, dr - w)}^{inf} (de / dbar)
//             [e (e + w) +- dl dr] (n_L(e) / x_QP)
//             / (sqrt(e^2 - dl^2) sqrt((e + w)^2 - dr^2))
// The occupation enters only through the x_QP-normalized ratio, so the result
// is invariant under rescaling of the distribution profile.  Negative w is
// supported (needed by excitation rates below threshold).  Returns exact 0
// with below_threshold when the integrand support is empty.
structure_factor_pair s_pm_pair(const device_params& dev,
                                const qp_distribution& dist, double omega,
                                const numerics& num = {});
structure_factor s_pm(const device_params& dev, const qp_distribution& dist,
                      int sign, double omega, const numerics& num = {});

// cold-limit closed form (1/2) (2 dbar / (w - ddiff))^{+-1/2}, 0 below threshold
double s_pm_cold_asymptotic(const device_params& dev, int sign, double omega);

// Pair-breaking structure factors
//   S~_pm[w] = int_{dl}^{w - dr} (de / dbar) [e (w - e) +- dl dr]
//              / (sqrt(e^2 - dl^2) sqrt((w - e)^2 - dr^2))
// nonzero only for w > dl + dr; exact 0 with below_threshold otherwise.
structure_factor_pair s_tilde_pair(const device_params& dev, double omega,
                                   const numerics& num = {});
structure_factor s_tilde_pm(const device_params& dev, int sign, double omega,
                            const numerics& num = {});

// onset asymptotes: S~_+ = pi + (pi/4) dw/dbar, S~_- = (pi/2) dw/dbar,
// dw = w - 2 dbar; 0 at or below threshold
double s_tilde_asymptotic(const device_params& dev, int sign, double omega);

// Global normalization constant fixed once by requiring the cold-strip
// quadrature to reproduce the closed-form asymptote including its prefactor.
// Evaluates to ~2 (the ideal-limit value); computed lazily, thread-safe.
double calibrated_c_norm();

// num.c_norm if positive, otherwise the calibrated default
double effective_c_norm(const numerics& num);

}
