#pragma once

#include <vector>

#include "qpdec/device.hpp"
#include "qpdec/numerics.hpp"
#include "qpdec/rates.hpp"

namespace qpdec {

// smallest photon number n >= 1 with n omega_d + omega_if > 2 dbar, where
// omega_fi = -omega_if is the transition frequency penalty (omega_fi > 0
// costs energy).  Near-integer ratios snap to the marginal channel.
int min_photon_number(const device_params& dev, const drive_spec& drv,
                      double omega_fi);

// matrix elements of cos(phi_j / 2) and sin(phi_j / 2) between harmonic
// transmon levels; lambda = phi_zpf / 2, c_j the junction phase offset
struct half_phase_elements {
    int n_levels{0};
    double lambda{0.0};
    double half_offset{0.0};  // c_j / 2
    std::vector<double> cos_el;  // row-major [f * n_levels + i]
    std::vector<double> sin_el;

    double cos_at(int f, int i) const { return cos_el[static_cast<std::size_t>(f * n_levels + i)]; }
    double sin_at(int f, int i) const { return sin_el[static_cast<std::size_t>(f * n_levels + i)]; }
};

// leading_order drops the Debye-Waller factor and the Laguerre correction,
// keeping only the lowest power of lambda per element
half_phase_elements half_phase_matrix_elements(const device_params& dev,
                                               int junction, int n_levels,
                                               bool leading_order = false);

// n-photon pair-breaking rates between the two lowest levels, with the flux
// factors (R -+ 1) and parity-selected structure factors S~; excitation flips
// the sign of omega_q in the S~ argument only
rate_result gamma_cp_relax_n(const device_params& dev, const drive_spec& drv,
                             int n, const numerics& num = {});
rate_result gamma_cp_excite_n(const device_params& dev, const drive_spec& drv,
                              int n, const numerics& num = {});

// generalized i -> f rate from the junction-resolved half-phase elements;
// amplitude choice follows num.cp_amplitude (renormalized by default)
rate_result gamma_cp_general(const device_params& dev, const drive_spec& drv,
                             int n, int i, int f, const numerics& num = {},
                             bool leading_order_elements = false);

// photon-number sums n = n_min .. n_max (below-threshold terms contribute 0)
rate_result gamma_cp_relax(const device_params& dev, const drive_spec& drv,
                           int n_max = 6, const numerics& num = {});
rate_result gamma_cp_excite(const device_params& dev, const drive_spec& drv,
                            int n_max = 6, const numerics& num = {});

// onset drive frequency of the n-photon channel, clipped at 0
double cp_threshold(const device_params& dev, int n, bool excite);

}
