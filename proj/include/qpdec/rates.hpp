#pragma once

#include <string>
#include <vector>

#include "qpdec/device.hpp"
#include "qpdec/distribution.hpp"
#include "qpdec/numerics.hpp"

namespace qpdec {

enum class process {
    tun_relax_1ph,   // one-photon QP-tunneling relaxation 1 -> 0
    tun_excite_1ph,  // one-photon QP-tunneling excitation 0 -> 1
    tun_leak_1to2,   // one-photon leakage 1 -> 2 (harmonic approximation)
    tun_relax_2ph,   // two-photon QP-tunneling relaxation
    tun_excite_2ph,  // two-photon QP-tunneling excitation
    cp_relax,        // Cooper-pair-breaking relaxation (summed over photons)
    cp_excite,       // Cooper-pair-breaking excitation
};

const char* process_name(process p);
process process_from_name(const std::string& name);

struct rate_result {
    process proc{};
    double value{0.0};        // transition rate, 1/s
    double normalized{0.0};   // dimensionless per-process normalization
    int photons{0};           // photon order of the dominant/selected term
    bool below_threshold{false};
    double threshold_omega_d{0.0};  // onset drive frequency, rad/s (clipped at 0)
    std::vector<std::string> warnings;
};

// one-photon rates: prefactor |omega_ac| x_qp / 4 pi, structure factors at
// omega_d +- omega_q; normalized value is rate / (|omega_ac| x_qp)
rate_result gamma1_relax(const device_params& dev, const drive_spec& drv,
                         const qp_distribution& dist, const numerics& num = {});
rate_result gamma1_excite(const device_params& dev, const drive_spec& drv,
                          const qp_distribution& dist,
                          const numerics& num = {});

// leakage 1 -> 2 = 2x the 0 -> 1 rate in the harmonic approximation
rate_result gamma_leak_12(const device_params& dev, const drive_spec& drv,
                          const qp_distribution& dist,
                          const numerics& num = {});

// two-photon rates: prefactor x_qp omega_ac^2 / (32 pi omega_q), screening
// bracket (1 + 4 D0(2 omega_d +- omega_q))^2, structure-factor roles of the
// flux coefficients swapped relative to the one-photon case; normalized value
// is rate / (omega_ac^2 x_qp / omega_q)
rate_result gamma2_relax(const device_params& dev, const drive_spec& drv,
                         const qp_distribution& dist, const numerics& num = {});
rate_result gamma2_excite(const device_params& dev, const drive_spec& drv,
                          const qp_distribution& dist,
                          const numerics& num = {});

struct threshold_table {
    double relax_1ph;   // ddiff - omega_q
    double excite_1ph;  // ddiff + omega_q
    double relax_2ph;   // (ddiff - omega_q) / 2
    double excite_2ph;  // (ddiff + omega_q) / 2
};

// cold-limit onset drive frequencies, clipped at 0
threshold_table tunneling_thresholds(const device_params& dev);

struct ratio_result {
    double closed_form;  // sweet-spot closed-form expression
    double quotient;     // independent quotient of the two rate formulas
};

// two-photon / one-photon relaxation ratio in the cold limit; both routes
// assume operation above both thresholds (throws config_error otherwise).
// The closed form is the sweet-spot expression; at nonzero flux the quotient
// route keeps the flux factors and the two can differ.
ratio_result ratio_2ph_to_1ph(const device_params& dev, const drive_spec& drv,
                              const numerics& num = {});

}
