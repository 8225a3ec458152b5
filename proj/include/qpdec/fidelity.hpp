#pragma once

#include <string>
#include <vector>

#include "qpdec/device.hpp"
#include "qpdec/distribution.hpp"
#include "qpdec/numerics.hpp"

namespace qpdec {

struct fidelity_bound {
    double bound{0.0};        // lower bound on 1 - F
    double coefficient{0.0};  // extracted dimensionless coefficient
    bool below_threshold{false};
    std::vector<std::string> notes;
};

// readout: 1 - F >= Gamma1(1->0) t_ro; coefficient alpha = Gamma / (|w_ac| x_qp)
fidelity_bound fidelity_readout_bound(const device_params& dev,
                                      const drive_spec& drv,
                                      const qp_distribution& dist, double t_ro,
                                      const numerics& num = {});

// gate: drive at omega_d = omega_q + E_C with the resonant-amplitude
// convention a = pi / (E_J phi_zpf t_gate); 1 - F >= beta x_qp / (E_C t_gate),
// beta reported as the extracted coefficient
fidelity_bound fidelity_gate_bound(const device_params& dev,
                                   const qp_distribution& dist, double t_gate,
                                   const numerics& num = {});

// high-frequency readout: two-photon pair-breaking bound Gamma~(2) t_ro
fidelity_bound fidelity_highfreq_readout(const device_params& dev,
                                         const drive_spec& drv, double t_ro,
                                         const numerics& num = {});

}
