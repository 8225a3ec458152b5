#include "qpdec/fidelity.hpp"

#include <cmath>
#include <sstream>

#include "qpdec/errors.hpp"
#include "qpdec/pair_breaking.hpp"
#include "qpdec/rates.hpp"
#include "qpdec/units.hpp"

namespace qpdec {

fidelity_bound fidelity_readout_bound(const device_params& dev,
                                      const drive_spec& drv,
                                      const qp_distribution& dist, double t_ro,
                                      const numerics& num) {
    if (!(t_ro > 0.0)) throw config_error("t_ro must be > 0");
    const rate_result r = gamma1_relax(dev, drv, dist, num);
    fidelity_bound out;
    out.bound = r.value * t_ro;
    out.coefficient = r.normalized;  // alpha
    out.below_threshold = r.below_threshold;
    out.notes = r.warnings;
    return out;
}

fidelity_bound fidelity_gate_bound(const device_params& dev,
                                   const qp_distribution& dist, double t_gate,
                                   const numerics& num) {
    if (!(t_gate > 0.0)) throw config_error("t_gate must be > 0");
    // detuning regularized by the qubit nonlinearity, amplitude set for a pi
    // rotation in t_gate: a = pi / (E_J phi_zpf t_gate)
    drive_spec drv;
    drv.omega_d = omega_q(dev) + dev.ec;
    drv.a = units::pi / (ej_total(dev) * phi_zpf(dev) * t_gate);
    const rate_result r = gamma1_relax(dev, drv, dist, num);
    fidelity_bound out;
    out.bound = r.value * t_gate;
    out.coefficient = out.bound * dev.ec * t_gate / dist.x_qp();  // beta
    out.below_threshold = r.below_threshold;
    out.notes = r.warnings;
    out.notes.push_back(
        "gate-bound convention: omega_d = omega_q + E_C, a = pi / (E_J "
        "phi_zpf t_gate); the O(1) coefficient beta depends on this choice");
    return out;
}

fidelity_bound fidelity_highfreq_readout(const device_params& dev,
                                         const drive_spec& drv, double t_ro,
                                         const numerics& num) {
    if (!(t_ro > 0.0)) throw config_error("t_ro must be > 0");
    const rate_result r = gamma_cp_relax_n(dev, drv, 2, num);
    fidelity_bound out;
    out.bound = r.value * t_ro;
    out.coefficient = r.normalized;
    out.below_threshold = r.below_threshold;
    out.notes = r.warnings;
    const int nmin = min_photon_number(dev, drv, -omega_q(dev));
    if (nmin != 2) {
        std::ostringstream os;
        os << "min photon number at this drive is " << nmin
           << "; the two-photon bound assumes 2";
        out.notes.push_back(os.str());
    }
    return out;
}

}  // namespace qpdec
