#include "qpdec/rates.hpp"

#include <cmath>
#include <sstream>

#include "qpdec/errors.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/units.hpp"

namespace qpdec {

const char* process_name(process p) {
    switch (p) {
        case process::tun_relax_1ph: return "tun_relax_1ph";
        case process::tun_excite_1ph: return "tun_excite_1ph";
        case process::tun_leak_1to2: return "tun_leak_1to2";
        case process::tun_relax_2ph: return "tun_relax_2ph";
        case process::tun_excite_2ph: return "tun_excite_2ph";
        case process::cp_relax: return "cp_relax";
        case process::cp_excite: return "cp_excite";
    }
    return "unknown";
}

process process_from_name(const std::string& name) {
    for (process p : {process::tun_relax_1ph, process::tun_excite_1ph,
                      process::tun_leak_1to2, process::tun_relax_2ph,
                      process::tun_excite_2ph, process::cp_relax,
                      process::cp_excite}) {
        if (name == process_name(p)) return p;
    }
    throw config_error("unknown process: " + name);
}

namespace {

void common_warnings(const device_params& dev, const drive_spec& drv,
                     rate_result& out) {
    if (drv.a > 0.3) {
        std::ostringstream os;
        os << "drive amplitude a = " << drv.a
           << " is outside the perturbative regime (a << 1 assumed)";
        out.warnings.push_back(os.str());
    }
    for (auto& w : device_warnings(dev)) out.warnings.push_back(w);
}

// shared one-photon kernel; sgn = +1 relaxation, -1 excitation
rate_result gamma1_impl(const device_params& dev, const drive_spec& drv,
                        const qp_distribution& dist, const numerics& num,
                        int sgn, process proc) {
    rate_result out;
    out.proc = proc;
    out.photons = 1;
    const double wq = omega_q(dev);
    const double arg = drv.omega_d + sgn * wq;
    const double r = flux_factor(dev);
    const double wac = std::abs(ac_stark(dev, drv, num));
    out.threshold_omega_d = std::max(0.0, delta_diff(dev) - sgn * wq);
    common_warnings(dev, drv, out);
    if (near_resonance(dev, drv.omega_d, num))
        out.warnings.push_back(
            "omega_d is within 10x the resonance guard of omega_q");

    const auto sf = s_pm_pair(dev, dist, arg, num);
    if (sf.plus.below_threshold) {
        out.below_threshold = true;
        return out;
    }
    const double braces =
        sf.plus.value * (r - 1.0) + sf.minus.value * (r + 1.0);
    out.normalized = braces / (4.0 * units::pi);
    out.value = wac * dist.x_qp() * out.normalized;
    return out;
}

// shared two-photon kernel; sgn = +1 relaxation, -1 excitation
rate_result gamma2_impl(const device_params& dev, const drive_spec& drv,
                        const qp_distribution& dist, const numerics& num,
                        int sgn, process proc) {
    rate_result out;
    out.proc = proc;
    out.photons = 2;
    const double wq = omega_q(dev);
    const double arg = 2.0 * drv.omega_d + sgn * wq;
    const double r = flux_factor(dev);
    const double wac = std::abs(ac_stark(dev, drv, num));
    out.threshold_omega_d = std::max(0.0, 0.5 * (delta_diff(dev) - sgn * wq));
    common_warnings(dev, drv, out);
    if (near_resonance(dev, arg, num))
        out.warnings.push_back(
            "2 omega_d " + std::string(sgn > 0 ? "+" : "-") +
            " omega_q is within 10x the resonance guard of omega_q");

    // throws on_resonance_error inside the guard (divergent screening)
    const double bold = 1.0 + 4.0 * d0_response(dev, arg, num);

    const auto sf = s_pm_pair(dev, dist, arg, num);
    if (sf.plus.below_threshold) {
        out.below_threshold = true;
        return out;
    }
    // note the swap: S_+ rides the (R + 1) coefficient here
    const double braces =
        sf.plus.value * (r + 1.0) + sf.minus.value * (r - 1.0);
    out.normalized = bold * bold * braces / (32.0 * units::pi);
    out.value = dist.x_qp() * wac * wac / wq * out.normalized;
    return out;
}

}  // namespace

rate_result gamma1_relax(const device_params& dev, const drive_spec& drv,
                         const qp_distribution& dist, const numerics& num) {
    return gamma1_impl(dev, drv, dist, num, +1, process::tun_relax_1ph);
}

rate_result gamma1_excite(const device_params& dev, const drive_spec& drv,
                          const qp_distribution& dist, const numerics& num) {
    return gamma1_impl(dev, drv, dist, num, -1, process::tun_excite_1ph);
}

rate_result gamma_leak_12(const device_params& dev, const drive_spec& drv,
                          const qp_distribution& dist, const numerics& num) {
    rate_result out = gamma1_impl(dev, drv, dist, num, -1, process::tun_leak_1to2);
    out.value *= 2.0;
    out.normalized *= 2.0;
    out.warnings.push_back(
        "leakage 1->2 uses the harmonic approximation (matrix element 2x the "
        "0->1 one, same frequency)");
    return out;
}

rate_result gamma2_relax(const device_params& dev, const drive_spec& drv,
                         const qp_distribution& dist, const numerics& num) {
    return gamma2_impl(dev, drv, dist, num, +1, process::tun_relax_2ph);
}

rate_result gamma2_excite(const device_params& dev, const drive_spec& drv,
                          const qp_distribution& dist, const numerics& num) {
    return gamma2_impl(dev, drv, dist, num, -1, process::tun_excite_2ph);
}

threshold_table tunneling_thresholds(const device_params& dev) {
    const double wq = omega_q(dev);
    const double dd = delta_diff(dev);
    threshold_table t;
    t.relax_1ph = std::max(0.0, dd - wq);
    t.excite_1ph = std::max(0.0, dd + wq);
    t.relax_2ph = std::max(0.0, 0.5 * (dd - wq));
    t.excite_2ph = std::max(0.0, 0.5 * (dd + wq));
    return t;
}

ratio_result ratio_2ph_to_1ph(const device_params& dev, const drive_spec& drv,
                              const numerics& num) {
    const double wq = omega_q(dev);
    const double wd = drv.omega_d;
    const double dd = delta_diff(dev);
    const double dbar = delta_bar(dev);
    const double s1 = wd + wq - dd;
    const double s2 = 2.0 * wd + wq - dd;
    if (!(s1 > 0.0) || !(s2 > 0.0))
        throw config_error(
            "ratio_2ph_to_1ph requires omega_d above both cold-limit "
            "thresholds");
    const double wac = std::abs(ac_stark(dev, drv, num));

    // sweet-spot closed form
    const double arg2 = 2.0 * wd + wq;
    const double screen = 1.0 + 4.0 * wq * wq / (arg2 * arg2 - wq * wq);
    ratio_result out;
    out.closed_form = 0.125 * (wac / wq) * 2.0 * dbar /
                      (std::sqrt(s1) * std::sqrt(s2)) * screen * screen;

    // independent quotient of the two rate formulas in the cold limit,
    // flux factors kept (x_qp and |omega_ac| partially cancel)
    const double r = flux_factor(dev);
    const double g2 = (wac * wac / (32.0 * units::pi * wq)) *
                      std::pow(1.0 + 4.0 * d0_response(dev, arg2, num), 2) *
                      (s_pm_cold_asymptotic(dev, 1, arg2) * (r + 1.0) +
                       s_pm_cold_asymptotic(dev, -1, arg2) * (r - 1.0));
    const double g1 = (wac / (4.0 * units::pi)) *
                      (s_pm_cold_asymptotic(dev, 1, wd + wq) * (r - 1.0) +
                       s_pm_cold_asymptotic(dev, -1, wd + wq) * (r + 1.0));
    out.quotient = g2 / g1;
    return out;
}

}  // namespace qpdec
