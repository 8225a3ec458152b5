#include "qpdec/device.hpp"

#include <cmath>
#include <sstream>

#include "qpdec/errors.hpp"
#include "qpdec/units.hpp"

namespace qpdec {

void validate(const device_params& dev) {
    auto bad = [](const std::string& msg) { throw config_error("device: " + msg); };
    if (!(dev.ej1 > 0.0) || !std::isfinite(dev.ej1)) bad("ej1 must be > 0");
    if (!(dev.ej2 > 0.0) || !std::isfinite(dev.ej2)) bad("ej2 must be > 0");
    if (!(dev.ec > 0.0) || !std::isfinite(dev.ec)) bad("ec must be > 0");
    if (!(dev.delta_l > 0.0) || !std::isfinite(dev.delta_l))
        bad("delta_l must be > 0");
    if (!(dev.delta_r > 0.0) || !std::isfinite(dev.delta_r))
        bad("delta_r must be > 0");
    if (dev.delta_r < dev.delta_l) bad("delta_r must be >= delta_l");
    if (!std::isfinite(dev.flux)) bad("flux must be finite");
}

std::vector<std::string> device_warnings(const device_params& dev) {
    std::vector<std::string> w;
    const double ej = ej_total(dev);
    if (ej > 0.0 && ej / dev.ec < 20.0) {
        std::ostringstream os;
        os << "E_J/E_C = " << ej / dev.ec
           << " at this flux; transmon expansion assumes E_J/E_C >> 1";
        w.push_back(os.str());
    }
    if (ej > 0.0 && omega_q(dev) > 0.5 * (dev.delta_l + dev.delta_r)) {
        w.push_back("omega_q exceeds the mean gap; quasistatic treatment of the "
                    "leads is marginal");
    }
    return w;
}

double ej_total_at(const device_params& dev, double flux) {
    const double c = std::cos(units::pi * flux);
    const double s2 =
        dev.ej1 * dev.ej1 + dev.ej2 * dev.ej2 + 2.0 * dev.ej1 * dev.ej2 * c;
    return std::sqrt(std::max(s2, 0.0));
}

double ej_total(const device_params& dev) { return ej_total_at(dev, dev.flux); }

double ej_asymmetry(const device_params& dev) {
    return (dev.ej2 - dev.ej1) / (dev.ej1 + dev.ej2);
}

double phi_min_at(const device_params& dev, double flux) {
    const double r = ej_asymmetry(dev);
    if (r == 0.0) return 0.0;
    // principal branch on the reduced flux, then unwrap: the branch of
    // atan(r tan(pi x)) jumps by -sign(r)*pi at every half-integer crossing
    const double n = std::nearbyint(flux);
    const double xr = flux - n;
    const double phi0 =
        std::atan2(r * std::sin(units::pi * xr), std::cos(units::pi * xr));
    const double sgn = (r > 0.0) ? 1.0 : -1.0;
    return phi0 + sgn * units::pi * n;
}

double phi_min(const device_params& dev) { return phi_min_at(dev, dev.flux); }

double junction_offset(const device_params& dev, int junction) {
    if (junction != 1 && junction != 2)
        throw config_error("junction index must be 1 or 2");
    // Offsets of the two junction phases about the potential minimum.  They
    // come from the same decomposition that defines E_J(flux): with the
    // junctions split +-pi flux/2 around the common mode, the minimum sits at
    // arctan[r tan(pi flux/2)] and the amplitude is exactly ej_total.  This
    // keeps sum_j E_Jj cos(c_j) = E_J(flux) and sum_j E_Jj sin(c_j) = 0, which
    // the junction-resolved pair-breaking rate relies on to reproduce the
    // flux factors (R -+ 1).
    const double sign = (junction == 1) ? 1.0 : -1.0;  // -(-1)^j
    return phi_min_at(dev, 0.5 * dev.flux) +
           sign * units::pi * 0.5 * dev.flux;
}

namespace {

double require_ej(const device_params& dev, double flux) {
    const double ej = ej_total_at(dev, flux);
    if (ej <= 0.0) {
        std::ostringstream os;
        os << "E_J(flux) vanishes at flux = " << flux
           << "; qubit frequency and phi_zpf are undefined";
        throw flux_degenerate_error(os.str());
    }
    return ej;
}

}  // namespace

double omega_q_at(const device_params& dev, double flux) {
    return std::sqrt(8.0 * require_ej(dev, flux) * dev.ec);
}

double omega_q(const device_params& dev) { return omega_q_at(dev, dev.flux); }

double omega_q0(const device_params& dev) { return omega_q_at(dev, 0.0); }

double phi_zpf(const device_params& dev) {
    return std::pow(2.0 * dev.ec / require_ej(dev, dev.flux), 0.25);
}

double delta_bar(const device_params& dev) {
    return 0.5 * (dev.delta_l + dev.delta_r);
}

double delta_diff(const device_params& dev) {
    return dev.delta_r - dev.delta_l;
}

double flux_factor(const device_params& dev) {
    // same expression evaluated twice so that flux = 0 gives exactly 1.0
    return ej_total_at(dev, 0.0) / require_ej(dev, dev.flux);
}

double ab_conductance(const device_params& dev) {
    return 4.0 * ej_total(dev) / (units::pi * delta_bar(dev));
}

double d0_response(const device_params& dev, double omega,
                   const numerics& num) {
    const double wq = omega_q(dev);
    const double det = std::abs(std::abs(omega) - wq);
    if (det <= num.resonance_guard * wq) {
        std::ostringstream os;
        os << "omega = " << omega << " rad/s is within the resonance guard of "
           << "omega_q = " << wq << " rad/s";
        throw on_resonance_error(os.str());
    }
    return wq * wq / (omega * omega - wq * wq);
}

bool near_resonance(const device_params& dev, double omega,
                    const numerics& num) {
    const double wq = omega_q(dev);
    return std::abs(std::abs(omega) - wq) <= 10.0 * num.resonance_guard * wq;
}

double propagator_d(const device_params& dev, double omega,
                    const numerics& num) {
    const double z = phi_zpf(dev);
    return 2.0 * z * z * d0_response(dev, omega, num) / omega_q(dev);
}

double renormalized_amplitude(const device_params& dev, const drive_spec& drv,
                              const numerics& num) {
    return drv.a * (1.0 + d0_response(dev, drv.omega_d, num));
}

double ac_stark(const device_params& dev, const drive_spec& drv,
                const numerics& num) {
    const double at = renormalized_amplitude(dev, drv, num);
    return -omega_q(dev) * at * at / 8.0;
}

double amplitude_from_stark(const device_params& dev, double omega_d,
                            double omega_ac, const numerics& num) {
    if (!(omega_ac < 0.0))
        throw config_error("omega_ac must be negative (red Stark shift)");
    const double at = std::sqrt(-8.0 * omega_ac / omega_q(dev));
    const double screen = 1.0 + d0_response(dev, omega_d, num);
    return at / std::abs(screen);
}

device_params device_from_omega_q0(double omega_q0, double ej_ratio, double ec,
                                   double delta_l, double delta_r,
                                   double flux) {
    if (!(omega_q0 > 0.0)) throw config_error("omega_q0 must be > 0");
    if (!(ej_ratio > 0.0)) throw config_error("ej_ratio must be > 0");
    if (!(ec > 0.0)) throw config_error("ec must be > 0");
    const double ej0 = omega_q0 * omega_q0 / (8.0 * ec);  // ej1 + ej2
    device_params dev;
    dev.ej1 = ej0 / (1.0 + ej_ratio);
    dev.ej2 = ej0 * ej_ratio / (1.0 + ej_ratio);
    dev.ec = ec;
    dev.delta_l = delta_l;
    dev.delta_r = delta_r;
    dev.flux = flux;
    validate(dev);
    return dev;
}

}  // namespace qpdec
