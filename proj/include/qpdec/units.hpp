#pragma once

#include <numbers>

// Internal unit conventions:
//   - all energies and frequencies are angular frequencies in rad/s (hbar = 1)
//   - temperatures are converted to rad/s via k_B / hbar on input
//   - flux is dimensionless, in units of the flux quantum Phi_0
//   - times are seconds internally; CLI/config use ns

namespace qpdec::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double k_boltzmann = 1.380649e-23;  // J/K (exact, SI 2019)
inline constexpr double planck_h = 6.62607015e-34;   // J s (exact, SI 2019)
inline constexpr double hbar = planck_h / two_pi;

// ordinary frequency in GHz -> angular frequency in rad/s
constexpr double ghz_to_rad(double f_ghz) { return two_pi * 1e9 * f_ghz; }
constexpr double rad_to_ghz(double w) { return w / (two_pi * 1e9); }

// temperature in mK -> k_B T / hbar in rad/s
constexpr double mk_to_rad(double t_mk) { return t_mk * 1e-3 * k_boltzmann / hbar; }

constexpr double ns_to_s(double t_ns) { return t_ns * 1e-9; }
constexpr double s_to_ns(double t_s) { return t_s * 1e9; }

}
