#pragma once

#include <string>
#include <vector>

#include "qpdec/numerics.hpp"

namespace qpdec {

// Flux-tunable transmon shunted by two junctions with superconducting leads
// of (possibly) unequal gaps.  All energy-like members are angular rad/s.
struct device_params {
    double ej1{};      // Josephson energy of junction 1
    double ej2{};      // Josephson energy of junction 2
    double ec{};       // charging energy
    double delta_l{};  // smaller lead gap
    double delta_r{};  // larger lead gap (delta_r >= delta_l)
    double flux{};     // external flux in units of Phi_0
};

// drive with resolved bare amplitude (dimensionless phase amplitude a > 0)
struct drive_spec {
    double omega_d{};  // drive angular frequency, rad/s
    double a{};        // bare dimensionless amplitude
};

// throws config_error on invalid parameter combinations
void validate(const device_params& dev);

// non-fatal parameter warnings (transmon limit, large asymmetry, ...)
std::vector<std::string> device_warnings(const device_params& dev);

double ej_total_at(const device_params& dev, double flux);  // E_J(flux)
double ej_total(const device_params& dev);                  // E_J at dev.flux
double ej_asymmetry(const device_params& dev);              // (ej2-ej1)/(ej1+ej2)

// equilibrium phase offset, continuous in flux (unwrapped across half-integers)
double phi_min_at(const device_params& dev, double flux);
double phi_min(const device_params& dev);

// junction phase offset about the potential minimum, j in {1, 2}; satisfies
// sum_j E_Jj cos(c_j) = ej_total and sum_j E_Jj sin(c_j) = 0 exactly
double junction_offset(const device_params& dev, int junction);

double omega_q_at(const device_params& dev, double flux);  // sqrt(8 E_J E_C)
double omega_q(const device_params& dev);
double omega_q0(const device_params& dev);  // at flux = 0
double phi_zpf(const device_params& dev);   // (2 E_C / E_J)^(1/4)

double delta_bar(const device_params& dev);   // (delta_l + delta_r) / 2
double delta_diff(const device_params& dev);  // delta_r - delta_l

// flux suppression factor R = E_J(0) / E_J(flux); exactly 1.0 at flux = 0
double flux_factor(const device_params& dev);

// dimensionless junction conductance 4 E_J(flux) / (pi * delta_bar)
double ab_conductance(const device_params& dev);

// linear response function D0(omega) = omega_q^2 / (omega^2 - omega_q^2).
// Throws on_resonance_error when | |omega| - omega_q | <= guard * omega_q.
double d0_response(const device_params& dev, double omega,
                   const numerics& num = {});

// true when omega is within 10x the guard band (warning zone)
bool near_resonance(const device_params& dev, double omega,
                    const numerics& num = {});

// qubit propagator D(omega) = phi_zpf^2 * 2 omega_q / (omega^2 - omega_q^2)
double propagator_d(const device_params& dev, double omega,
                    const numerics& num = {});

// screened amplitude a * (1 + D0(omega_d)); negative below resonance
double renormalized_amplitude(const device_params& dev, const drive_spec& drv,
                              const numerics& num = {});

// ac Stark shift omega_ac = -omega_q * a_tilde^2 / 8 (always <= 0)
double ac_stark(const device_params& dev, const drive_spec& drv,
                const numerics& num = {});

// invert the Stark shift for the bare amplitude; omega_ac must be < 0
double amplitude_from_stark(const device_params& dev, double omega_d,
                            double omega_ac, const numerics& num = {});

// build device from target omega_q(0) and junction ratio ej2/ej1
device_params device_from_omega_q0(double omega_q0, double ej_ratio, double ec,
                                   double delta_l, double delta_r, double flux);

}
