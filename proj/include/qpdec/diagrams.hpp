#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qpdec/device.hpp"
#include "qpdec/numerics.hpp"

namespace qpdec {

enum class transition { relax_10, excite_01 };

enum class amplitude_mode {
    leading,  // lowest order in the drive per vertex (Z factors -> 1)
    raw,      // keep the full drive resummation factors Z_n
};

// one interaction vertex in a tree diagram; the root is the tunneling vertex,
// interior vertices come from the Josephson-phase nonlinearity
struct diag_node {
    int m{0};    // qubit-phase legs at the vertex
    int n{0};    // drive photons absorbed at the vertex
    int ext{0};  // external qubit legs attached here (0 or 1)
    std::vector<diag_node> children;
};

struct diagram {
    diag_node root;
    int n_photons{0};
    double multiplicity{1.0};  // leg-contraction count / symmetry divisors
    bool core{false};          // true when no screening insertions present
    std::string topology;      // canonical printable form
};

// all tree diagrams with one tunneling vertex, one external qubit leg and
// n_photons absorbed photons; deterministic canonical order; budget capped at
// n_photons <= 5 and max_vertices <= 6 (config_error beyond)
std::vector<diagram> enumerate_diagrams(int n_photons, int max_vertices = 6);

// transition amplitude split into the two coherence-factor channels:
//   M = t_j [ uu_coeff * (u_L u_R) e^{+i theta_j} + vv_coeff * (v_L v_R) e^{-i theta_j} ]
struct channel_amplitude {
    std::complex<double> uu{0.0, 0.0};
    std::complex<double> vv{0.0, 0.0};
    int n_photons{0};
};

// driven Josephson-phase vertex coefficient with the full Bessel factor
// Z_n(a): -i^(n-m) a^n / (2^n n!) / m! Z_n(a) E_J(flux); zero when m + n odd
std::complex<double> vertex_coeff_phi(int m, int n, double a,
                                      const device_params& dev);

// tunneling vertex channel coefficients with Z_n(a/2):
//   uu = i^(n-m) a^n / (4^n n!) / (2^m m!) Z_n(a/2),  vv = -(-1)^(m+n) uu
// junction phases e^{+-i theta_j} are attached at evaluation, not here
channel_amplitude vertex_coeff_tunneling(int m, int n, double a);

channel_amplitude evaluate_diagrams(const device_params& dev,
                                    const drive_spec& drv,
                                    const std::vector<diagram>& diags,
                                    transition tr, amplitude_mode mode,
                                    const numerics& num = {});

// sum over all diagrams at the given photon order
channel_amplitude evaluate_amplitude(const device_params& dev,
                                     const drive_spec& drv, int n_photons,
                                     transition tr, amplitude_mode mode,
                                     const numerics& num = {});

// single-diagram value (diagnostics, term-by-term comparisons)
channel_amplitude evaluate_one(const device_params& dev, const drive_spec& drv,
                               const diagram& diag, transition tr,
                               amplitude_mode mode, const numerics& num = {});

// per-photon screening factor omega_d^2 / (omega_d^2 - omega_q^2)
double bold_screening_factor(const device_params& dev, const drive_spec& drv,
                             const numerics& num = {});

// junction amplitude phase theta_j = -junction_offset / 2
double theta_junction(const device_params& dev, int junction);

}
