#pragma once

namespace qpdec {

enum class cp_amplitude_mode {
    renormalized,  // use the drive-renormalized amplitude (default)
    bare,          // use the bare drive amplitude
};

// knobs shared by the spectral integrals and rate formulas
struct numerics {
    double rel_tol{1e-8};          // relative tolerance for spectral integrals
    double resonance_guard{1e-9};  // hard-error band around resonances, relative to omega_q
    double c_norm{0.0};            // density-of-states normalization; 0 -> calibrated default
    int max_panels{4000};          // adaptive quadrature panel budget
    cp_amplitude_mode cp_amplitude{cp_amplitude_mode::renormalized};
};

}
