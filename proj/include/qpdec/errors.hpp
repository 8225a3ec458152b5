#pragma once

#include <stdexcept>
#include <string>

namespace qpdec {

// base class for all library errors
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad user input: malformed config, invalid parameter combinations (exit code 2)
struct config_error : error {
    using error::error;
};

// drive frequency (or a harmonic combination) inside the resonance guard band
struct on_resonance_error : error {
    using error::error;
};

// E_J(flux) = 0, so phi_zpf / omega_q / anything downstream is undefined
struct flux_degenerate_error : error {
    using error::error;
};

// adaptive quadrature failed to reach the requested tolerance
struct quadrature_error : error {
    using error::error;
};

// series or level truncation did not converge
struct truncation_error : error {
    using error::error;
};

}
