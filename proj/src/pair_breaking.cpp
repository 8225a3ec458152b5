#include "qpdec/pair_breaking.hpp"

#include <cmath>
#include <sstream>

#include "qpdec/errors.hpp"
#include "qpdec/special.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/units.hpp"

namespace qpdec {

int min_photon_number(const device_params& dev, const drive_spec& drv,
                      double omega_fi) {
    if (!(drv.omega_d > 0.0))
        throw config_error("min_photon_number: omega_d must be > 0");
    const double q = (2.0 * delta_bar(dev) + omega_fi) / drv.omega_d;
    if (q <= 1.0) return 1;
    const double qr = std::nearbyint(q);
    if (std::abs(q - qr) <= 1e-9 * std::max(1.0, std::abs(q)))
        return static_cast<int>(qr);
    return static_cast<int>(std::ceil(q));
}

half_phase_elements half_phase_matrix_elements(const device_params& dev,
                                               int junction, int n_levels,
                                               bool leading_order) {
    if (n_levels < 1) throw config_error("n_levels must be >= 1");
    half_phase_elements out;
    out.n_levels = n_levels;
    out.lambda = 0.5 * phi_zpf(dev);
    out.half_offset = 0.5 * junction_offset(dev, junction);
    out.cos_el.assign(static_cast<std::size_t>(n_levels) * n_levels, 0.0);
    out.sin_el.assign(static_cast<std::size_t>(n_levels) * n_levels, 0.0);

    const double lam = out.lambda;
    const double dw = std::exp(-0.5 * lam * lam);  // Debye-Waller factor
    for (int f = 0; f < n_levels; ++f) {
        for (int i = 0; i < n_levels; ++i) {
            const int d = std::abs(f - i);
            const int mn = std::min(f, i);
            const int mx = std::max(f, i);
            double mag;
            if (leading_order) {
                mag = std::pow(lam, d) *
                      std::sqrt(factorial(mx) / factorial(mn)) / factorial(d);
            } else {
                mag = dw * std::pow(lam, d) *
                      std::sqrt(factorial(mn) / factorial(mx)) *
                      assoc_laguerre(mn, d, lam * lam);
            }
            const double phase = out.half_offset + 0.5 * units::pi * d;
            const std::size_t idx = static_cast<std::size_t>(f * n_levels + i);
            out.cos_el[idx] = mag * std::cos(phase);
            out.sin_el[idx] = mag * std::sin(phase);
        }
    }
    return out;
}

double cp_threshold(const device_params& dev, int n, bool excite) {
    if (n < 1) throw config_error("photon number must be >= 1");
    const double wq = omega_q(dev);
    const double gap = 2.0 * delta_bar(dev) + (excite ? wq : -wq);
    return std::max(0.0, gap / n);
}

namespace {

// sgn = +1: relaxation 1 -> 0; sgn = -1: excitation 0 -> 1
rate_result gamma_cp_n_impl(const device_params& dev, const drive_spec& drv,
                            int n, const numerics& num, int sgn) {
    if (n < 1) throw config_error("photon number must be >= 1");
    rate_result out;
    out.proc = sgn > 0 ? process::cp_relax : process::cp_excite;
    out.photons = n;
    out.threshold_omega_d = cp_threshold(dev, n, sgn < 0);

    const double wq = omega_q(dev);
    const double arg = sgn * wq + n * drv.omega_d;
    const double wac = std::abs(ac_stark(dev, drv, num));
    const double r = flux_factor(dev);

    const auto st = s_tilde_pair(dev, arg, num);
    if (st.plus.below_threshold) {
        out.below_threshold = true;
        return out;
    }
    // parity selection: even n pairs S~_+ with (R - 1), odd n swaps the roles
    const double sp = (n % 2 == 0) ? st.plus.value : st.minus.value;
    const double sm = (n % 2 == 0) ? st.minus.value : st.plus.value;
    const double braces = sp * (r - 1.0) + sm * (r + 1.0);

    const double pref = wq / (units::pi * std::pow(2.0, n + 1) *
                              factorial(n) * factorial(n)) *
                        std::pow(wac / wq, n);
    out.value = pref * braces;
    out.normalized = out.value / omega_q0(dev);
    return out;
}

rate_result gamma_cp_sum_impl(const device_params& dev, const drive_spec& drv,
                              int n_max, const numerics& num, int sgn) {
    if (n_max < 1) throw config_error("cp_n_max must be >= 1");
    rate_result out;
    out.proc = sgn > 0 ? process::cp_relax : process::cp_excite;
    out.threshold_omega_d = cp_threshold(dev, n_max, sgn < 0);
    out.below_threshold = true;
    double total = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        rate_result term = gamma_cp_n_impl(dev, drv, n, num, sgn);
        if (term.below_threshold) continue;
        if (out.below_threshold) out.photons = n;  // first open channel
        out.below_threshold = false;
        total += term.value;
    }
    out.value = total;
    out.normalized = total / omega_q0(dev);
    return out;
}

}  // namespace

rate_result gamma_cp_relax_n(const device_params& dev, const drive_spec& drv,
                             int n, const numerics& num) {
    return gamma_cp_n_impl(dev, drv, n, num, +1);
}

rate_result gamma_cp_excite_n(const device_params& dev, const drive_spec& drv,
                              int n, const numerics& num) {
    return gamma_cp_n_impl(dev, drv, n, num, -1);
}

rate_result gamma_cp_general(const device_params& dev, const drive_spec& drv,
                             int n, int i, int f, const numerics& num,
                             bool leading_order_elements) {
    if (n < 1) throw config_error("photon number must be >= 1");
    if (i < 0 || f < 0) throw config_error("level indices must be >= 0");
    rate_result out;
    out.proc = i >= f ? process::cp_relax : process::cp_excite;
    out.photons = n;

    const double wq = omega_q(dev);
    const double omega_if = (i - f) * wq;  // harmonic spectrum
    const double arg = omega_if + n * drv.omega_d;
    out.threshold_omega_d =
        std::max(0.0, (2.0 * delta_bar(dev) - omega_if) / n);

    const double amp = (num.cp_amplitude == cp_amplitude_mode::renormalized)
                           ? renormalized_amplitude(dev, drv, num)
                           : drv.a;
    const double an = std::pow(std::abs(amp), n) /
                      (std::pow(4.0, n) * factorial(n));

    const auto st = s_tilde_pair(dev, arg, num);
    if (st.plus.below_threshold) {
        out.below_threshold = true;
        return out;
    }
    const double sp = (n % 2 == 0) ? st.plus.value : st.minus.value;
    const double sm = (n % 2 == 0) ? st.minus.value : st.plus.value;

    const int n_levels = std::max(i, f) + 1;
    double total = 0.0;
    const double ejs[2] = {dev.ej1, dev.ej2};
    for (int j = 1; j <= 2; ++j) {
        const auto el = half_phase_matrix_elements(dev, j, n_levels,
                                                   leading_order_elements);
        const double c2 = el.cos_at(f, i) * el.cos_at(f, i);
        const double s2 = el.sin_at(f, i) * el.sin_at(f, i);
        total += ejs[j - 1] * (sp * c2 + sm * s2);
    }
    out.value = (8.0 / units::pi) * an * an * total;
    out.normalized = out.value / omega_q0(dev);
    return out;
}

rate_result gamma_cp_relax(const device_params& dev, const drive_spec& drv,
                           int n_max, const numerics& num) {
    return gamma_cp_sum_impl(dev, drv, n_max, num, +1);
}

rate_result gamma_cp_excite(const device_params& dev, const drive_spec& drv,
                            int n_max, const numerics& num) {
    return gamma_cp_sum_impl(dev, drv, n_max, num, -1);
}

}  // namespace qpdec
