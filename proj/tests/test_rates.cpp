#include <doctest.h>

#include <cmath>
#include <string>

#include "qpdec/device.hpp"
#include "qpdec/distribution.hpp"
#include "qpdec/errors.hpp"
#include "qpdec/rates.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/units.hpp"

using namespace qpdec;
using units::ghz_to_rad;

namespace {

// omega_q(0) = 6 GHz, gaps 45/55 GHz
device_params rate_device(double flux = 0.0) {
    return device_from_omega_q0(ghz_to_rad(6.0), 1.0, ghz_to_rad(0.25),
                                ghz_to_rad(45.0), ghz_to_rad(55.0), flux);
}

bool has_warning(const rate_result& r, const std::string& needle) {
    for (const auto& w : r.warnings)
        if (w.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("process names round-trip") {
    for (process p : {process::tun_relax_1ph, process::tun_excite_1ph,
                      process::tun_leak_1to2, process::tun_relax_2ph,
                      process::tun_excite_2ph, process::cp_relax,
                      process::cp_excite}) {
        CHECK(process_from_name(process_name(p)) == p);
    }
    CHECK_THROWS_AS(process_from_name("tun_relax_3ph"), config_error);
}

TEST_CASE("one-photon rates recompose from the structure factors") {
    const auto dev = rate_device(0.25);
    const drive_spec drv{ghz_to_rad(24.0), 0.02};
    const auto dist = qp_distribution::thermal(units::mk_to_rad(60.0), 1e-5);
    const numerics num;

    const double wq = omega_q(dev);
    const double r = flux_factor(dev);
    const double wac = std::abs(ac_stark(dev, drv, num));

    for (int sgn : {+1, -1}) {
        const auto got = sgn > 0 ? gamma1_relax(dev, drv, dist, num)
                                 : gamma1_excite(dev, drv, dist, num);
        const auto sf = s_pm_pair(dev, dist, drv.omega_d + sgn * wq, num);
        const double braces =
            sf.plus.value * (r - 1.0) + sf.minus.value * (r + 1.0);
        const double norm = braces / (4.0 * units::pi);
        CHECK(got.normalized == doctest::Approx(norm).epsilon(1e-13));
        CHECK(got.value ==
              doctest::Approx(wac * dist.x_qp() * norm).epsilon(1e-13));
        CHECK(got.photons == 1);
        CHECK(!got.below_threshold);
        CHECK(got.threshold_omega_d ==
              doctest::Approx(std::max(0.0, delta_diff(dev) - sgn * wq))
                  .epsilon(1e-12));
    }
}

TEST_CASE("two-photon rates recompose with the swapped flux coefficients") {
    const auto dev = rate_device(0.25);
    const drive_spec drv{ghz_to_rad(14.0), 0.02};
    const auto dist = qp_distribution::thermal(units::mk_to_rad(60.0), 1e-5);
    const numerics num;

    const double wq = omega_q(dev);
    const double r = flux_factor(dev);
    const double wac = std::abs(ac_stark(dev, drv, num));

    for (int sgn : {+1, -1}) {
        const auto got = sgn > 0 ? gamma2_relax(dev, drv, dist, num)
                                 : gamma2_excite(dev, drv, dist, num);
        const double arg = 2.0 * drv.omega_d + sgn * wq;
        const auto sf = s_pm_pair(dev, dist, arg, num);
        const double bold = 1.0 + 4.0 * d0_response(dev, arg, num);
        // S_+ rides (R + 1) here, the reverse of the one-photon pairing
        const double braces =
            sf.plus.value * (r + 1.0) + sf.minus.value * (r - 1.0);
        const double norm = bold * bold * braces / (32.0 * units::pi);
        CHECK(got.normalized == doctest::Approx(norm).epsilon(1e-13));
        CHECK(got.value ==
              doctest::Approx(dist.x_qp() * wac * wac / wq * norm)
                  .epsilon(1e-13));
        CHECK(got.photons == 2);
    }
}

TEST_CASE("at the flux sweet spot only one structure factor survives") {
    const auto dev = rate_device(0.0);
    const drive_spec drv{ghz_to_rad(24.0), 0.02};
    const auto dist = qp_distribution::thermal(units::mk_to_rad(60.0), 1e-5);
    const numerics num;
    CHECK(flux_factor(dev) == 1.0);

    const double wq = omega_q(dev);
    const double wac = std::abs(ac_stark(dev, drv, num));

    // one photon: S_+ coefficient (R - 1) vanishes identically
    const auto g1 = gamma1_relax(dev, drv, dist, num);
    const double sm = s_pm(dev, dist, -1, drv.omega_d + wq, num).value;
    CHECK(g1.normalized == sm / (2.0 * units::pi));
    CHECK(g1.value == wac * dist.x_qp() * g1.normalized);

    // two photons: S_- coefficient (R - 1) vanishes instead
    const auto g2 = gamma2_relax(dev, drv, dist, num);
    const double arg = 2.0 * drv.omega_d + wq;
    const double sp = s_pm(dev, dist, 1, arg, num).value;
    const double bold = 1.0 + 4.0 * d0_response(dev, arg, num);
    CHECK(g2.normalized ==
          doctest::Approx(bold * bold * sp / (16.0 * units::pi))
              .epsilon(1e-15));
}

TEST_CASE("rates vanish below the cold-limit thresholds") {
    const auto dev = rate_device(0.0);
    const auto strip = qp_distribution::cold_strip(ghz_to_rad(0.5), 1e-5);

    // ddiff = 10 GHz, omega_q = 6 GHz: one-photon relaxation needs 4 GHz
    const drive_spec drv{ghz_to_rad(3.0), 0.02};
    const auto g1 = gamma1_relax(dev, drv, strip, {});
    CHECK(g1.below_threshold);
    CHECK(g1.value == 0.0);
    CHECK(g1.normalized == 0.0);
    CHECK(g1.threshold_omega_d == doctest::Approx(ghz_to_rad(4.0)).epsilon(1e-12));

    const auto ge = gamma1_excite(dev, drv, strip, {});
    CHECK(ge.below_threshold);
    CHECK(ge.threshold_omega_d ==
          doctest::Approx(ghz_to_rad(16.0)).epsilon(1e-12));

    // two-photon channels halve the threshold
    const drive_spec slow{ghz_to_rad(1.5), 0.02};
    const auto g2 = gamma2_relax(dev, slow, strip, {});
    CHECK(g2.below_threshold);
    CHECK(g2.threshold_omega_d == doctest::Approx(ghz_to_rad(2.0)).epsilon(1e-12));
    const auto g2e = gamma2_excite(dev, slow, strip, {});
    CHECK(g2e.below_threshold);
    CHECK(g2e.threshold_omega_d == doctest::Approx(ghz_to_rad(8.0)).epsilon(1e-12));

    // while the two-photon relaxation channel is already open at 3 GHz
    const auto g2open = gamma2_relax(dev, drv, strip, {});
    CHECK(!g2open.below_threshold);
    CHECK(g2open.value > 0.0);
}

TEST_CASE("leakage is twice the excitation rate in the harmonic picture") {
    const auto dev = rate_device(0.0);
    const drive_spec drv{ghz_to_rad(24.0), 0.02};
    const auto dist = qp_distribution::thermal(units::mk_to_rad(60.0), 1e-5);
    const auto exc = gamma1_excite(dev, drv, dist, {});
    const auto leak = gamma_leak_12(dev, drv, dist, {});
    CHECK(leak.value == 2.0 * exc.value);
    CHECK(leak.normalized == 2.0 * exc.normalized);
    CHECK(leak.proc == process::tun_leak_1to2);
    CHECK(has_warning(leak, "harmonic approximation"));
    CHECK(!has_warning(exc, "harmonic approximation"));
}

TEST_CASE("threshold table") {
    const auto dev = rate_device(0.0);
    const auto t = tunneling_thresholds(dev);
    CHECK(t.relax_1ph == doctest::Approx(ghz_to_rad(4.0)).epsilon(1e-12));
    CHECK(t.excite_1ph == doctest::Approx(ghz_to_rad(16.0)).epsilon(1e-12));
    CHECK(t.relax_2ph == doctest::Approx(ghz_to_rad(2.0)).epsilon(1e-12));
    CHECK(t.excite_2ph == doctest::Approx(ghz_to_rad(8.0)).epsilon(1e-12));

    // nearly equal gaps: relaxation channels are open at dc
    const auto close = device_from_omega_q0(ghz_to_rad(6.0), 1.0,
                                            ghz_to_rad(0.25), ghz_to_rad(49.5),
                                            ghz_to_rad(50.5), 0.0);
    const auto tc = tunneling_thresholds(close);
    CHECK(tc.relax_1ph == 0.0);
    CHECK(tc.relax_2ph == 0.0);
    CHECK(tc.excite_1ph == doctest::Approx(ghz_to_rad(7.0)).epsilon(1e-12));
    CHECK(tc.excite_2ph == doctest::Approx(ghz_to_rad(3.5)).epsilon(1e-12));
}

TEST_CASE("two-photon to one-photon ratio: closed form vs quotient") {
    const auto dev = rate_device(0.0);
    const drive_spec drv{ghz_to_rad(9.0), 0.02};
    const auto r = ratio_2ph_to_1ph(dev, drv);
    CHECK(r.closed_form == doctest::Approx(r.quotient).epsilon(1e-10));
    CHECK(r.closed_form > 0.0);

    // hand recomposition of the closed form
    const double wq = omega_q(dev);
    const double wac = std::abs(ac_stark(dev, drv, {}));
    const double s1 = drv.omega_d + wq - delta_diff(dev);
    const double s2 = 2.0 * drv.omega_d + wq - delta_diff(dev);
    const double arg2 = 2.0 * drv.omega_d + wq;
    const double screen =
        1.0 + 4.0 * wq * wq / (arg2 * arg2 - wq * wq);
    CHECK(r.closed_form ==
          doctest::Approx(0.125 * (wac / wq) * 2.0 * delta_bar(dev) /
                          std::sqrt(s1 * s2) * screen * screen)
              .epsilon(1e-13));

    // below either cold threshold the ratio is undefined
    CHECK_THROWS_AS(ratio_2ph_to_1ph(dev, drive_spec{ghz_to_rad(3.0), 0.02}),
                    config_error);
}

TEST_CASE("strong drive and resonance proximity are flagged") {
    const auto dev = rate_device(0.0);
    const auto dist = qp_distribution::thermal(units::mk_to_rad(60.0), 1e-5);
    const double wq = omega_q(dev);

    const auto strong =
        gamma1_relax(dev, drive_spec{ghz_to_rad(24.0), 0.5}, dist, {});
    CHECK(has_warning(strong, "perturbative"));

    const auto near =
        gamma1_relax(dev, drive_spec{wq * (1.0 + 5e-9), 0.02}, dist, {});
    CHECK(has_warning(near, "resonance guard"));

    const auto clean =
        gamma1_relax(dev, drive_spec{ghz_to_rad(24.0), 0.02}, dist, {});
    CHECK(clean.warnings.empty());
}

TEST_CASE("driving inside the resonance guard is an error") {
    const auto dev = rate_device(0.0);
    const auto dist = qp_distribution::thermal(units::mk_to_rad(60.0), 1e-5);
    const double wq = omega_q(dev);

    // omega_d = omega_q hits the guard inside the Stark shift
    CHECK_THROWS_AS(
        gamma1_relax(dev, drive_spec{wq * (1.0 + 1e-12), 0.02}, dist, {}),
        on_resonance_error);
    // 2 omega_d + omega_q = omega_q hits the guard in the screening bracket
    CHECK_THROWS_AS(
        gamma2_relax(dev, drive_spec{wq * 4e-10, 0.02}, dist, {}),
        on_resonance_error);
}
