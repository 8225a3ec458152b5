#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qpdec/device.hpp"
#include "qpdec/errors.hpp"
#include "qpdec/pair_breaking.hpp"
#include "qpdec/special.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/units.hpp"

#include "grid_oracle.hpp"

using namespace qpdec;
using units::ghz_to_rad;

namespace {

device_params cp_device(double flux = 0.0, double ej1 = 25.0,
                        double ej2 = 25.0) {
    device_params dev;
    dev.ej1 = ghz_to_rad(ej1);
    dev.ej2 = ghz_to_rad(ej2);
    dev.ec = ghz_to_rad(0.25);
    dev.delta_l = ghz_to_rad(45.0);
    dev.delta_r = ghz_to_rad(55.0);
    dev.flux = flux;
    return dev;
}

}  // namespace

TEST_CASE("minimum photon number for pair breaking") {
    const auto dev = cp_device();  // dbar = 50 GHz
    CHECK(min_photon_number(dev, {ghz_to_rad(60.0), 0.02}, ghz_to_rad(-5.0)) ==
          2);
    // exactly two photons reach the continuum edge
    CHECK(min_photon_number(dev, {ghz_to_rad(47.5), 0.02}, ghz_to_rad(-5.0)) ==
          2);
    // a marginally detuned drive snaps to the marginal channel
    CHECK(min_photon_number(dev, {ghz_to_rad(48.0) * (1.0 - 1e-10), 0.02},
                            ghz_to_rad(-4.0)) == 2);
    // a clearly detuned one does not
    CHECK(min_photon_number(dev, {ghz_to_rad(48.0) * (1.0 - 1e-6), 0.02},
                            ghz_to_rad(-4.0)) == 3);
    // energy cost of an upward transition raises the requirement
    CHECK(min_photon_number(dev, {ghz_to_rad(52.4), 0.02}, ghz_to_rad(5.0)) ==
          3);
    // a single photon is always enough above 2 dbar + omega_fi
    CHECK(min_photon_number(dev, {ghz_to_rad(200.0), 0.02}, ghz_to_rad(-5.0)) ==
          1);
    CHECK(min_photon_number(dev, {ghz_to_rad(95.0), 0.02}, ghz_to_rad(-5.0)) ==
          1);
    CHECK_THROWS_AS(min_photon_number(dev, {0.0, 0.02}, 0.0), config_error);
    CHECK_THROWS_AS(min_photon_number(dev, {-1.0, 0.02}, 0.0), config_error);
}

TEST_CASE("half-phase elements: hand values and symmetries") {
    const auto dev = cp_device();  // flux 0: offsets vanish
    const auto el = half_phase_matrix_elements(dev, 1, 4);
    const double lam = 0.5 * phi_zpf(dev);
    CHECK(el.lambda == lam);
    CHECK(el.half_offset == 0.0);

    // ground-state diagonal carries the Debye-Waller factor
    CHECK(el.cos_at(0, 0) == std::exp(-0.5 * lam * lam));
    CHECK(el.sin_at(0, 0) == 0.0);

    // the quarter-turn phase per level moves odd transfers into sin
    CHECK(std::abs(el.cos_at(0, 1)) < 1e-16);
    CHECK(el.sin_at(0, 1) ==
          doctest::Approx(lam * std::exp(-0.5 * lam * lam) *
                          (1.0 - 0.0))  // L_0^1 = 1
              .epsilon(1e-15));

    for (int f = 0; f < 4; ++f) {
        for (int i = 0; i < 4; ++i) {
            CHECK(el.cos_at(f, i) == el.cos_at(i, f));
            CHECK(el.sin_at(f, i) == el.sin_at(i, f));
        }
    }

    // leading order: lowest power of lambda, no Debye-Waller suppression
    const auto lead = half_phase_matrix_elements(dev, 1, 4, true);
    CHECK(lead.sin_at(0, 1) == lam);
    CHECK(std::abs(el.sin_at(0, 1) - lead.sin_at(0, 1)) <
          0.6 * lam * lam * lam);
    const double full12 = el.sin_at(1, 2);
    const double lead12 = lead.sin_at(1, 2);
    CHECK(lead12 == doctest::Approx(lam * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(full12 - lead12) < 1.5 * lam * lam * std::abs(lead12));

    CHECK_THROWS_AS(half_phase_matrix_elements(dev, 3, 4), config_error);
    CHECK_THROWS_AS(half_phase_matrix_elements(dev, 1, 0), config_error);
}

TEST_CASE("half-phase elements against a grid diagonalization") {
    const auto dev = cp_device(0.15, 22.0, 28.0);
    const int ns = 7;

    const auto coarse = oracle::fd_levels(dev, ns, 1u << 15);
    const auto fine = oracle::fd_levels(dev, ns, 1u << 16);
    REQUIRE(coarse.max_level_err < 1e-4);
    REQUIRE(fine.max_level_err < 1e-4);
    auto bc = oracle::grid_base_elements(coarse, ns);
    auto bf = oracle::grid_base_elements(fine, ns);

    for (int j : {1, 2}) {
        const auto el = half_phase_matrix_elements(dev, j, ns);
        const double co = std::cos(el.half_offset);
        const double so = std::sin(el.half_offset);
        for (int f = 0; f < ns; ++f) {
            for (int i = 0; i < ns; ++i) {
                // Richardson step removes the h^2 grid error
                const double a_c =
                    (4.0 * bf.c(f, i) - bc.c(f, i)) / 3.0;
                const double a_s =
                    (4.0 * bf.s(f, i) - bc.s(f, i)) / 3.0;
                // cos(c/2 + phi/2) = cos(c/2) cos(phi/2) - sin(c/2) sin(phi/2)
                const double want_c = co * a_c - so * a_s;
                const double want_s = so * a_c + co * a_s;
                CHECK(std::abs(el.cos_at(f, i) - want_c) < 1e-8);
                CHECK(std::abs(el.sin_at(f, i) - want_s) < 1e-8);
            }
        }
    }
}

TEST_CASE("half-phase elements are nearly complete over a finite ladder") {
    const auto dev = cp_device();
    const int nl = 12;
    const auto el = half_phase_matrix_elements(dev, 1, nl);
    auto deficit = [&](int i) {
        double sum = 0.0;
        for (int f = 0; f < nl; ++f)
            sum += el.cos_at(f, i) * el.cos_at(f, i) +
                   el.sin_at(f, i) * el.sin_at(f, i);
        return std::abs(sum - 1.0);
    };
    for (int i = 0; i <= 6; ++i) CHECK(deficit(i) < 1e-8);
    CHECK(deficit(7) < 1e-7);
    CHECK(deficit(8) < 1e-5);
}

TEST_CASE("channel thresholds") {
    const auto dev = cp_device();  // omega_q = 10 GHz, 2 dbar = 100 GHz
    CHECK(omega_q(dev) == doctest::Approx(ghz_to_rad(10.0)).epsilon(1e-13));
    CHECK(cp_threshold(dev, 1, false) ==
          doctest::Approx(ghz_to_rad(90.0)).epsilon(1e-12));
    CHECK(cp_threshold(dev, 2, false) ==
          doctest::Approx(ghz_to_rad(45.0)).epsilon(1e-12));
    CHECK(cp_threshold(dev, 4, false) ==
          doctest::Approx(ghz_to_rad(22.5)).epsilon(1e-12));
    CHECK(cp_threshold(dev, 1, true) ==
          doctest::Approx(ghz_to_rad(110.0)).epsilon(1e-12));
    CHECK(cp_threshold(dev, 3, true) ==
          doctest::Approx(ghz_to_rad(110.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(cp_threshold(dev, 0, false), config_error);

    // a qubit above the pair-breaking edge relaxes at any drive frequency
    auto exotic = dev;
    exotic.delta_l = ghz_to_rad(2.0);
    exotic.delta_r = ghz_to_rad(3.0);
    CHECK(cp_threshold(exotic, 1, false) == 0.0);
}

TEST_CASE("n-photon rates recompose from the pair-breaking factors") {
    const auto dev = cp_device(0.2, 22.0, 28.0);
    const drive_spec drv{ghz_to_rad(50.0), 0.02};
    const numerics num;
    const double wq = omega_q(dev);
    const double r = flux_factor(dev);
    const double wac = std::abs(ac_stark(dev, drv, num));

    // n = 1 channel is still closed at this drive frequency
    const auto g1 = gamma_cp_relax_n(dev, drv, 1, num);
    CHECK(g1.below_threshold);
    CHECK(g1.value == 0.0);

    for (int n : {2, 3}) {
        const auto got = gamma_cp_relax_n(dev, drv, n, num);
        CHECK(!got.below_threshold);
        CHECK(got.photons == n);
        const auto st = s_tilde_pair(dev, wq + n * drv.omega_d, num);
        const double sp = (n % 2 == 0) ? st.plus.value : st.minus.value;
        const double sm = (n % 2 == 0) ? st.minus.value : st.plus.value;
        const double braces = sp * (r - 1.0) + sm * (r + 1.0);
        const double pref = wq /
                            (units::pi * std::pow(2.0, n + 1) * factorial(n) *
                             factorial(n)) *
                            std::pow(wac / wq, n);
        CHECK(got.value == doctest::Approx(pref * braces).epsilon(1e-13));
        CHECK(got.normalized ==
              doctest::Approx(got.value / omega_q0(dev)).epsilon(1e-15));
    }

    // excitation shifts the structure-factor argument down by omega_q
    const auto ge = gamma_cp_excite_n(dev, drv, 3, num);
    const auto st = s_tilde_pair(dev, -wq + 3.0 * drv.omega_d, num);
    const double braces =
        st.minus.value * (r - 1.0) + st.plus.value * (r + 1.0);
    const double pref = wq / (units::pi * 16.0 * 36.0) *
                        std::pow(wac / wq, 3);
    CHECK(ge.value == doctest::Approx(pref * braces).epsilon(1e-13));
    CHECK(ge.threshold_omega_d ==
          doctest::Approx((2.0 * delta_bar(dev) + wq) / 3.0).epsilon(1e-12));
    CHECK(gamma_cp_excite_n(dev, drv, 2, num).below_threshold);
}

TEST_CASE("photon-number sum accumulates the open channels") {
    const auto dev = cp_device();
    const drive_spec drv{ghz_to_rad(26.0), 0.02};
    const auto sum = gamma_cp_relax(dev, drv, 6);
    double want = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const auto term = gamma_cp_relax_n(dev, drv, n);
        if (!term.below_threshold) want += term.value;
        // channels 1..3 closed, 4..6 open at 26 GHz
        CHECK(term.below_threshold == (n <= 3));
    }
    CHECK(sum.value == doctest::Approx(want).epsilon(1e-14));
    CHECK(sum.photons == 4);  // first open channel
    CHECK(!sum.below_threshold);

    // completely closed sum keeps the flag (relax needs omega_d > 15 GHz)
    const auto closed = gamma_cp_relax(dev, {ghz_to_rad(9.0), 0.02}, 6);
    CHECK(closed.below_threshold);
    CHECK(closed.value == 0.0);
}

TEST_CASE("n-photon rates scale as the 2n-th power of the amplitude") {
    const auto dev = cp_device();
    const double wd = ghz_to_rad(26.0);
    const double root2 = std::sqrt(2.0);
    for (int n : {4, 5}) {
        const auto lo = gamma_cp_relax_n(dev, {wd, 0.02}, n);
        const auto hi = gamma_cp_relax_n(dev, {wd, 0.02 * root2}, n);
        CHECK(hi.value / lo.value ==
              doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
    }
}

TEST_CASE("generalized rate between arbitrary levels") {
    const auto dev = cp_device(0.15, 22.0, 28.0);
    const drive_spec drv{ghz_to_rad(42.0), 0.02};
    const auto g = gamma_cp_general(dev, drv, 3, 0, 2);
    CHECK(!g.below_threshold);
    CHECK(g.value > 0.0);
    CHECK(g.photons == 3);
    CHECK(g.proc == process::cp_excite);
    CHECK(g.threshold_omega_d ==
          doctest::Approx((2.0 * delta_bar(dev) + 2.0 * omega_q(dev)) / 3.0)
              .epsilon(1e-12));

    CHECK_THROWS_AS(gamma_cp_general(dev, drv, 0, 0, 1), config_error);
    CHECK_THROWS_AS(gamma_cp_general(dev, drv, 1, -1, 0), config_error);
}

TEST_CASE("generalized rate reduces to the two-level formula") {
    const auto dev = cp_device(0.2, 22.0, 28.0);
    const drive_spec drv{ghz_to_rad(50.0), 0.02};
    const numerics num;
    for (int n : {2, 3}) {
        const auto main_relax = gamma_cp_relax_n(dev, drv, n, num);
        const auto gen_relax = gamma_cp_general(dev, drv, n, 1, 0, num, true);
        CHECK(gen_relax.value ==
              doctest::Approx(main_relax.value).epsilon(1e-10));
        CHECK(gen_relax.proc == process::cp_relax);
    }
    const auto main_exc = gamma_cp_excite_n(dev, drv, 3, num);
    const auto gen_exc = gamma_cp_general(dev, drv, 3, 0, 1, num, true);
    CHECK(gen_exc.value == doctest::Approx(main_exc.value).epsilon(1e-10));

    // the full elements differ by the squared Debye-Waller factor on 0 <-> 1
    const double lam = 0.5 * phi_zpf(dev);
    const auto full = gamma_cp_general(dev, drv, 2, 1, 0, num, false);
    const auto lead = gamma_cp_general(dev, drv, 2, 1, 0, num, true);
    CHECK(full.value ==
          doctest::Approx(lead.value * std::exp(-lam * lam)).epsilon(1e-12));
}

TEST_CASE("generalized rate amplitude modes") {
    const auto dev = cp_device(0.2, 22.0, 28.0);
    const drive_spec drv{ghz_to_rad(50.0), 0.02};
    numerics bare;
    bare.cp_amplitude = cp_amplitude_mode::bare;
    const int n = 2;
    const auto renorm = gamma_cp_general(dev, drv, n, 1, 0);
    const auto plain = gamma_cp_general(dev, drv, n, 1, 0, bare);
    const double ratio = drv.a / renormalized_amplitude(dev, drv);
    CHECK(plain.value ==
          doctest::Approx(renorm.value * std::pow(ratio, 2 * n))
              .epsilon(1e-12));
    CHECK(plain.value != renorm.value);
}
