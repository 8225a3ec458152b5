#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdec/device.hpp"
#include "qpdec/distribution.hpp"
#include "qpdec/numerics.hpp"
#include "qpdec/rates.hpp"

namespace qpdec {

// device block; either explicit junction energies or calibration from
// omega_q(0) plus the junction ratio ej2/ej1
struct device_config {
    bool calibrated{false};
    double ej1{0.0};       // rad/s, explicit mode
    double ej2{0.0};
    double omega_q0{0.0};  // rad/s, calibrated mode
    double ej_ratio{1.0};
    double ec{0.0};        // rad/s
    double delta_l{0.0};
    double delta_r{0.0};
    double flux{0.0};
};

enum class amplitude_kind { direct_a, ac_stark };

struct amplitude_config {
    amplitude_kind kind{amplitude_kind::direct_a};
    double a{0.0};         // direct_a
    double omega_ac{0.0};  // ac_stark absolute, rad/s (negative)
    bool relative{false};  // ac_stark relative to omega_q(0)
    double ratio{0.0};     // omega_ac / omega_q0 (negative)
};

struct drive_config {
    double omega_d{0.0};  // rad/s
    amplitude_config amplitude;
};

struct dist_config {
    bool present{false};
    dist_kind kind{dist_kind::thermal};
    double temperature{0.0};  // rad/s
    double width{0.0};        // rad/s
    double x_qp{0.0};
    std::string path;  // tabulated
};

struct axis_spec {
    bool linspace{false};
    double min{0.0};
    double max{0.0};
    int count{0};
    std::vector<double> values;  // explicit list, or resolved linspace

    std::vector<double> resolve() const;
};

struct sweep_config {
    bool present{false};
    axis_spec flux_axis;
    axis_spec omega_d_axis;  // stored in rad/s
    std::vector<process> processes;
    int cp_n_max{6};
};

struct output_config {
    std::string path{"sweep.csv"};
    std::string format{"csv"};
    int threads{0};  // 0 = QPDEC_NUM_THREADS env, then all hardware threads
};

struct run_config {
    device_config device;
    drive_config drive;
    dist_config dist;
    sweep_config sweep;
    numerics num;
    output_config output;
};

run_config parse_config(const nlohmann::json& j);
run_config parse_config_file(const std::string& path);

// canonical serialization (GHz / mK / ns units); parse(config_to_json(c))
// reproduces c
nlohmann::json config_to_json(const run_config& cfg);

device_params build_device(const device_config& dc, double flux);
qp_distribution build_distribution(const dist_config& dc);

// resolve the drive amplitude at a grid point; ac_stark mode inverts the
// Stark shift at the cell's omega_d and flux
drive_spec resolve_drive(const device_params& dev, const drive_config& dc,
                         const numerics& num);

}
