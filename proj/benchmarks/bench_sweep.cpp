// times the OpenMP sweep against the serial reference on a figure-sized grid
// and checks that both produce byte-identical CSV output
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qpdec/config.hpp"
#include "qpdec/sweep.hpp"
#include "qpdec/units.hpp"

using namespace qpdec;

namespace {

double time_once(const std::function<sweep_result()>& f, std::string& csv) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = f();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    csv = sweep_to_csv(res);
    return dt;
}

}  // namespace

int main(int argc, char** argv) {
    const int edge = argc > 1 ? std::atoi(argv[1]) : 250;
    if (edge < 2) {
        std::cerr << "usage: bench_sweep [grid edge >= 2]\n";
        return 2;
    }

    auto cfg = parse_config_file(std::string(QPDEC_SOURCE_DIR) +
                                 "/configs/fig1b.json");
    cfg.sweep.flux_axis = {};
    cfg.sweep.flux_axis.linspace = true;
    cfg.sweep.flux_axis.min = 0.0;
    cfg.sweep.flux_axis.max = 1.0;
    cfg.sweep.flux_axis.count = edge;
    cfg.sweep.omega_d_axis = {};
    cfg.sweep.omega_d_axis.linspace = true;
    cfg.sweep.omega_d_axis.min = units::ghz_to_rad(4.1);
    cfg.sweep.omega_d_axis.max = units::ghz_to_rad(11.0);
    cfg.sweep.omega_d_axis.count = edge;

    std::cout << "grid " << edge << " x " << edge << " ("
              << edge * static_cast<long>(edge) << " cells), process "
              << process_name(cfg.sweep.processes.at(0)) << "\n\n";

    std::string ref_csv;
    const double t_ref =
        time_once([&] { return run_sweep_serial(cfg); }, ref_csv);
    std::cout << std::left << std::setw(18) << "serial reference"
              << std::fixed << std::setprecision(3) << std::setw(9) << t_ref
              << " s   1.00x\n";

    const unsigned hc = std::max(1u, std::thread::hardware_concurrency());
    std::vector<int> counts;
    for (unsigned k = 1; k < hc; k *= 2) counts.push_back(static_cast<int>(k));
    counts.push_back(static_cast<int>(hc));

    bool all_equal = true;
    for (int k : counts) {
        std::string csv;
        const double t = time_once([&] { return run_sweep(cfg, k); }, csv);
        const bool same = csv == ref_csv;
        all_equal = all_equal && same;
        std::ostringstream label;
        label << "openmp x" << k;
        std::cout << std::left << std::setw(18) << label.str() << std::fixed
                  << std::setprecision(3) << std::setw(9) << t << " s   "
                  << std::setprecision(2) << t_ref / t << "x"
                  << (same ? "" : "   OUTPUT MISMATCH") << "\n";
    }

    std::cout << "\n" << (all_equal ? "all worker counts reproduce the serial "
                                      "CSV byte for byte"
                                    : "output mismatch detected") << "\n";
    return all_equal ? 0 : 1;
}
