#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdec/config.hpp"

namespace qpdec {

struct cell_entry {
    double rate{0.0};
    double norm{0.0};
    bool below{false};
    bool err{false};
};

struct sweep_cell {
    std::vector<cell_entry> entries;  // one per configured process
};

struct sweep_result {
    std::vector<double> flux_axis;   // Phi_0 units
    std::vector<double> omega_axis;  // rad/s
    std::vector<process> processes;
    std::vector<sweep_cell> cells;   // flux-major order
};

// worker count resolution: override > 0 wins, then config output.threads,
// then QPDEC_NUM_THREADS, then all hardware threads (1 without OpenMP)
int resolve_thread_count(const run_config& cfg, int override_threads);

// parallel sweep; per-cell numeric failures become NaN entries with the err
// flag set, never aborting the sweep
sweep_result run_sweep(const run_config& cfg, int override_threads = -1);

// plain-loop reference implementation (used for equivalence testing)
sweep_result run_sweep_serial(const run_config& cfg);

// deterministic CSV: 12 significant digits, '.' decimal separator, '\n' line
// endings, "nan" for failed cells
std::string sweep_to_csv(const sweep_result& res);

// config + version + calibration record; no timestamps or host state, so
// reruns are byte-identical
nlohmann::json sweep_metadata(const run_config& cfg);

// writes <out_path> (CSV) and <out_path>.meta.json
void write_sweep_outputs(const run_config& cfg, const sweep_result& res,
                         const std::string& out_path);

}
