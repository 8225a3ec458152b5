#include "qpdec/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qpdec/errors.hpp"
#include "qpdec/pair_breaking.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/units.hpp"
#include "qpdec/version.hpp"

namespace qpdec {

namespace {

cell_entry entry_from(const rate_result& r) {
    cell_entry e;
    e.rate = r.value;
    e.norm = r.normalized;
    e.below = r.below_threshold;
    return e;
}

cell_entry failed_entry() {
    cell_entry e;
    e.rate = std::numeric_limits<double>::quiet_NaN();
    e.norm = std::numeric_limits<double>::quiet_NaN();
    e.err = true;
    return e;
}

sweep_cell eval_cell(const run_config& cfg,
                     const qp_distribution* dist, double flux,
                     double omega_d) {
    const auto& procs = cfg.sweep.processes;
    sweep_cell cell;
    cell.entries.assign(procs.size(), cell_entry{});

    std::optional<device_params> dev;
    std::optional<drive_spec> drv;
    try {
        dev = build_device(cfg.device, flux);
        drive_config dc = cfg.drive;
        dc.omega_d = omega_d;
        drv = resolve_drive(*dev, dc, cfg.num);
    } catch (const std::exception&) {
        for (auto& e : cell.entries) e = failed_entry();
        return cell;
    }

    for (std::size_t k = 0; k < procs.size(); ++k) {
        try {
            rate_result r;
            switch (procs[k]) {
                case process::tun_relax_1ph:
                    r = gamma1_relax(*dev, *drv, *dist, cfg.num);
                    break;
                case process::tun_excite_1ph:
                    r = gamma1_excite(*dev, *drv, *dist, cfg.num);
                    break;
                case process::tun_leak_1to2:
                    r = gamma_leak_12(*dev, *drv, *dist, cfg.num);
                    break;
                case process::tun_relax_2ph:
                    r = gamma2_relax(*dev, *drv, *dist, cfg.num);
                    break;
                case process::tun_excite_2ph:
                    r = gamma2_excite(*dev, *drv, *dist, cfg.num);
                    break;
                case process::cp_relax:
                    r = gamma_cp_relax(*dev, *drv, cfg.sweep.cp_n_max, cfg.num);
                    break;
                case process::cp_excite:
                    r = gamma_cp_excite(*dev, *drv, cfg.sweep.cp_n_max,
                                        cfg.num);
                    break;
            }
            cell.entries[k] = entry_from(r);
        } catch (const std::exception&) {
            cell.entries[k] = failed_entry();
        }
    }
    return cell;
}

sweep_result prepare(const run_config& cfg,
                     std::optional<qp_distribution>& dist) {
    if (!cfg.sweep.present)
        throw config_error("run_sweep: config has no sweep block");
    bool needs_dist = false;
    for (process p : cfg.sweep.processes)
        if (p != process::cp_relax && p != process::cp_excite)
            needs_dist = true;
    if (needs_dist) dist = build_distribution(cfg.dist);

    sweep_result res;
    res.flux_axis = cfg.sweep.flux_axis.resolve();
    res.omega_axis = cfg.sweep.omega_d_axis.resolve();
    res.processes = cfg.sweep.processes;
    res.cells.resize(res.flux_axis.size() * res.omega_axis.size());
    return res;
}

}  // namespace

int resolve_thread_count(const run_config& cfg, int override_threads) {
    int n = override_threads;
    if (n <= 0) n = cfg.output.threads;
    if (n <= 0) {
        if (const char* env = std::getenv("QPDEC_NUM_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) n = v;
        }
    }
#ifdef _OPENMP
    if (n <= 0) n = omp_get_max_threads();
#else
    if (n <= 0) n = 1;
#endif
    return n;
}

sweep_result run_sweep(const run_config& cfg, int override_threads) {
    std::optional<qp_distribution> dist;
    sweep_result res = prepare(cfg, dist);
    const qp_distribution* dptr = dist ? &*dist : nullptr;
    const int nw = static_cast<int>(res.omega_axis.size());
    const int total = static_cast<int>(res.cells.size());
    const int threads = resolve_thread_count(cfg, override_threads);
    (void)threads;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (int i = 0; i < total; ++i) {
        const double flux = res.flux_axis[static_cast<std::size_t>(i / nw)];
        const double wd = res.omega_axis[static_cast<std::size_t>(i % nw)];
        res.cells[static_cast<std::size_t>(i)] = eval_cell(cfg, dptr, flux, wd);
    }
    return res;
}

sweep_result run_sweep_serial(const run_config& cfg) {
    std::optional<qp_distribution> dist;
    sweep_result res = prepare(cfg, dist);
    const qp_distribution* dptr = dist ? &*dist : nullptr;
    const std::size_t nw = res.omega_axis.size();
    for (std::size_t i = 0; i < res.cells.size(); ++i) {
        const double flux = res.flux_axis[i / nw];
        const double wd = res.omega_axis[i % nw];
        res.cells[i] = eval_cell(cfg, dptr, flux, wd);
    }
    return res;
}

namespace {

void append_value(std::string& out, double v) {
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    out += buf;
}

}  // namespace

std::string sweep_to_csv(const sweep_result& res) {
    std::string out;
    out.reserve(res.cells.size() * res.processes.size() * 48 + 256);
    out += "flux,omega_d_ghz";
    for (process p : res.processes) {
        const std::string n = process_name(p);
        out += "," + n + "_rate_hz," + n + "_norm," + n + "_below," + n +
               "_err";
    }
    out += "\n";
    const std::size_t nw = res.omega_axis.size();
    for (std::size_t i = 0; i < res.cells.size(); ++i) {
        append_value(out, res.flux_axis[i / nw]);
        out += ",";
        append_value(out, units::rad_to_ghz(res.omega_axis[i % nw]));
        for (const cell_entry& e : res.cells[i].entries) {
            out += ",";
            append_value(out, e.rate);
            out += ",";
            append_value(out, e.norm);
            out += e.below ? ",1" : ",0";
            out += e.err ? ",1" : ",0";
        }
        out += "\n";
    }
    return out;
}

nlohmann::json sweep_metadata(const run_config& cfg) {
    nlohmann::json meta;
    meta["version"] = version;
    meta["c_norm"] = effective_c_norm(cfg.num);
    nlohmann::json jc = config_to_json(cfg);
    if (jc.contains("output")) jc["output"].erase("threads");
    meta["config"] = jc;
    if (cfg.sweep.present) {
        meta["grid"] = {
            {"flux_points", cfg.sweep.flux_axis.resolve().size()},
            {"omega_d_points", cfg.sweep.omega_d_axis.resolve().size()}};
    }
    return meta;
}

void write_sweep_outputs(const run_config& cfg, const sweep_result& res,
                         const std::string& out_path) {
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw config_error("cannot open output file: " + out_path);
        out << sweep_to_csv(res);
    }
    {
        std::ofstream meta(out_path + ".meta.json", std::ios::binary);
        if (!meta)
            throw config_error("cannot open metadata file: " + out_path +
                               ".meta.json");
        meta << sweep_metadata(cfg).dump(2) << "\n";
    }
}

}  // namespace qpdec
