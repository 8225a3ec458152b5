#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpdec/config.hpp"
#include "qpdec/diagrams.hpp"
#include "qpdec/errors.hpp"
#include "qpdec/fidelity.hpp"
#include "qpdec/pair_breaking.hpp"
#include "qpdec/rates.hpp"
#include "qpdec/selfcheck.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/sweep.hpp"
#include "qpdec/units.hpp"
#include "qpdec/version.hpp"

namespace {

using namespace qpdec;

std::vector<process> enabled_processes(const run_config& cfg) {
    if (cfg.sweep.present && !cfg.sweep.processes.empty())
        return cfg.sweep.processes;
    if (cfg.dist.present)
        return {process::tun_relax_1ph, process::tun_excite_1ph,
                process::tun_leak_1to2, process::tun_relax_2ph,
                process::tun_excite_2ph, process::cp_relax,
                process::cp_excite};
    return {process::cp_relax, process::cp_excite};
}

rate_result eval_process(process p, const device_params& dev,
                         const drive_spec& drv, const dist_config& dc,
                         int cp_n_max, const numerics& num) {
    auto dist = [&]() { return build_distribution(dc); };
    switch (p) {
        case process::tun_relax_1ph: return gamma1_relax(dev, drv, dist(), num);
        case process::tun_excite_1ph: return gamma1_excite(dev, drv, dist(), num);
        case process::tun_leak_1to2: return gamma_leak_12(dev, drv, dist(), num);
        case process::tun_relax_2ph: return gamma2_relax(dev, drv, dist(), num);
        case process::tun_excite_2ph: return gamma2_excite(dev, drv, dist(), num);
        case process::cp_relax: return gamma_cp_relax(dev, drv, cp_n_max, num);
        case process::cp_excite: return gamma_cp_excite(dev, drv, cp_n_max, num);
    }
    throw config_error("unknown process");
}

int cmd_rate(const std::string& config_path) {
    const run_config cfg = parse_config_file(config_path);
    const device_params dev = build_device(cfg.device, cfg.device.flux);
    const drive_spec drv = resolve_drive(dev, cfg.drive, cfg.num);
    std::printf("# flux = %g, omega_d = %g GHz, a = %g, omega_ac = %g GHz\n",
                dev.flux, units::rad_to_ghz(drv.omega_d), drv.a,
                units::rad_to_ghz(ac_stark(dev, drv, cfg.num)));
    std::printf("%-16s %14s %14s %8s %7s %14s\n", "process", "rate_1_s",
                "normalized", "photons", "below", "threshold_ghz");
    for (process p : enabled_processes(cfg)) {
        const rate_result r =
            eval_process(p, dev, drv, cfg.dist, cfg.sweep.cp_n_max, cfg.num);
        std::printf("%-16s %14.6e %14.6e %8d %7s %14.6f\n", process_name(p),
                    r.value, r.normalized, r.photons,
                    r.below_threshold ? "yes" : "no",
                    units::rad_to_ghz(r.threshold_omega_d));
        for (const auto& w : r.warnings)
            std::printf("#   warning [%s]: %s\n", process_name(p), w.c_str());
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              int threads, const std::string& format) {
    if (format != "csv")
        throw config_error("unsupported output format '" + format + "'");
    const run_config cfg = parse_config_file(config_path);
    const sweep_result res = run_sweep(cfg, threads);
    const std::string out =
        out_override.empty() ? cfg.output.path : out_override;
    write_sweep_outputs(cfg, res, out);
    std::printf("wrote %s (%zu x %zu grid, %zu processes) and %s.meta.json\n",
                out.c_str(), res.flux_axis.size(), res.omega_axis.size(),
                res.processes.size(), out.c_str());
    return 0;
}

int cmd_thresholds(const std::string& config_path) {
    const run_config cfg = parse_config_file(config_path);
    const device_params dev = build_device(cfg.device, cfg.device.flux);
    const threshold_table t = tunneling_thresholds(dev);
    std::printf("# flux = %g, omega_q = %g GHz, ddiff = %g GHz, dbar = %g GHz\n",
                dev.flux, units::rad_to_ghz(omega_q(dev)),
                units::rad_to_ghz(delta_diff(dev)),
                units::rad_to_ghz(delta_bar(dev)));
    std::printf("%-16s %8s %14s\n", "process", "photons", "omega_th_ghz");
    std::printf("%-16s %8d %14.6f\n", "tun_relax_1ph", 1,
                units::rad_to_ghz(t.relax_1ph));
    std::printf("%-16s %8d %14.6f\n", "tun_excite_1ph", 1,
                units::rad_to_ghz(t.excite_1ph));
    std::printf("%-16s %8d %14.6f\n", "tun_relax_2ph", 2,
                units::rad_to_ghz(t.relax_2ph));
    std::printf("%-16s %8d %14.6f\n", "tun_excite_2ph", 2,
                units::rad_to_ghz(t.excite_2ph));
    for (int n = 1; n <= cfg.sweep.cp_n_max; ++n) {
        std::printf("%-13s n=%d %8d %14.6f\n", "cp_relax", n, n,
                    units::rad_to_ghz(cp_threshold(dev, n, false)));
        std::printf("%-13s n=%d %8d %14.6f\n", "cp_excite", n, n,
                    units::rad_to_ghz(cp_threshold(dev, n, true)));
    }
    return 0;
}

int cmd_diagram(int n_photons, const std::string& config_path,
                const std::string& mode_name, const std::string& tr_name) {
    const amplitude_mode mode = mode_name == "raw" ? amplitude_mode::raw
                                                   : amplitude_mode::leading;
    const transition tr =
        tr_name == "excite" ? transition::excite_01 : transition::relax_10;
    const auto diags = enumerate_diagrams(n_photons);
    std::printf("# %zu diagrams at n = %d\n", diags.size(), n_photons);
    if (config_path.empty()) {
        std::printf("%-40s %6s %6s\n", "topology", "mult", "core");
        for (const auto& d : diags)
            std::printf("%-40s %6g %6s\n", d.topology.c_str(), d.multiplicity,
                        d.core ? "yes" : "no");
        return 0;
    }
    const run_config cfg = parse_config_file(config_path);
    const device_params dev = build_device(cfg.device, cfg.device.flux);
    const drive_spec drv = resolve_drive(dev, cfg.drive, cfg.num);
    std::printf("%-40s %6s %6s %32s %32s\n", "topology", "mult", "core",
                "uu_coeff", "vv_coeff");
    channel_amplitude total;
    total.n_photons = n_photons;
    for (const auto& d : diags) {
        const channel_amplitude c = evaluate_one(dev, drv, d, tr, mode, cfg.num);
        std::printf("%-40s %6g %6s %15.6e%+15.6ei %15.6e%+15.6ei\n",
                    d.topology.c_str(), d.multiplicity, d.core ? "yes" : "no",
                    c.uu.real(), c.uu.imag(), c.vv.real(), c.vv.imag());
        total.uu += c.uu;
        total.vv += c.vv;
    }
    std::printf("%-40s %6s %6s %15.6e%+15.6ei %15.6e%+15.6ei\n", "total", "",
                "", total.uu.real(), total.uu.imag(), total.vv.real(),
                total.vv.imag());
    return 0;
}

int cmd_fidelity(const std::string& config_path, double t_ro_ns,
                 double t_gate_ns) {
    const run_config cfg = parse_config_file(config_path);
    if (!cfg.dist.present)
        throw config_error("fidelity bounds require a distribution block");
    const device_params dev = build_device(cfg.device, cfg.device.flux);
    const drive_spec drv = resolve_drive(dev, cfg.drive, cfg.num);
    const qp_distribution dist = build_distribution(cfg.dist);
    const auto print = [](const char* name, const fidelity_bound& b) {
        std::printf("%-18s bound %12.6e  coeff %12.6e  below %s\n", name,
                    b.bound, b.coefficient, b.below_threshold ? "yes" : "no");
        for (const auto& note : b.notes)
            std::printf("#   note [%s]: %s\n", name, note.c_str());
    };
    print("readout", fidelity_readout_bound(dev, drv, dist,
                                            units::ns_to_s(t_ro_ns), cfg.num));
    print("gate", fidelity_gate_bound(dev, dist, units::ns_to_s(t_gate_ns),
                                      cfg.num));
    print("highfreq_readout",
          fidelity_highfreq_readout(dev, drv, units::ns_to_s(t_ro_ns),
                                    cfg.num));
    return 0;
}

int cmd_selfcheck() {
    const auto lines = run_selfcheck();
    for (const auto& l : lines)
        std::printf("[%s] %s%s: %s\n", l.pass ? "pass" : "FAIL",
                    l.gating ? "" : "(info) ", l.name.c_str(),
                    l.detail.c_str());
    if (!selfcheck_passed(lines)) {
        std::printf("selfcheck: FAILED\n");
        return 4;
    }
    std::printf("selfcheck: all gating checks passed (c_norm = %.12g)\n",
                calibrated_c_norm());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasiparticle decoherence rates of a driven transmon"};
    app.set_version_flag("--version", std::string(qpdec::version));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    int threads = -1;

    auto* rate = app.add_subcommand("rate", "rates at the configured point");
    rate->add_option("--config", config_path, "config file")->required();

    auto* sweep = app.add_subcommand("sweep", "grid sweep to CSV");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--out", out_path, "output CSV path");
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("--format", format, "output format (csv)");

    auto* thr = app.add_subcommand("thresholds", "onset frequency table");
    thr->add_option("--config", config_path, "config file")->required();

    int diag_n = 1;
    std::string diag_mode = "leading";
    std::string diag_tr = "relax";
    auto* diag = app.add_subcommand("diagram", "enumerate amplitude diagrams");
    diag->add_option("--n", diag_n, "photon order")->required();
    diag->add_option("--config", config_path, "config file (for evaluation)");
    diag->add_option("--mode", diag_mode, "leading|raw");
    diag->add_option("--transition", diag_tr, "relax|excite");

    double t_ro_ns = 1000.0;
    double t_gate_ns = 50.0;
    auto* fid = app.add_subcommand("fidelity", "fidelity lower bounds");
    fid->add_option("--config", config_path, "config file")->required();
    fid->add_option("--t-ro", t_ro_ns, "readout time, ns");
    fid->add_option("--t-gate", t_gate_ns, "gate time, ns");

    auto* self = app.add_subcommand("selfcheck", "calibration and oracles");

    try {
        app.parse(argc, argv);
        if (rate->parsed()) return cmd_rate(config_path);
        if (sweep->parsed())
            return cmd_sweep(config_path, out_path, threads, format);
        if (thr->parsed()) return cmd_thresholds(config_path);
        if (diag->parsed())
            return cmd_diagram(diag_n, config_path, diag_mode, diag_tr);
        if (fid->parsed()) return cmd_fidelity(config_path, t_ro_ns, t_gate_ns);
        if (self->parsed()) return cmd_selfcheck();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qpdec::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qpdec::error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
