#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpdec/config.hpp"
#include "qpdec/errors.hpp"
#include "qpdec/rates.hpp"
#include "qpdec/sweep.hpp"
#include "qpdec/structure_factors.hpp"
#include "qpdec/units.hpp"
#include "qpdec/version.hpp"

using namespace qpdec;
using nlohmann::json;
using units::ghz_to_rad;

namespace {

json sweep_json() {
    json j;
    j["device"]["ej1_ghz"] = 18.0;
    j["device"]["ej2_ghz"] = 20.0;
    j["device"]["delta_l_ghz"] = 45.0;
    j["device"]["delta_r_ghz"] = 55.0;
    j["drive"]["omega_d_ghz"] = 24.0;
    j["drive"]["amplitude"]["mode"] = "direct_a";
    j["drive"]["amplitude"]["a"] = 0.02;
    j["distribution"]["kind"] = "thermal";
    j["distribution"]["temperature_mk"] = 60.0;
    j["distribution"]["x_qp"] = 1e-6;
    j["sweep"]["flux"]["values"] = {0.0, 0.25};
    j["sweep"]["omega_d_ghz"]["values"] = {14.0, 24.0};
    j["sweep"]["processes"] = {"tun_relax_1ph", "cp_relax"};
    j["sweep"]["cp_n_max"] = 4;
    return j;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, ',')) out.push_back(f);
    return out;
}

}  // namespace

TEST_CASE("parallel and serial sweeps agree byte for byte") {
    const auto cfg = parse_config(sweep_json());
    const auto par = run_sweep(cfg, 4);
    const auto ser = run_sweep_serial(cfg);
    CHECK(sweep_to_csv(par) == sweep_to_csv(ser));

    // and reruns are deterministic
    const auto again = run_sweep(cfg, 4);
    CHECK(sweep_to_csv(again) == sweep_to_csv(par));
}

TEST_CASE("a single-cell sweep reproduces the direct rate call") {
    json j = sweep_json();
    j["sweep"]["flux"]["values"] = {0.25};
    j["sweep"]["omega_d_ghz"]["values"] = {24.0};
    j["sweep"]["processes"] = {"tun_relax_1ph"};
    const auto cfg = parse_config(j);
    const auto res = run_sweep(cfg);
    REQUIRE(res.cells.size() == 1);
    REQUIRE(res.cells[0].entries.size() == 1);

    const auto dev = build_device(cfg.device, 0.25);
    drive_config dc = cfg.drive;
    dc.omega_d = ghz_to_rad(24.0);
    const auto drv = resolve_drive(dev, dc, cfg.num);
    const auto dist = build_distribution(cfg.dist);
    const auto direct = gamma1_relax(dev, drv, dist, cfg.num);

    CHECK(res.cells[0].entries[0].rate == direct.value);
    CHECK(res.cells[0].entries[0].norm == direct.normalized);
    CHECK(!res.cells[0].entries[0].below);
    CHECK(!res.cells[0].entries[0].err);
}

TEST_CASE("failing cells turn into nan entries without aborting") {
    json j = sweep_json();
    j["device"]["ej1_ghz"] = 18.0;
    j["device"]["ej2_ghz"] = 18.0;  // symmetric: flux 1 kills the well
    j["sweep"]["flux"]["values"] = {0.0, 1.0};
    j["sweep"]["omega_d_ghz"]["values"] = {24.0};
    const auto cfg = parse_config(j);
    const auto res = run_sweep_serial(cfg);
    REQUIRE(res.cells.size() == 2);

    for (const auto& e : res.cells[0].entries) {
        CHECK(!e.err);
        CHECK(std::isfinite(e.rate));
    }
    for (const auto& e : res.cells[1].entries) {
        CHECK(e.err);
        CHECK(std::isnan(e.rate));
        CHECK(std::isnan(e.norm));
        CHECK(!e.below);
    }
    const auto lines = split_lines(sweep_to_csv(res));
    REQUIRE(lines.size() == 3);
    CHECK(lines[2].find("nan,nan,0,1") != std::string::npos);
    CHECK(lines[1].find("nan") == std::string::npos);
}

TEST_CASE("below-threshold cells report exact zeros") {
    json j = sweep_json();
    j["distribution"] = {{"kind", "cold_strip"},
                         {"width_ghz", 0.5},
                         {"x_qp", 1e-6}};
    j["sweep"]["flux"]["values"] = {0.0};
    j["sweep"]["omega_d_ghz"]["values"] = {3.0};
    j["sweep"]["processes"] = {"tun_excite_1ph"};
    const auto cfg = parse_config(j);
    const auto res = run_sweep(cfg);
    const auto& e = res.cells[0].entries[0];
    CHECK(e.below);
    CHECK(e.rate == 0.0);
    CHECK(e.norm == 0.0);
    CHECK(!e.err);
    const auto lines = split_lines(sweep_to_csv(res));
    CHECK(lines[1].find("0.00000000000e+00,0.00000000000e+00,1,0") !=
          std::string::npos);
}

TEST_CASE("csv format contract") {
    const auto cfg = parse_config(sweep_json());
    const auto res = run_sweep(cfg);
    const std::string csv = sweep_to_csv(res);

    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');

    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 5);  // header + 2x2 grid
    CHECK(lines[0] ==
          "flux,omega_d_ghz,tun_relax_1ph_rate_hz,tun_relax_1ph_norm,"
          "tun_relax_1ph_below,tun_relax_1ph_err,cp_relax_rate_hz,"
          "cp_relax_norm,cp_relax_below,cp_relax_err");

    // flux-major cell order with GHz frequency column
    auto row = split_fields(lines[1]);
    REQUIRE(row.size() == 10);
    CHECK(std::stod(row[0]) == 0.0);
    CHECK(std::stod(row[1]) == doctest::Approx(14.0).epsilon(1e-11));
    row = split_fields(lines[4]);
    CHECK(std::stod(row[0]) == doctest::Approx(0.25).epsilon(1e-11));
    CHECK(std::stod(row[1]) == doctest::Approx(24.0).epsilon(1e-11));

    // printed rates carry 12 significant digits
    const auto& direct = res.cells[3].entries[0];
    CHECK(std::stod(row[2]) ==
          doctest::Approx(direct.rate).epsilon(5e-12));
    CHECK(std::stod(row[3]) ==
          doctest::Approx(direct.norm).epsilon(5e-12));
}

TEST_CASE("metadata records the run without host state") {
    const auto cfg = parse_config(sweep_json());
    const json meta = sweep_metadata(cfg);
    CHECK(meta.at("version").get<std::string>() == std::string(version));
    CHECK(meta.at("c_norm").get<double>() == effective_c_norm(cfg.num));
    CHECK(meta.at("grid").at("flux_points") == 2);
    CHECK(meta.at("grid").at("omega_d_points") == 2);
    CHECK(!meta.at("config").at("output").contains("threads"));
    CHECK(meta.at("config").at("device").at("ej1_ghz").get<double>() ==
          doctest::Approx(18.0).epsilon(1e-15));
    const std::string dump = meta.dump();
    CHECK(dump.find("time") == std::string::npos);
    CHECK(dump.find("host") == std::string::npos);

    // byte-identical across calls
    CHECK(sweep_metadata(cfg).dump(2) == meta.dump(2));
}

TEST_CASE("thread count resolution order") {
    auto cfg = parse_config(sweep_json());

    // explicit override wins
    CHECK(resolve_thread_count(cfg, 5) == 5);
    cfg.output.threads = 3;
    CHECK(resolve_thread_count(cfg, 2) == 2);

    // then the config block
    CHECK(resolve_thread_count(cfg, -1) == 3);
    CHECK(resolve_thread_count(cfg, 0) == 3);

    // then the environment
    cfg.output.threads = 0;
    ::setenv("QPDEC_NUM_THREADS", "7", 1);
    CHECK(resolve_thread_count(cfg, -1) == 7);
    ::setenv("QPDEC_NUM_THREADS", "junk", 1);
    CHECK(resolve_thread_count(cfg, -1) >= 1);
    ::unsetenv("QPDEC_NUM_THREADS");
    CHECK(resolve_thread_count(cfg, -1) >= 1);
}

TEST_CASE("sweeps refuse configs without a sweep block") {
    json j = sweep_json();
    j.erase("sweep");
    const auto cfg = parse_config(j);
    CHECK_THROWS_AS(run_sweep(cfg), config_error);
    CHECK_THROWS_AS(run_sweep_serial(cfg), config_error);
}

TEST_CASE("pair-breaking sweeps run without a distribution") {
    json j = sweep_json();
    j.erase("distribution");
    j["sweep"]["processes"] = {"cp_relax", "cp_excite"};
    j["sweep"]["omega_d_ghz"]["values"] = {30.0};
    j["sweep"]["flux"]["values"] = {0.0};
    const auto cfg = parse_config(j);
    const auto res = run_sweep(cfg);
    REQUIRE(res.cells.size() == 1);
    CHECK(!res.cells[0].entries[0].err);
    CHECK(res.cells[0].entries[0].rate > 0.0);  // n = 4 channel is open
}

TEST_CASE("sweep outputs land on disk next to their metadata") {
    const auto cfg = parse_config(sweep_json());
    const auto res = run_sweep(cfg);
    const auto dir = std::filesystem::temp_directory_path();
    const auto path =
        (dir / ("qpdec_sweep_test_" + std::to_string(::getpid()) + ".csv"))
            .string();
    write_sweep_outputs(cfg, res, path);

    std::ifstream csv(path, std::ios::binary);
    std::stringstream cs;
    cs << csv.rdbuf();
    CHECK(cs.str() == sweep_to_csv(res));

    std::ifstream mf(path + ".meta.json", std::ios::binary);
    std::stringstream ms;
    ms << mf.rdbuf();
    CHECK(ms.str() == sweep_metadata(cfg).dump(2) + "\n");

    std::filesystem::remove(path);
    std::filesystem::remove(path + ".meta.json");

    CHECK_THROWS_AS(
        write_sweep_outputs(cfg, res, "/nonexistent_dir_qpdec/out.csv"),
        config_error);
}
