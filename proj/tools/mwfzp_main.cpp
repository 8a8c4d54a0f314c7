// Command-line front end: single runs, parameter sweeps and named presets.
#include "mwfzp/config.hpp"
#include "mwfzp/errors.hpp"
#include "mwfzp/grid_io.hpp"
#include "mwfzp/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace {

struct CommonOpts {
    std::optional<double> dt;
    std::string grid;            // "NxN"
    int threads = 0;             // 0 = hardware concurrency
    std::string emit_snapshots;  // comma-separated times
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dt", o.dt, "override the time step (scaled units)");
    cmd->add_option("--grid", o.grid, "override the grid as NxN");
    cmd->add_option("--threads", o.threads, "sweep worker count (default: cores)");
    cmd->add_option("--emit-snapshots", o.emit_snapshots,
                    "comma-separated snapshot times T1,T2,...");
    cmd->add_option("--out", o.out_dir, "output directory");
}

void apply_common(mwfzp::RunConfig& cfg, const CommonOpts& o) {
    if (o.dt) cfg.dt = *o.dt;
    if (!o.grid.empty()) {
        int nx = 0, ny = 0;
        char x = 0;
        std::istringstream ss(o.grid);
        ss >> nx >> x >> ny;
        if (!ss || (x != 'x' && x != 'X') || nx < 16 || ny < 16) {
            throw mwfzp::config_error("--grid expects NxN with N >= 16, got '" + o.grid + "'");
        }
        cfg.nx = nx;
        cfg.ny = ny;
    }
    if (!o.emit_snapshots.empty()) {
        cfg.snapshot_times.clear();
        std::istringstream ss(o.emit_snapshots);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                cfg.snapshot_times.push_back(std::stod(item));
            } catch (...) {
                throw mwfzp::config_error("--emit-snapshots: bad time '" + item + "'");
            }
        }
    }
    if (!o.out_dir.empty()) {
        cfg.out_dir = o.out_dir;
    } else if (const char* env = std::getenv("MWFZP_OUTPUT_DIR")) {
        cfg.out_dir = env;
    }
    mwfzp::validate_config(cfg);
}

int worker_count(const CommonOpts& o) {
    if (o.threads > 0) return o.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void print_summary(const mwfzp::DiagnosticsReport& r) {
    std::cout << "Tc = " << mwfzp::format_sig9(r.tc) << " (measured at T = "
              << mwfzp::format_sig9(r.t_measure) << ")\n";
    for (const auto& f : r.focal) {
        std::cout << "F" << f.order << ": x = " << mwfzp::format_sig9(f.position)
                  << " (f/f_cal = " << mwfzp::format_sig9(f.f_over_fcal) << ")";
        if (f.have_spot) {
            std::cout << ", eta = " << mwfzp::format_sig9(f.eta) << ", FWHM_y = "
                      << mwfzp::format_sig9(f.fwhm_y);
        }
        std::cout << "\n";
    }
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
}

int dispatch(const mwfzp::RunConfig& cfg, const CommonOpts& opts) {
    const std::string out = cfg.out_dir;
    if (cfg.sweep) {
        mwfzp::SweepResult sw = mwfzp::run_sweep(cfg, worker_count(opts), out);
        std::cout << sw.csv_text;
        std::cout << "sweep written to " << out << "/sweep.csv\n";
        for (const auto& p : sw.points) {
            if (!p.error.empty()) {
                std::cerr << "point " << mwfzp::format_sig9(p.p1) << " failed: " << p.error
                          << "\n";
                return 2;
            }
        }
        return 0;
    }
    mwfzp::RunOutput run = cfg.refine_dt ? mwfzp::run_single_refined(cfg, out)
                                         : mwfzp::run_single(cfg, out);
    print_summary(run.report);
    std::cout << "report written to " << out << "/report.txt\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"helium matter-wave focusing through a biased Fresnel zone plate"};
    app.require_subcommand(1);

    std::string config_path, preset_name;
    CommonOpts run_opts, sweep_opts, preset_opts;

    CLI::App* run_cmd = app.add_subcommand("run", "single simulation from a config file");
    run_cmd->add_option("config", config_path, "TOML config file")->required();
    add_common(run_cmd, run_opts);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep from a config file");
    sweep_cmd->add_option("config", config_path, "TOML config file with a [sweep] section")
        ->required();
    add_common(sweep_cmd, sweep_opts);

    CLI::App* preset_cmd = app.add_subcommand("preset", "run a named built-in setup");
    preset_cmd->add_option("name", preset_name,
                           "one of: benchmark-thin, baseline-50nm, uniform-sweep, "
                           "sqrtn-sweep, sin-grid, temperature-sweep")
        ->required();
    add_common(preset_cmd, preset_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            mwfzp::RunConfig cfg = mwfzp::parse_config(config_path);
            if (cfg.sweep) {
                throw mwfzp::config_error(
                    "config has a [sweep] section; use the sweep subcommand");
            }
            apply_common(cfg, run_opts);
            return dispatch(cfg, run_opts);
        }
        if (sweep_cmd->parsed()) {
            mwfzp::RunConfig cfg = mwfzp::parse_config(config_path);
            if (!cfg.sweep) throw mwfzp::config_error("config lacks a [sweep] section");
            apply_common(cfg, sweep_opts);
            return dispatch(cfg, sweep_opts);
        }
        mwfzp::RunConfig cfg = mwfzp::preset_config(preset_name);
        cfg.out_dir = "out-" + preset_name;
        apply_common(cfg, preset_opts);
        return dispatch(cfg, preset_opts);
    } catch (const mwfzp::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
