// pvsim -- scenario runner, controller comparison, MPP lookup and THD
// analysis for the PV/MPPT simulation library.
//
// Exit codes: 0 success, 2 usage/config problem, 3 model/simulation error.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvsim/config.hpp"
#include "pvsim/controllers.hpp"
#include "pvsim/errors.hpp"
#include "pvsim/metrics.hpp"
#include "pvsim/panel.hpp"
#include "pvsim/power_stage.hpp"
#include "pvsim/sim_engine.hpp"
#include "pvsim/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct RunResult {
    std::string controller;
    pvsim::Trace trace;
    pvsim::SummaryMetrics metrics;
};

// disturbances = profile segment boundaries after t = 0
std::vector<double> disturbance_times(const pvsim::Scenario& sc) {
    std::vector<double> times;
    for (const auto& seg : sc.profile.segments)
        if (seg.start > 0.0) times.push_back(seg.start);
    return times;
}

void warn_controller_config(const pvsim::Scenario& sc) {
    if (sc.controller.name != "hybrid") return;
    pvsim::HybridConfig cfg;
    cfg.k = sc.controller.k;
    cfg.voc_n = sc.panel.voc_n;
    cfg.kv = sc.panel.kv;
    cfg.t_threshold = sc.controller.t_threshold;
    cfg.fine_step = sc.controller.fine_step;
    for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << "\n";
}

RunResult run_one(pvsim::Scenario sc, const std::string& controller) {
    sc.controller.name = controller;
    RunResult rr;
    rr.controller = controller;
    rr.trace = pvsim::simulate(sc);
    const auto td = disturbance_times(sc);
    rr.metrics = pvsim::summarize(rr.trace, td);
    return rr;
}

std::string settling_text(const pvsim::SummaryMetrics& m) {
    if (m.settling_steps.empty()) return "-";
    std::string out;
    for (const auto& s : m.settling_steps) {
        if (!out.empty()) out += ",";
        out += s ? std::to_string(*s) : std::string("never");
    }
    return out;
}

void print_table(const std::vector<RunResult>& rows, std::uint64_t hash) {
    std::printf("scenario_hash %016" PRIx64 "\n", hash);
    std::printf("%-10s %-12s %-14s %-10s %s\n", "controller", "efficiency",
                "mean_power_w", "ripple_w", "settling_steps");
    for (const auto& r : rows)
        std::printf("%-10s %-12.6f %-14.4f %-10.4g %s\n", r.controller.c_str(),
                    r.metrics.tracking_efficiency, r.metrics.mean_power,
                    r.metrics.steady_ripple, settling_text(r.metrics).c_str());
}

void write_csv_file(const std::string& path, const pvsim::Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pvsim::Error("cannot open output file '" + path + "'");
    pvsim::write_trace_csv(out, trace);
}

int cmd_simulate(const std::string& scenario_path, const std::string& controller,
                 const std::string& out_path) {
    pvsim::Scenario sc = pvsim::load_scenario_file(scenario_path);
    if (!controller.empty()) {
        const auto& names = pvsim::controller_names();
        if (std::find(names.begin(), names.end(), controller) == names.end()) {
            std::string joined;
            for (const auto& n : names) {
                if (!joined.empty()) joined += ", ";
                joined += n;
            }
            throw pvsim::ConfigError("unknown controller '" + controller +
                                     "'; valid names: " + joined);
        }
        sc.controller.name = controller;
    }
    warn_controller_config(sc);
    RunResult rr = run_one(sc, sc.controller.name);
    write_csv_file(out_path, rr.trace);
    print_table({rr}, rr.trace.scenario_hash);
    std::printf("trace %s (%zu records)\n", out_path.c_str(), rr.trace.records.size());
    return kExitOk;
}

int cmd_compare(const std::string& scenario_path, std::vector<std::string> controllers,
                const std::string& out_dir) {
    if (controllers.size() < 2)
        throw CLI::ValidationError("--controllers", "compare needs at least two controllers");
    pvsim::Scenario sc = pvsim::load_scenario_file(scenario_path);
    for (const auto& name : controllers) {
        const auto& names = pvsim::controller_names();
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            std::string joined;
            for (const auto& n : names) {
                if (!joined.empty()) joined += ", ";
                joined += n;
            }
            throw pvsim::ConfigError("unknown controller '" + name +
                                     "'; valid names: " + joined);
        }
    }

    // independent runs; merged in a deterministic order below
    std::vector<std::future<RunResult>> futures;
    futures.reserve(controllers.size());
    for (const auto& name : controllers)
        futures.push_back(std::async(std::launch::async, run_one, sc, name));
    std::vector<RunResult> rows;
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());

    std::stable_sort(rows.begin(), rows.end(), [](const RunResult& a, const RunResult& b) {
        if (a.metrics.tracking_efficiency != b.metrics.tracking_efficiency)
            return a.metrics.tracking_efficiency > b.metrics.tracking_efficiency;
        return a.controller < b.controller;
    });

    print_table(rows, rows.front().trace.scenario_hash);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const auto& r : rows) {
            const std::string path = out_dir + "/" + r.controller + ".csv";
            write_csv_file(path, r.trace);
            std::printf("trace %s (%zu records)\n", path.c_str(), r.trace.records.size());
        }
    }
    return kExitOk;
}

int cmd_mpp(const std::string& scenario_path, double g, double t) {
    pvsim::Scenario sc = pvsim::load_scenario_file(scenario_path);
    const pvsim::EnvSample env{g, t, 0.0};
    const pvsim::OperatingPoint mpp = pvsim::true_mpp(env, sc.panel);
    const double voc = pvsim::open_circuit_voltage(env, sc.panel);
    const double isc = pvsim::panel_current(0.0, env, sc.panel);
    const double duty = pvsim::duty_for_target_voltage(mpp.v_pv, sc.bus);
    std::printf("g %.9g W/m2, t %.9g C\n", g, t);
    std::printf("v_mpp %.9g V\ni_mpp %.9g A\np_mpp %.9g W\n", mpp.v_pv, mpp.i_pv, mpp.p_pv);
    std::printf("voc %.9g V\nisc %.9g A\n", voc, isc);
    std::printf("v_mpp/voc %.6f\ni_mpp/isc %.6f\n", mpp.v_pv / voc, mpp.i_pv / isc);
    std::printf("duty_mpp %.9g (bus %.9g V)\n", duty, sc.bus.v_l);
    return kExitOk;
}

int cmd_thd(const std::string& csv_path, double fs, double f0, int harmonics) {
    std::ifstream in(csv_path);
    if (!in) throw pvsim::ConfigError("cannot open waveform file '" + csv_path + "'");
    pvsim::WaveformSamples w;
    w.samples = pvsim::read_sample_column(in);
    w.sample_rate = fs;
    w.fundamental = f0;
    const double value = pvsim::thd(w, harmonics);
    std::printf("thd_percent %.6f\n", value);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PV system simulator and MPPT benchmark"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string controller;
    std::string out_path = "trace.csv";
    std::string out_dir;
    std::string controllers_csv;
    std::string csv_path;
    double g = 1000.0;
    double t = 25.0;
    double fs = 0.0;
    double f0 = 0.0;
    int harmonics = 50;

    auto* sim = app.add_subcommand("simulate", "run one scenario and write its trace CSV");
    sim->add_option("--scenario", scenario_path, "scenario config file")->required();
    sim->add_option("--controller", controller, "override the configured controller");
    sim->add_option("--out", out_path, "trace CSV output path");

    auto* cmp = app.add_subcommand("compare", "run several controllers on one scenario");
    cmp->add_option("--scenario", scenario_path, "scenario config file")->required();
    cmp->add_option("--controllers", controllers_csv, "comma-separated controller names")
        ->required();
    cmp->add_option("--out", out_dir, "directory for per-controller trace CSVs");

    auto* mpp = app.add_subcommand("mpp", "print the true maximum power point");
    mpp->add_option("--scenario", scenario_path, "scenario config file (panel and bus)")
        ->required();
    mpp->add_option("--g", g, "irradiance, W/m2");
    mpp->add_option("--t", t, "cell temperature, C");

    auto* thd_cmd = app.add_subcommand("thd", "total harmonic distortion of a waveform CSV");
    thd_cmd->add_option("csv", csv_path, "one-column sample CSV")->required();
    thd_cmd->add_option("--fs", fs, "sample rate, Hz")->required();
    thd_cmd->add_option("--f0", f0, "fundamental frequency, Hz")->required();
    thd_cmd->add_option("--harmonics", harmonics, "highest harmonic order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(scenario_path, controller, out_path);
        if (cmp->parsed()) {
            std::vector<std::string> names;
            std::stringstream ss(controllers_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) names.push_back(item);
            return cmd_compare(scenario_path, names, out_dir);
        }
        if (mpp->parsed()) return cmd_mpp(scenario_path, g, t);
        if (thd_cmd->parsed()) return cmd_thd(csv_path, fs, f0, harmonics);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pvsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pvsim::SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const pvsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
