// memsim: simulates three two-terminal resistance models (a derivative-sign
// bi-state resistor, an instantaneous-threshold resistor and a threshold-type
// memristive element) under periodic drives, and classifies from a frequency
// sweep which of them actually carries memory.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "memsim/commands.hpp"
#include "memsim/config.hpp"
#include "memsim/version.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw memsim::ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    double dt = 0.0;
    double seed_state = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--out", opts.out_dir, "output directory (default: out)");
    cmd->add_option("--dt", opts.dt, "integration step in seconds");
    cmd->add_option("--seed-state", opts.seed_state,
                    "initial memristor state x0 in [0,1] (memristor device only)");
}

memsim::RunConfig load_config(const CommonOpts& opts, const std::string& default_device) {
    const std::string text = opts.config_path.empty()
                                 ? "{\"device\": \"" + default_device + "\"}"
                                 : read_file(opts.config_path);
    memsim::RunConfig cfg = memsim::parse_config(text);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.dt > 0.0) cfg.sim.dt_s = opts.dt;
    if (opts.seed_state >= 0.0) {
        auto* dev = std::get_if<memsim::MemristorDevice>(&cfg.device);
        if (dev == nullptr) {
            throw memsim::ConfigError("--seed-state applies only to the memristor device");
        }
        dev->initial_x = opts.seed_state;
        memsim::validate_device(cfg.device);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and memory classification of bi-state, threshold-resistor "
                 "and threshold-memristive device models"};
    app.set_version_flag("--version", std::string(memsim::kVersion));
    app.require_subcommand(1);

    CommonOpts sim_opts, cls_opts, rep_opts;
    std::string figure;

    CLI::App* sim = app.add_subcommand("simulate", "run one time-domain simulation");
    add_common(sim, sim_opts);

    CLI::App* cls = app.add_subcommand(
        "classify", "sweep frequencies and classify the device's memory behavior "
                    "(exit 0: memristive, exit 2: not memristive)");
    add_common(cls, cls_opts);

    CLI::App* rep = app.add_subcommand("reproduce",
                                       "regenerate a demonstration figure as CSV + gnuplot");
    rep->add_option("figure", figure, "one of fig1a, fig1b, fig2")->required();
    add_common(rep, rep_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            return memsim::cmd_simulate(load_config(sim_opts, "memristor"));
        }
        if (cls->parsed()) {
            return memsim::cmd_classify(load_config(cls_opts, "memristor"));
        }
        const memsim::Figure fig = memsim::parse_figure(figure);
        return memsim::cmd_reproduce(fig, load_config(rep_opts, "memristor"));
    } catch (const memsim::ConfigError& e) {
        std::cerr << "memsim: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "memsim: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "memsim: " << e.what() << '\n';
        return kExitRuntime;
    }
}
