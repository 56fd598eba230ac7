#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "memsim/analysis.hpp"
#include "memsim/csv.hpp"
#include "memsim/report.hpp"
#include "memsim/sim_engine.hpp"

namespace memsim {

enum class Figure { fig1a, fig1b, fig2 };

[[nodiscard]] inline Figure parse_figure(const std::string& name) {
    if (name == "fig1a") return Figure::fig1a;
    if (name == "fig1b") return Figure::fig1b;
    if (name == "fig2") return Figure::fig2;
    throw ConfigError("reproduce: figure must be one of fig1a, fig1b, fig2");
}

namespace detail {

inline std::int64_t now_unix_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

inline void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

inline std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

inline std::string factor_tag(double f) {
    // Integral factors format without a decimal point: loops_10.csv, not loops_10.0.csv.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", f);
    return buf;
}

inline SweepOptions sweep_options_from(const RunConfig& cfg) {
    SweepOptions opts;
    opts.samples_per_period = std::llround(cfg.waveform.period_s / cfg.sim.dt_s);
    const auto periods = std::llround(cfg.sim.t_end_s / cfg.waveform.period_s);
    opts.periods = static_cast<int>(std::max<std::int64_t>(3, periods));
    opts.record_stride = cfg.sim.record_stride;
    return opts;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace detail

/// Runs one time-domain simulation and writes trace.csv plus summary.json
/// into the configured output directory. When the trace spans at least two
/// drive periods the summary includes the steady-state loop metrics.
inline int cmd_simulate(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::ensure_out_dir(cfg.out_dir);

    Trace tr = simulate(cfg.device, cfg.waveform, cfg.sim);
    write_trace_csv(detail::join(cfg.out_dir, "trace.csv"), tr);

    SummaryReport report;
    report.config = cfg;
    const double span = tr.times.back() - tr.times.front();
    if (span + 1e-9 * cfg.waveform.period_s >= 2.0 * cfg.waveform.period_s) {
        try {
            SweepEntry entry{1.0, steady_state_period(tr, cfg.waveform.period_s)};
            report.loops.push_back(summarize_loop(cfg.device, entry));
        } catch (const std::invalid_argument&) {
            // record stride does not line up with the period; skip loop metrics
        }
    }
    report.generated_unix_ms = detail::now_unix_ms();
    report.duration_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    write_summary_json(detail::join(cfg.out_dir, "summary.json"), report);
    return 0;
}

/// Runs the frequency sweep, writes loops_<factor>.csv per sweep point and a
/// summary.json with the memory verdict. The exit status encodes the verdict:
/// 0 for memristive, 2 otherwise.
inline int cmd_classify(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::ensure_out_dir(cfg.out_dir);

    const auto entries =
        sweep_frequencies(cfg.device, cfg.waveform, cfg.sweep_factors,
                          detail::sweep_options_from(cfg));
    for (const auto& e : entries) {
        write_loop_csv(detail::join(cfg.out_dir, "loops_" + detail::factor_tag(e.factor) + ".csv"),
                       e.steady);
    }

    SummaryReport report;
    report.config = cfg;
    report.loops = summarize_sweep(cfg.device, entries);
    report.verdict = classify(report.loops);
    report.generated_unix_ms = detail::now_unix_ms();
    report.duration_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    write_summary_json(detail::join(cfg.out_dir, "summary.json"), report);
    return report.verdict->label == MemoryLabel::memristive ? 0 : 2;
}

namespace detail {

inline std::string fig1_gnuplot(const std::string& stem, const std::string& title) {
    return "# gnuplot script generated by memsim; run: gnuplot " + stem + ".gnuplot\n" +
           "set datafile separator ','\n"
           "set terminal pngcairo size 1000,700\n"
           "set output '" + stem + ".png'\n"
           "set title '" + title + "'\n"
           "set xlabel 't [s]'\n"
           "set ylabel 'resistance [Ohm], curves offset by 1 kOhm steps'\n"
           "set key outside\n"
           "plot '" + stem + ".csv' skip 1 using 1:5 with lines lw 2 title 'threshold memristive', \\\n"
           "     '" + stem + ".csv' skip 1 using 1:($4+1000) with lines lw 2 title 'type 2 (+1 kOhm)', \\\n"
           "     '" + stem + ".csv' skip 1 using 1:($3+2000) with lines lw 2 title 'type 1 (+2 kOhm)', \\\n"
           "     '" + stem + ".csv' skip 1 using 1:($2*250+3600) with lines lw 1 title 'drive (scaled)'\n";
}

inline std::string fig2_gnuplot(const std::vector<double>& factors) {
    std::string s =
        "# gnuplot script generated by memsim; run: gnuplot fig2.gnuplot\n"
        "set datafile separator ','\n"
        "set terminal pngcairo size 1500,500\n"
        "set output 'fig2.png'\n"
        "set multiplot layout 1,3\n";
    const char* models[] = {"type1", "type2", "memristor"};
    const char* titles[] = {"type 1", "type 2", "threshold memristive"};
    for (int m = 0; m < 3; ++m) {
        s += std::string("set title '") + titles[m] + "'\n";
        s += "set xlabel 'V [V]'\nset ylabel 'I [A]'\n";
        s += "plot ";
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const std::string tag = factor_tag(factors[i]);
            s += std::string("'fig2_loops_") + models[m] + "_" + tag +
                 ".csv' skip 1 using 1:2 with lines title '" + tag + " nu_0'";
            s += (i + 1 < factors.size()) ? ", \\\n     " : "\n";
        }
    }
    s += "unset multiplot\n";
    return s;
}

}  // namespace detail

/// Regenerates the demonstration figures as plot-ready data: fig1a/fig1b are
/// resistance-vs-time traces of all three models under the plain and
/// ripple-compound sine drives (one CSV plus a gnuplot script applying the
/// display offsets); fig2 is the set of per-frequency steady-state (V, I)
/// loops for all three models.
inline int cmd_reproduce(Figure fig, const RunConfig& base) {
    detail::ensure_out_dir(base.out_dir);

    const double T = base.waveform.period_s;
    const std::vector<DeviceModel> devices = {Type1Device{}, Type2Device{}, MemristorDevice{}};

    if (fig == Figure::fig1a || fig == Figure::fig1b) {
        const bool compound = fig == Figure::fig1b;
        const Waveform wf = compound ? make_compound(2.0, T, 0.3, 0.1) : make_sine(2.0, T);
        const std::string stem = compound ? "fig1b" : "fig1a";

        SimConfig cfg;
        cfg.dt_s = base.sim.dt_s;
        cfg.t_end_s = 2.0 * T;  // two periods of the pristine-state response
        const auto spp = std::llround(T / cfg.dt_s);
        cfg.record_stride = std::max<std::int64_t>(1, spp / 2000);

        std::vector<Trace> traces;
        traces.reserve(devices.size());
        for (const auto& dev : devices) traces.push_back(simulate(dev, wf, cfg));

        const std::string csv_path = detail::join(base.out_dir, stem + ".csv");
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        out << "t,V,R_type1,R_type2,R_memristor\n";
        for (std::size_t i = 0; i < traces[0].size(); ++i) {
            out << format_double(traces[0].times[i]) << ',' << format_double(traces[0].voltage[i])
                << ',' << format_double(traces[0].resistance[i]) << ','
                << format_double(traces[1].resistance[i]) << ','
                << format_double(traces[2].resistance[i]) << '\n';
        }
        if (!out) throw std::runtime_error("write failed for " + csv_path);

        detail::write_text_file(
            detail::join(base.out_dir, stem + ".gnuplot"),
            detail::fig1_gnuplot(stem, compound ? "response to the ripple-compound drive"
                                                : "response to the plain sine drive"));
        return 0;
    }

    // fig2: frequency sweep loops for each model under the plain sine drive.
    const Waveform wf = make_sine(2.0, T);
    for (const auto& dev : devices) {
        const auto entries = sweep_frequencies(dev, wf, base.sweep_factors,
                                               detail::sweep_options_from(base));
        for (const auto& e : entries) {
            const std::string name = "fig2_loops_" + kind_name(device_kind(dev)) + "_" +
                                     detail::factor_tag(e.factor) + ".csv";
            write_loop_csv(detail::join(base.out_dir, name), e.steady);
        }
    }
    detail::write_text_file(detail::join(base.out_dir, "fig2.gnuplot"),
                            detail::fig2_gnuplot(base.sweep_factors));
    return 0;
}

}  // namespace memsim
