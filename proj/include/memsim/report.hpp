#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memsim/analysis.hpp"
#include "memsim/config.hpp"
#include "memsim/version.hpp"

namespace memsim {

/// Machine-readable run record written next to the CSV outputs.
/// generated_unix_ms and duration_ms are the only fields that vary between
/// identical runs.
struct SummaryReport {
    RunConfig config{};
    std::vector<LoopSummary> loops;
    std::optional<MemoryVerdict> verdict;
    std::string tool_version = kVersion;
    std::int64_t generated_unix_ms = 0;
    double duration_ms = 0.0;
};

[[nodiscard]] inline ojson loop_summary_to_json(const LoopSummary& s) {
    return ojson{{"frequency_factor", s.frequency_factor},
                 {"signed_area_va", s.signed_area_va},
                 {"hysteresis_area_va", s.hysteresis_area_va},
                 {"pinched", s.pinched},
                 {"n_switch_events", s.n_switch_events}};
}

[[nodiscard]] inline LoopSummary loop_summary_from_json(const ojson& j) {
    LoopSummary s;
    s.frequency_factor = j.at("frequency_factor").get<double>();
    s.signed_area_va = j.at("signed_area_va").get<double>();
    s.hysteresis_area_va = j.at("hysteresis_area_va").get<double>();
    s.pinched = j.at("pinched").get<bool>();
    s.n_switch_events = j.at("n_switch_events").get<int>();
    return s;
}

[[nodiscard]] inline ojson verdict_to_json(const MemoryVerdict& v) {
    ojson ev = ojson::array();
    for (const auto& e : v.evidence) {
        ev.push_back({{"criterion", e.criterion}, {"value", e.value}, {"threshold", e.threshold}});
    }
    return ojson{{"label", label_name(v.label)}, {"evidence", ev}};
}

[[nodiscard]] inline MemoryVerdict verdict_from_json(const ojson& j) {
    MemoryVerdict v;
    const std::string label = j.at("label").get<std::string>();
    if (label == "memristive") {
        v.label = MemoryLabel::memristive;
    } else if (label == "nonlinear_resistor") {
        v.label = MemoryLabel::nonlinear_resistor;
    } else if (label == "frequency_independent_bistable") {
        v.label = MemoryLabel::frequency_independent_bistable;
    } else {
        throw std::runtime_error("summary.json: unknown verdict label '" + label + "'");
    }
    for (const auto& e : j.at("evidence")) {
        v.evidence.push_back({e.at("criterion").get<std::string>(), e.at("value").get<double>(),
                              e.at("threshold").get<double>()});
    }
    return v;
}

[[nodiscard]] inline ojson report_to_json(const SummaryReport& r) {
    ojson j;
    j["tool"] = {{"name", kToolName}, {"version", r.tool_version}};
    j["generated_unix_ms"] = r.generated_unix_ms;
    j["duration_ms"] = r.duration_ms;
    j["config"] = config_to_json(r.config);
    ojson loops = ojson::array();
    for (const auto& s : r.loops) loops.push_back(loop_summary_to_json(s));
    j["loops"] = loops;
    j["verdict"] = r.verdict ? verdict_to_json(*r.verdict) : ojson(nullptr);
    return j;
}

[[nodiscard]] inline SummaryReport report_from_json(const ojson& j) {
    SummaryReport r;
    r.tool_version = j.at("tool").at("version").get<std::string>();
    r.generated_unix_ms = j.at("generated_unix_ms").get<std::int64_t>();
    r.duration_ms = j.at("duration_ms").get<double>();
    r.config = parse_config(j.at("config").dump());
    for (const auto& s : j.at("loops")) r.loops.push_back(loop_summary_from_json(s));
    if (!j.at("verdict").is_null()) r.verdict = verdict_from_json(j.at("verdict"));
    return r;
}

inline void write_summary_json(const std::string& path, const SummaryReport& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << report_to_json(r).dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path);
}

[[nodiscard]] inline SummaryReport read_summary_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    ojson j;
    in >> j;
    return report_from_json(j);
}

}  // namespace memsim
