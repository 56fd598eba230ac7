#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "memsim/device_models.hpp"
#include "memsim/sim_engine.hpp"
#include "memsim/waveform.hpp"

namespace memsim {

using ojson = nlohmann::ordered_json;

/// Configuration or validation failure; carries the 1-based source position
/// for parse errors (0 when not applicable).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg, int line = 0, int column = 0)
        : std::runtime_error(msg), line_(line), column_(column) {}
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// One validated run: device, drive, integration settings, sweep factors and
/// the output directory. All physical quantities are SI (seconds, volts,
/// ohms), spelled out in the field names.
struct RunConfig {
    DeviceModel device = MemristorDevice{};
    Waveform waveform{};
    SimConfig sim{};
    std::vector<double> sweep_factors{1.0, 10.0, 100.0};
    std::string out_dir = "out";
};

namespace detail {

inline void reject_unknown_keys(const ojson& obj, const std::set<std::string>& allowed,
                                const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(scope + ": unknown key '" + it.key() + "'");
        }
    }
}

inline double get_number(const ojson& obj, const std::string& key, double fallback,
                         const std::string& scope) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(scope + "." + key + ": must be a number");
    return v.get<double>();
}

inline std::string get_string(const ojson& obj, const std::string& key,
                              const std::string& fallback, const std::string& scope) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(scope + "." + key + ": must be a string");
    return v.get<std::string>();
}

inline Waveform parse_waveform(const ojson& obj, const std::string& scope) {
    if (!obj.is_object()) throw ConfigError(scope + ": must be an object");
    reject_unknown_keys(obj,
                        {"kind", "amplitude_v", "period_s", "ripple_amplitude_v",
                         "ripple_period_fraction"},
                        scope);
    Waveform w;
    const std::string kind = get_string(obj, "kind", "sine", scope);
    if (kind == "sine") {
        w.kind = WaveformKind::sine;
    } else if (kind == "compound") {
        w.kind = WaveformKind::compound;
    } else {
        throw ConfigError(scope + ".kind: must be 'sine' or 'compound'");
    }
    w.amplitude_v = get_number(obj, "amplitude_v", 2.0, scope);
    w.period_s = get_number(obj, "period_s", 1.0, scope);
    if (w.kind == WaveformKind::compound) {
        w.ripple_amplitude_v = get_number(obj, "ripple_amplitude_v", 0.3, scope);
        w.ripple_period_fraction = get_number(obj, "ripple_period_fraction", 0.1, scope);
    } else {
        if (obj.contains("ripple_amplitude_v") || obj.contains("ripple_period_fraction")) {
            throw ConfigError(scope + ": ripple fields are only valid for kind=compound");
        }
    }
    return w;
}

inline DeviceModel parse_device(const ojson& dev) {
    std::string kind;
    ojson obj = ojson::object();
    if (dev.is_string()) {
        kind = dev.get<std::string>();
    } else if (dev.is_object()) {
        obj = dev;
        if (!obj.contains("kind")) throw ConfigError("device.kind: required");
        kind = get_string(obj, "kind", "", "device");
    } else {
        throw ConfigError("device: must be a kind string or an object");
    }

    if (kind == "type1") {
        reject_unknown_keys(obj, {"kind", "r_on_ohm", "r_off_ohm", "initial_resistance_ohm"},
                            "device");
        Type1Device d;
        d.pair.r_on_ohm = get_number(obj, "r_on_ohm", 100.0, "device");
        d.pair.r_off_ohm = get_number(obj, "r_off_ohm", 1000.0, "device");
        d.initial_resistance_ohm =
            get_number(obj, "initial_resistance_ohm", d.pair.r_off_ohm, "device");
        return d;
    }
    if (kind == "type2") {
        reject_unknown_keys(
            obj, {"kind", "r_above_ohm", "r_below_ohm", "threshold_v", "control_waveform"},
            "device");
        Type2Device d;
        d.params.r_above_ohm = get_number(obj, "r_above_ohm", 100.0, "device");
        d.params.r_below_ohm = get_number(obj, "r_below_ohm", 1000.0, "device");
        d.params.threshold_v = get_number(obj, "threshold_v", 1.0, "device");
        if (obj.contains("control_waveform")) {
            d.control = parse_waveform(obj.at("control_waveform"), "device.control_waveform");
        }
        return d;
    }
    if (kind == "memristor") {
        reject_unknown_keys(
            obj, {"kind", "r_on_ohm", "r_off_ohm", "v_threshold_v", "beta_per_volt_second", "x0"},
            "device");
        MemristorDevice d;
        d.params.pair.r_on_ohm = get_number(obj, "r_on_ohm", 100.0, "device");
        d.params.pair.r_off_ohm = get_number(obj, "r_off_ohm", 1000.0, "device");
        d.params.v_threshold_v = get_number(obj, "v_threshold_v", 1.0, "device");
        d.params.beta_per_volt_second = get_number(obj, "beta_per_volt_second", 20.0, "device");
        d.initial_x = get_number(obj, "x0", 0.0, "device");
        return d;
    }
    throw ConfigError("device.kind: must be 'type1', 'type2' or 'memristor'");
}

}  // namespace detail

/// Parses and validates a JSON configuration document, applying the built-in
/// defaults (the standard demonstration parameters: 100 ohm / 1 kohm rails,
/// 1 V threshold, 2 V sine drive with a 1 s period). Unknown keys are
/// rejected and validation errors name the offending field.
[[nodiscard]] inline RunConfig parse_config(const std::string& text) {
    ojson root;
    try {
        root = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Recover the line/column from the byte offset for a usable message.
        int line = 1, col = 1;
        const std::size_t stop =
            std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        if (const auto bracket = what.find("] "); bracket != std::string::npos) {
            what = what.substr(bracket + 2);  // drop nlohmann's exception-id prefix
        }
        throw ConfigError(what, line, col);
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown_keys(root, {"device", "waveform", "sim", "sweep_factors", "out_dir"},
                                "config");

    RunConfig cfg;
    if (root.contains("device")) cfg.device = detail::parse_device(root.at("device"));
    if (root.contains("waveform")) {
        cfg.waveform = detail::parse_waveform(root.at("waveform"), "waveform");
    }

    // Integration defaults derive from the drive period: 20000 steps per
    // period and three periods so the final one is past the transient.
    cfg.sim.dt_s = cfg.waveform.period_s / 20000.0;
    cfg.sim.t_end_s = 3.0 * cfg.waveform.period_s;
    cfg.sim.record_stride = 1;
    if (root.contains("sim")) {
        const auto& sim = root.at("sim");
        if (!sim.is_object()) throw ConfigError("sim: must be an object");
        detail::reject_unknown_keys(sim, {"t_end_s", "dt_s", "record_stride"}, "sim");
        cfg.sim.dt_s = detail::get_number(sim, "dt_s", cfg.sim.dt_s, "sim");
        cfg.sim.t_end_s = detail::get_number(sim, "t_end_s", cfg.sim.t_end_s, "sim");
        if (sim.contains("record_stride")) {
            if (!sim.at("record_stride").is_number_integer()) {
                throw ConfigError("sim.record_stride: must be an integer");
            }
            cfg.sim.record_stride = sim.at("record_stride").get<std::int64_t>();
        }
    }

    if (root.contains("sweep_factors")) {
        const auto& arr = root.at("sweep_factors");
        if (!arr.is_array() || arr.empty()) {
            throw ConfigError("sweep_factors: must be a nonempty array of numbers");
        }
        cfg.sweep_factors.clear();
        for (const auto& v : arr) {
            if (!v.is_number()) throw ConfigError("sweep_factors: must contain only numbers");
            cfg.sweep_factors.push_back(v.get<double>());
        }
    }
    cfg.out_dir = detail::get_string(root, "out_dir", cfg.out_dir, "config");

    try {
        validate_device(cfg.device);
        validate_waveform(cfg.waveform);
        validate_sim_config(cfg.sim);
        for (double f : cfg.sweep_factors) {
            if (!(f > 0.0)) throw std::invalid_argument("sweep_factors: must be > 0");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

namespace detail {

inline ojson waveform_to_json(const Waveform& w) {
    ojson j;
    j["kind"] = w.kind == WaveformKind::sine ? "sine" : "compound";
    j["amplitude_v"] = w.amplitude_v;
    j["period_s"] = w.period_s;
    if (w.kind == WaveformKind::compound) {
        j["ripple_amplitude_v"] = w.ripple_amplitude_v;
        j["ripple_period_fraction"] = w.ripple_period_fraction;
    }
    return j;
}

}  // namespace detail

/// Normalized JSON form of a config; parse_config(config_to_json(c).dump())
/// reproduces c exactly.
[[nodiscard]] inline ojson config_to_json(const RunConfig& cfg) {
    ojson j;
    ojson dev;
    if (const auto* d = std::get_if<Type1Device>(&cfg.device)) {
        dev["kind"] = "type1";
        dev["r_on_ohm"] = d->pair.r_on_ohm;
        dev["r_off_ohm"] = d->pair.r_off_ohm;
        dev["initial_resistance_ohm"] = d->initial_resistance_ohm;
    } else if (const auto* d = std::get_if<Type2Device>(&cfg.device)) {
        dev["kind"] = "type2";
        dev["r_above_ohm"] = d->params.r_above_ohm;
        dev["r_below_ohm"] = d->params.r_below_ohm;
        dev["threshold_v"] = d->params.threshold_v;
        if (d->control) dev["control_waveform"] = detail::waveform_to_json(*d->control);
    } else {
        const auto& mem = std::get<MemristorDevice>(cfg.device);
        dev["kind"] = "memristor";
        dev["r_on_ohm"] = mem.params.pair.r_on_ohm;
        dev["r_off_ohm"] = mem.params.pair.r_off_ohm;
        dev["v_threshold_v"] = mem.params.v_threshold_v;
        dev["beta_per_volt_second"] = mem.params.beta_per_volt_second;
        dev["x0"] = mem.initial_x;
    }
    j["device"] = dev;
    j["waveform"] = detail::waveform_to_json(cfg.waveform);
    j["sim"] = {{"t_end_s", cfg.sim.t_end_s},
                {"dt_s", cfg.sim.dt_s},
                {"record_stride", cfg.sim.record_stride}};
    j["sweep_factors"] = cfg.sweep_factors;
    j["out_dir"] = cfg.out_dir;
    return j;
}

}  // namespace memsim
