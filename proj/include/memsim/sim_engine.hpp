#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "memsim/device_models.hpp"
#include "memsim/waveform.hpp"

namespace memsim {

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace detail

// ============================================================================
// Configuration and traces
// ============================================================================

struct SimConfig {
    double t_end_s = 3.0;
    double dt_s = 1.0 / 20000.0;  // default: 20000 steps per unit period
    std::int64_t record_stride = 1;
};

inline void validate_sim_config(const SimConfig& cfg) {
    if (!(cfg.dt_s > 0.0)) throw std::invalid_argument("sim.dt_s: must be > 0");
    if (!(cfg.t_end_s >= cfg.dt_s)) throw std::invalid_argument("sim.t_end_s: must be >= dt_s");
    if (cfg.record_stride < 1) throw std::invalid_argument("sim.record_stride: must be >= 1");
    if (cfg.t_end_s / cfg.dt_s > 1e9) {
        throw std::invalid_argument("sim: t_end_s/dt_s exceeds the supported step count");
    }
}

/// Uniformly sampled simulation record. All arrays share one length;
/// state_x is populated only for the memristive model.
struct Trace {
    std::vector<double> times;
    std::vector<double> voltage;
    std::vector<double> v_dot;
    std::vector<double> resistance;
    std::vector<double> current;
    std::vector<double> state_x;
    double sample_spacing_s = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
    [[nodiscard]] bool has_state() const noexcept { return !state_x.empty(); }
};

// ============================================================================
// Fixed-step simulation
// ============================================================================

/// Runs a fixed-step time-domain simulation under the given drive.
///
/// The memristor state advances by explicit Euler with clamping,
/// x_{k+1} = clamp(x_k + dt * rate(x_k, v_k)); the derivative-sign model is
/// updated from the analytic drive derivative each step; the threshold model
/// is evaluated pointwise. Recorded samples reflect the device state at the
/// sample time, so the first row already responds to the drive at t = 0.
///
/// When dt divides the drive period the phase is derived from the step index,
/// which keeps samples one period apart (and across frequency-scaled runs on
/// the same per-period grid) bit-identical.
[[nodiscard]] inline Trace simulate(const DeviceModel& device, const Waveform& wf,
                                    const SimConfig& cfg) {
    validate_device(device);
    validate_waveform(wf);
    validate_sim_config(cfg);

    const double dt = cfg.dt_s;
    const std::int64_t steps = std::llround(cfg.t_end_s / dt);
    const std::int64_t stride = cfg.record_stride;

    const double per_period = wf.period_s / dt;
    const std::int64_t spp = std::llround(per_period);
    const bool exact_grid = spp >= 1 && std::abs(per_period - static_cast<double>(spp)) <=
                                            1e-9 * static_cast<double>(spp);
    auto phase = [&](std::int64_t k, double t) {
        if (exact_grid) return static_cast<double>(k % spp) / static_cast<double>(spp);
        return std::fmod(t / wf.period_s, 1.0);
    };

    Trace tr;
    tr.sample_spacing_s = dt * static_cast<double>(stride);
    const std::size_t n_rec = static_cast<std::size_t>(steps / stride) + 1;
    tr.times.reserve(n_rec);
    tr.voltage.reserve(n_rec);
    tr.v_dot.reserve(n_rec);
    tr.resistance.reserve(n_rec);
    tr.current.reserve(n_rec);

    auto record = [&](double t, double v, double vd, double r) {
        tr.times.push_back(t);
        tr.voltage.push_back(v);
        tr.v_dot.push_back(vd);
        tr.resistance.push_back(r);
        tr.current.push_back(v / r);
    };

    std::visit(
        detail::overloaded{
            [&](const Type1Device& d) {
                Type1State state{d.initial_resistance_ohm, d.pair};
                for (std::int64_t k = 0; k <= steps; ++k) {
                    const double t = static_cast<double>(k) * dt;
                    const double u = phase(k, t);
                    const double v = value_at_phase(wf, u);
                    const double vd = slope_at_phase(wf, u) / wf.period_s;
                    state = type1_update(state, vd);
                    if (k % stride == 0) record(t, v, vd, state.resistance_ohm);
                }
            },
            [&](const Type2Device& d) {
                for (std::int64_t k = 0; k <= steps; ++k) {
                    const double t = static_cast<double>(k) * dt;
                    const double u = phase(k, t);
                    const double v = value_at_phase(wf, u);
                    const double vd = slope_at_phase(wf, u) / wf.period_s;
                    const double vc = d.control ? eval(*d.control, t) : v;
                    const double r = type2_memristance(vc, d.params);
                    if (k % stride == 0) record(t, v, vd, r);
                }
            },
            [&](const MemristorDevice& d) {
                tr.state_x.reserve(n_rec);
                double x = std::clamp(d.initial_x, 0.0, 1.0);
                for (std::int64_t k = 0; k <= steps; ++k) {
                    const double t = static_cast<double>(k) * dt;
                    const double u = phase(k, t);
                    const double v = value_at_phase(wf, u);
                    const double vd = slope_at_phase(wf, u) / wf.period_s;
                    if (k % stride == 0) {
                        record(t, v, vd, memristor_resistance(x, d.params));
                        tr.state_x.push_back(x);
                    }
                    if (k < steps) {
                        x = std::clamp(x + dt * memristor_rate(x, v, d.params), 0.0, 1.0);
                    }
                }
            },
        },
        device);

    return tr;
}

// ============================================================================
// Steady-state extraction and frequency sweeps
// ============================================================================

/// Returns the sub-trace covering the last complete period [t_end - T, t_end].
/// The trace must span at least two periods so the extracted window is free
/// of the initial transient.
[[nodiscard]] inline Trace steady_state_period(const Trace& tr, double period_s) {
    if (tr.size() < 2) throw std::invalid_argument("steady_state_period: trace too short");
    const double spacing = tr.sample_spacing_s;
    const std::int64_t m = std::llround(period_s / spacing);
    if (m < 1 || std::abs(static_cast<double>(m) * spacing - period_s) > 1e-9 * period_s) {
        throw std::invalid_argument(
            "steady_state_period: period is not a whole number of sample intervals");
    }
    const double span = tr.times.back() - tr.times.front();
    if (span + 1e-9 * period_s < 2.0 * period_s) {
        throw std::invalid_argument(
            "steady_state_period: trace too short, needs at least two periods");
    }

    const std::size_t last = tr.size() - 1;
    const std::size_t first = last - static_cast<std::size_t>(m);
    Trace out;
    out.sample_spacing_s = spacing;
    auto slice = [&](const std::vector<double>& src) {
        return std::vector<double>(src.begin() + static_cast<std::ptrdiff_t>(first),
                                   src.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    };
    out.times = slice(tr.times);
    out.voltage = slice(tr.voltage);
    out.v_dot = slice(tr.v_dot);
    out.resistance = slice(tr.resistance);
    out.current = slice(tr.current);
    if (tr.has_state()) out.state_x = slice(tr.state_x);
    return out;
}

struct SweepOptions {
    int periods = 3;  // simulated before the final period is extracted
    std::int64_t samples_per_period = 20000;
    std::int64_t record_stride = 1;
};

struct SweepEntry {
    double factor = 1.0;
    Trace steady;
};

/// Simulates the device at each frequency factor (period = base period / f),
/// starting from a fresh initial state every run, and returns the steady-state
/// final period for each factor in input order.
[[nodiscard]] inline std::vector<SweepEntry> sweep_frequencies(
    const DeviceModel& device, const Waveform& base, const std::vector<double>& factors,
    const SweepOptions& opts = {}) {
    if (factors.empty()) throw std::invalid_argument("sweep: factors must be nonempty");
    for (double f : factors) {
        if (!(f > 0.0)) throw std::invalid_argument("sweep: factors must be > 0");
    }
    if (opts.periods < 3) throw std::invalid_argument("sweep: needs at least 3 periods");
    if (opts.samples_per_period < 8) {
        throw std::invalid_argument("sweep: samples_per_period too small");
    }

    std::vector<SweepEntry> entries;
    entries.reserve(factors.size());
    for (double f : factors) {
        Waveform wf = base;
        wf.period_s = base.period_s / f;
        SimConfig cfg;
        cfg.dt_s = wf.period_s / static_cast<double>(opts.samples_per_period);
        cfg.t_end_s = static_cast<double>(opts.periods) * wf.period_s;
        cfg.record_stride = opts.record_stride;
        Trace tr = simulate(device, wf, cfg);
        entries.push_back({f, steady_state_period(tr, wf.period_s)});
    }
    return entries;
}

}  // namespace memsim
