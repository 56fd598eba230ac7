#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "memsim/waveform.hpp"

namespace memsim {

// ============================================================================
// Parameter and state types
// ============================================================================

/// Low/high resistance rails shared by the bi-state and threshold models.
struct ResistancePair {
    double r_on_ohm = 100.0;
    double r_off_ohm = 1000.0;
};

inline void validate_pair(const ResistancePair& p) {
    if (!(p.r_on_ohm > 0.0)) {
        throw std::invalid_argument("device.r_on_ohm: must be > 0");
    }
    if (!(p.r_off_ohm > p.r_on_ohm)) {
        throw std::invalid_argument("device.r_off_ohm: must be > r_on_ohm");
    }
}

/// Bi-state resistor selected by the sign of the drive's time derivative.
struct Type1State {
    double resistance_ohm = 1000.0;  // always one of {pair.r_on_ohm, pair.r_off_ohm}
    ResistancePair pair{};
};

/// Instantaneous-threshold resistor: resistance chosen by comparing the
/// magnitude of a control voltage against a fixed threshold. Stateless.
struct Type2Params {
    double r_above_ohm = 100.0;   // applies when |v_control| > threshold_v
    double r_below_ohm = 1000.0;  // applies when |v_control| < threshold_v
    double threshold_v = 1.0;
};

inline void validate_type2(const Type2Params& p) {
    if (!(p.r_above_ohm > 0.0)) throw std::invalid_argument("device.r_above_ohm: must be > 0");
    if (!(p.r_below_ohm > 0.0)) throw std::invalid_argument("device.r_below_ohm: must be > 0");
    if (!(p.threshold_v >= 0.0)) throw std::invalid_argument("device.threshold_v: must be >= 0");
}

/// Threshold-type memristive element: internal state x in [0,1] integrates
/// the drive excess over the threshold, and the resistance interpolates
/// linearly between the rails.
///
/// beta has units 1/(V*s) for dimensionless x; it is equivalent to a
/// memristance slew rate of beta*(r_off-r_on) ohms per volt-second.
struct MemristorParams {
    ResistancePair pair{};
    double v_threshold_v = 1.0;
    double beta_per_volt_second = 20.0;
};

inline void validate_memristor(const MemristorParams& p) {
    validate_pair(p.pair);
    if (!(p.v_threshold_v > 0.0)) throw std::invalid_argument("device.v_threshold_v: must be > 0");
    if (!(p.beta_per_volt_second > 0.0)) {
        throw std::invalid_argument("device.beta_per_volt_second: must be > 0");
    }
}

struct MemristorState {
    double x = 0.0;  // dimensionless, clamped to [0,1]
};

// ============================================================================
// Model equations
// ============================================================================

/// Derivative-sign update: r_on while the drive rises, r_off while it falls,
/// held on an exact-zero derivative.
[[nodiscard]] inline Type1State type1_update(Type1State state, double v_dot) noexcept {
    if (v_dot > 0.0) {
        state.resistance_ohm = state.pair.r_on_ohm;
    } else if (v_dot < 0.0) {
        state.resistance_ohm = state.pair.r_off_ohm;
    }
    return state;
}

/// Pure function of the instantaneous control voltage. Exact equality with
/// the threshold returns r_below (fixed convention for the measure-zero case).
[[nodiscard]] inline double type2_memristance(double v_control, const Type2Params& p) noexcept {
    return std::abs(v_control) > p.threshold_v ? p.r_above_ohm : p.r_below_ohm;
}

/// dx/dt of the threshold model: sign(v) * beta * (|v| - v_threshold) above
/// threshold, exactly zero below. The integrator clamps x to [0,1].
[[nodiscard]] inline double memristor_rate(double /*x*/, double v,
                                           const MemristorParams& p) noexcept {
    const double mag = std::abs(v);
    if (mag <= p.v_threshold_v) return 0.0;
    const double sign = v > 0.0 ? 1.0 : -1.0;
    return sign * p.beta_per_volt_second * (mag - p.v_threshold_v);
}

/// R(x) = r_off + (r_on - r_off) * x; exact at both endpoints.
[[nodiscard]] inline double memristor_resistance(double x, const MemristorParams& p) noexcept {
    return p.pair.r_off_ohm + (p.pair.r_on_ohm - p.pair.r_off_ohm) * x;
}

/// Ohmic readout shared by every model.
[[nodiscard]] inline double device_current(double v, double r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("device_current: resistance must be positive");
    }
    return v / r;
}

// ============================================================================
// Device model union used by the simulation engine
// ============================================================================

struct Type1Device {
    ResistancePair pair{};
    double initial_resistance_ohm = 1000.0;  // pristine high-resistance state
};

struct Type2Device {
    Type2Params params{};
    // Control-node voltage source; when absent the terminal voltage is used.
    std::optional<Waveform> control{};
};

struct MemristorDevice {
    MemristorParams params{};
    double initial_x = 0.0;
};

using DeviceModel = std::variant<Type1Device, Type2Device, MemristorDevice>;

enum class DeviceKind { type1, type2, memristor };

[[nodiscard]] inline DeviceKind device_kind(const DeviceModel& m) noexcept {
    if (std::holds_alternative<Type1Device>(m)) return DeviceKind::type1;
    if (std::holds_alternative<Type2Device>(m)) return DeviceKind::type2;
    return DeviceKind::memristor;
}

[[nodiscard]] inline std::string kind_name(DeviceKind k) {
    switch (k) {
        case DeviceKind::type1: return "type1";
        case DeviceKind::type2: return "type2";
        default: return "memristor";
    }
}

inline void validate_device(const DeviceModel& m) {
    if (const auto* d = std::get_if<Type1Device>(&m)) {
        validate_pair(d->pair);
        if (d->initial_resistance_ohm != d->pair.r_on_ohm &&
            d->initial_resistance_ohm != d->pair.r_off_ohm) {
            throw std::invalid_argument(
                "device.initial_resistance_ohm: must equal r_on_ohm or r_off_ohm");
        }
    } else if (const auto* d = std::get_if<Type2Device>(&m)) {
        validate_type2(d->params);
        if (d->control) validate_waveform(*d->control);
    } else {
        const auto& mem = std::get<MemristorDevice>(m);
        validate_memristor(mem.params);
        if (!(mem.initial_x >= 0.0 && mem.initial_x <= 1.0)) {
            throw std::invalid_argument("device.x0: must be in [0,1]");
        }
    }
}

/// Distance between the two resistance levels; used as the jump-detection
/// scale for switching-event analysis.
[[nodiscard]] inline double resistance_gap(const DeviceModel& m) {
    if (const auto* d = std::get_if<Type1Device>(&m)) {
        return d->pair.r_off_ohm - d->pair.r_on_ohm;
    }
    if (const auto* d = std::get_if<Type2Device>(&m)) {
        return std::abs(d->params.r_below_ohm - d->params.r_above_ohm);
    }
    const auto& d = std::get<MemristorDevice>(m);
    return d.params.pair.r_off_ohm - d.params.pair.r_on_ohm;
}

/// Midpoint between the rails, the crossing level for continuous traces.
[[nodiscard]] inline double resistance_midpoint(const MemristorParams& p) noexcept {
    return 0.5 * (p.pair.r_on_ohm + p.pair.r_off_ohm);
}

}  // namespace memsim
