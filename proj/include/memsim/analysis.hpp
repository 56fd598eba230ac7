#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memsim/device_models.hpp"
#include "memsim/sim_engine.hpp"

namespace memsim {

// ============================================================================
// Loop geometry
// ============================================================================

namespace detail {

/// Shoelace sum over the sample polygon [first, last), closing last -> first.
inline double polygon_area(const Trace& tr, std::size_t first, std::size_t last) {
    if (last - first < 3) return 0.0;
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        const std::size_t j = (i + 1 == last) ? first : i + 1;
        sum += tr.voltage[i] * tr.current[j] - tr.voltage[j] * tr.current[i];
    }
    return 0.5 * sum;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

/// Signed area of the closed (V, I) sample polygon, last point joined to the
/// first. For a trajectory that is point-symmetric through the origin the two
/// pinched-loop lobes cancel here; use hysteresis_area for the lobe magnitude.
[[nodiscard]] inline double loop_area(const Trace& tr) {
    if (tr.size() < 3) throw std::invalid_argument("loop_area: trace too short");
    const double v_scale = detail::max_abs(tr.voltage);
    // The closing edge may legitimately span one sample step (the polygon is
    // closed under cyclic rotation), but not a macroscopic voltage gap.
    double max_step = 0.0;
    for (std::size_t i = 1; i < tr.size(); ++i) {
        max_step = std::max(max_step, std::abs(tr.voltage[i] - tr.voltage[i - 1]));
    }
    const double tol = std::max(1e-6 * v_scale, 2.0 * max_step) + 1e-12;
    if (std::abs(tr.voltage.back() - tr.voltage.front()) > tol) {
        throw std::invalid_argument("loop_area: trace is not closed over one period");
    }
    return detail::polygon_area(tr, 0, tr.size());
}

/// Total unsigned area enclosed by the pinched loop: the closed polygon is
/// split into sub-loops at drive zero crossings (where the trajectory passes
/// the origin) and the absolute sub-loop areas are summed. Zero for any
/// single-valued I(V) trace; invariant to lobe orientation.
[[nodiscard]] inline double hysteresis_area(const Trace& tr) {
    if (tr.size() < 3) throw std::invalid_argument("hysteresis_area: trace too short");
    const std::size_t n = tr.size();
    double total = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        const bool boundary =
            i == n || tr.voltage[i] == 0.0 || (tr.voltage[i] * tr.voltage[i - 1] < 0.0);
        if (boundary) {
            total += std::abs(detail::polygon_area(tr, start, i));
            start = i;
        }
    }
    return total;
}

/// True when the (V, I) trajectory passes within 1e-3 of the origin in
/// per-trace normalized coordinates.
[[nodiscard]] inline bool pinch_check(const Trace& tr) {
    if (tr.size() == 0) return false;
    const double v_scale = detail::max_abs(tr.voltage);
    const double i_scale = detail::max_abs(tr.current);
    if (v_scale == 0.0 || i_scale == 0.0) return true;  // degenerate: sits at the origin
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double nv = tr.voltage[i] / v_scale;
        const double ni = tr.current[i] / i_scale;
        min_dist = std::min(min_dist, std::sqrt(nv * nv + ni * ni));
    }
    return min_dist <= 1e-3;
}

// ============================================================================
// Switching events
// ============================================================================

/// Jump detector for piecewise-constant resistance traces: an event is the
/// first sample of each level change, flagged when |R_{k} - R_{k-1}| exceeds
/// half the level gap.
[[nodiscard]] inline std::vector<double> detect_switching_events(const Trace& tr,
                                                                 double level_gap_ohm) {
    if (!(level_gap_ohm > 0.0)) {
        throw std::invalid_argument("detect_switching_events: level_gap must be > 0");
    }
    std::vector<double> events;
    for (std::size_t i = 1; i < tr.size(); ++i) {
        if (std::abs(tr.resistance[i] - tr.resistance[i - 1]) > 0.5 * level_gap_ohm) {
            events.push_back(tr.times[i]);
        }
    }
    return events;
}

/// Event rule for continuous resistance traces: the first sample at which the
/// trace reaches the far side of the midpoint level. The resistance of the
/// threshold model is monotone within each drive half-cycle, so this marks
/// each excursion at most once.
[[nodiscard]] inline std::vector<double> detect_midpoint_crossings(const Trace& tr,
                                                                   double midpoint_ohm) {
    std::vector<double> events;
    for (std::size_t i = 1; i < tr.size(); ++i) {
        const double a = tr.resistance[i - 1] - midpoint_ohm;
        const double b = tr.resistance[i] - midpoint_ohm;
        if (a * b < 0.0 || (b == 0.0 && a != 0.0)) {
            events.push_back(tr.times[i]);
        }
    }
    return events;
}

/// Time of the first resistance change, if any. Below-threshold dynamics are
/// exactly frozen, so bit inequality is the right test.
[[nodiscard]] inline std::optional<double> first_change_time(const Trace& tr) {
    for (std::size_t i = 1; i < tr.size(); ++i) {
        if (tr.resistance[i] != tr.resistance[i - 1]) return tr.times[i];
    }
    return std::nullopt;
}

// ============================================================================
// Resistance period estimation
// ============================================================================

/// Smallest tau among {T/8, T/6, T/4, T/2, T} such that the one-period
/// resistance trace matches itself under a circular shift by tau, within
/// 1e-6 of the trace's resistance range. Returns nullopt for a constant
/// trace (period undefined). Candidate shifts are rounded to the nearest
/// sample; the drive is T-periodic, so the steady-state resistance period
/// must divide T.
[[nodiscard]] inline std::optional<double> estimate_resistance_period(const Trace& tr,
                                                                      double period_s) {
    if (tr.size() < 3) throw std::invalid_argument("estimate_resistance_period: trace too short");
    const std::int64_t n = std::llround(period_s / tr.sample_spacing_s);
    if (n < 2 || static_cast<std::size_t>(n) > tr.size() - 1) {
        throw std::invalid_argument("estimate_resistance_period: trace must cover one period");
    }

    const auto [lo, hi] = std::minmax_element(tr.resistance.begin(), tr.resistance.end());
    const double range = *hi - *lo;
    if (range <= 1e-12 * std::max(std::abs(*hi), 1.0)) return std::nullopt;

    const double tol = 1e-6 * range;
    const double fractions[] = {1.0 / 8.0, 1.0 / 6.0, 1.0 / 4.0, 1.0 / 2.0, 1.0};
    for (double frac : fractions) {
        const std::int64_t shift = std::llround(frac * static_cast<double>(n));
        if (shift < 1) continue;
        double worst = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t j = (i + shift) % n;
            worst = std::max(worst, std::abs(tr.resistance[static_cast<std::size_t>(j)] -
                                             tr.resistance[static_cast<std::size_t>(i)]));
            if (worst > tol) break;
        }
        if (worst <= tol) return frac * period_s;
    }
    return period_s;
}

// ============================================================================
// Sweep summaries and classification
// ============================================================================

struct LoopSummary {
    double frequency_factor = 1.0;
    double signed_area_va = 0.0;
    double hysteresis_area_va = 0.0;
    bool pinched = false;
    int n_switch_events = 0;
};

[[nodiscard]] inline LoopSummary summarize_loop(const DeviceModel& device,
                                                const SweepEntry& entry) {
    LoopSummary s;
    s.frequency_factor = entry.factor;
    s.signed_area_va = loop_area(entry.steady);
    s.hysteresis_area_va = hysteresis_area(entry.steady);
    s.pinched = pinch_check(entry.steady);
    if (device_kind(device) == DeviceKind::memristor) {
        const auto& d = std::get<MemristorDevice>(device);
        s.n_switch_events = static_cast<int>(
            detect_midpoint_crossings(entry.steady, resistance_midpoint(d.params)).size());
    } else {
        s.n_switch_events = static_cast<int>(
            detect_switching_events(entry.steady, resistance_gap(device)).size());
    }
    return s;
}

[[nodiscard]] inline std::vector<LoopSummary> summarize_sweep(
    const DeviceModel& device, const std::vector<SweepEntry>& entries) {
    std::vector<LoopSummary> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(summarize_loop(device, e));
    return out;
}

enum class MemoryLabel { memristive, nonlinear_resistor, frequency_independent_bistable };

[[nodiscard]] inline std::string label_name(MemoryLabel label) {
    switch (label) {
        case MemoryLabel::memristive: return "memristive";
        case MemoryLabel::nonlinear_resistor: return "nonlinear_resistor";
        default: return "frequency_independent_bistable";
    }
}

struct Evidence {
    std::string criterion;
    double value = 0.0;
    double threshold = 0.0;
};

struct MemoryVerdict {
    MemoryLabel label = MemoryLabel::nonlinear_resistor;
    std::vector<Evidence> evidence;
};

/// Decision thresholds; the qualitative behaviors they quantize are far from
/// these boundaries at the default device parameters.
struct ClassifyThresholds {
    double negligible_area_va = 1e-9;  // ~7 orders below the V*I signal scale
    double bistable_spread = 0.01;
    double closure_ratio = 0.10;
};

/// Classifies a frequency sweep by its loop-area magnitudes:
///   (a) all areas negligible            -> nonlinear_resistor
///   (b) non-negligible, spread < 1%     -> frequency_independent_bistable
///   (c) closing (high/low < 10%), all
///       loops pinched                   -> memristive
/// Anything else gets the nearest rule with an "inconclusive" evidence entry.
/// The sweep must cover at least 3 factors spanning at least two decades.
[[nodiscard]] inline MemoryVerdict classify(std::vector<LoopSummary> sweep,
                                            const ClassifyThresholds& th = {}) {
    if (sweep.size() < 3) {
        throw std::invalid_argument("classify: sweep must cover at least 3 frequency factors");
    }
    std::sort(sweep.begin(), sweep.end(), [](const LoopSummary& a, const LoopSummary& b) {
        return a.frequency_factor < b.frequency_factor;
    });
    const double span = sweep.back().frequency_factor / sweep.front().frequency_factor;
    if (!(span >= 100.0 * (1.0 - 1e-9))) {
        throw std::invalid_argument("classify: sweep must span at least two decades");
    }

    double max_area = 0.0, min_area = std::numeric_limits<double>::infinity();
    bool all_pinched = true;
    bool non_increasing = true;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const double a = sweep[i].hysteresis_area_va;
        max_area = std::max(max_area, a);
        min_area = std::min(min_area, a);
        all_pinched = all_pinched && sweep[i].pinched;
        if (i > 0 && a > sweep[i - 1].hysteresis_area_va) non_increasing = false;
    }
    const double low_area = sweep.front().hysteresis_area_va;
    const double high_area = sweep.back().hysteresis_area_va;
    const double spread = max_area > 0.0 ? (max_area - min_area) / max_area : 0.0;
    const double closure = low_area > 0.0 ? high_area / low_area
                                          : std::numeric_limits<double>::infinity();

    MemoryVerdict verdict;
    verdict.evidence = {
        {"max_abs_loop_area_va", max_area, th.negligible_area_va},
        {"area_relative_spread", spread, th.bistable_spread},
        {"closure_ratio_high_over_low", closure, th.closure_ratio},
        {"all_loops_pinched", all_pinched ? 1.0 : 0.0, 1.0},
        {"area_non_increasing", non_increasing ? 1.0 : 0.0, 1.0},
    };

    if (max_area < th.negligible_area_va) {
        verdict.label = MemoryLabel::nonlinear_resistor;
        return verdict;
    }
    if (spread < th.bistable_spread) {
        verdict.label = MemoryLabel::frequency_independent_bistable;
        return verdict;
    }
    if (low_area > th.negligible_area_va && closure < th.closure_ratio && all_pinched) {
        verdict.label = MemoryLabel::memristive;
        return verdict;
    }

    // Nearest rule by smallest violation ratio, flagged inconclusive.
    const double viol_a = max_area / th.negligible_area_va;
    const double viol_b = spread / th.bistable_spread;
    const double viol_c = (all_pinched && low_area > th.negligible_area_va)
                              ? closure / th.closure_ratio
                              : std::numeric_limits<double>::infinity();
    double best = viol_a;
    verdict.label = MemoryLabel::nonlinear_resistor;
    if (viol_b < best) {
        best = viol_b;
        verdict.label = MemoryLabel::frequency_independent_bistable;
    }
    if (viol_c < best) {
        best = viol_c;
        verdict.label = MemoryLabel::memristive;
    }
    verdict.evidence.push_back({"inconclusive_nearest_rule_violation", best, 1.0});
    return verdict;
}

}  // namespace memsim
