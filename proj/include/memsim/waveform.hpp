#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace memsim {

enum class WaveformKind { sine, compound };

/// Analytic periodic voltage source with an exact time derivative.
///
/// The compound kind superimposes a faster ripple whose period is
/// ripple_period_fraction * period_s. The reciprocal of the fraction must be
/// an integer so the composite signal is exactly period_s-periodic.
struct Waveform {
    WaveformKind kind = WaveformKind::sine;
    double amplitude_v = 2.0;
    double period_s = 1.0;
    double ripple_amplitude_v = 0.0;      // compound only
    double ripple_period_fraction = 0.0;  // compound only, in (0,1)
};

inline void validate_waveform(const Waveform& w) {
    if (!(w.amplitude_v >= 0.0)) {
        throw std::invalid_argument("waveform.amplitude_v: must be >= 0");
    }
    if (!(w.period_s > 0.0)) {
        throw std::invalid_argument("waveform.period_s: must be > 0");
    }
    if (w.kind == WaveformKind::compound) {
        if (!(w.ripple_amplitude_v >= 0.0)) {
            throw std::invalid_argument("waveform.ripple_amplitude_v: must be >= 0");
        }
        if (!(w.ripple_period_fraction > 0.0 && w.ripple_period_fraction < 1.0)) {
            throw std::invalid_argument("waveform.ripple_period_fraction: must be in (0,1)");
        }
        const double cycles = 1.0 / w.ripple_period_fraction;
        if (std::abs(cycles - std::round(cycles)) > 1e-9) {
            throw std::invalid_argument(
                "waveform.ripple_period_fraction: reciprocal must be an integer "
                "so the compound signal stays period_s-periodic");
        }
    } else if (w.ripple_amplitude_v != 0.0 || w.ripple_period_fraction != 0.0) {
        throw std::invalid_argument("waveform: ripple fields are only valid for kind=compound");
    }
}

inline Waveform make_sine(double amplitude_v, double period_s) {
    Waveform w{WaveformKind::sine, amplitude_v, period_s, 0.0, 0.0};
    validate_waveform(w);
    return w;
}

inline Waveform make_compound(double amplitude_v, double period_s,
                              double ripple_amplitude_v, double ripple_period_fraction) {
    Waveform w{WaveformKind::compound, amplitude_v, period_s,
               ripple_amplitude_v, ripple_period_fraction};
    validate_waveform(w);
    return w;
}

/// Value at normalized phase u = t / period_s. Evaluating through the phase
/// rather than absolute time keeps periodic sample grids bit-identical
/// across frequency-scaled runs.
[[nodiscard]] inline double value_at_phase(const Waveform& w, double u) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double v = w.amplitude_v * std::sin(two_pi * u);
    if (w.kind == WaveformKind::compound) {
        v += w.ripple_amplitude_v * std::sin(two_pi * u / w.ripple_period_fraction);
    }
    return v;
}

/// dV/du at normalized phase; divide by period_s to get dV/dt.
[[nodiscard]] inline double slope_at_phase(const Waveform& w, double u) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double s = w.amplitude_v * std::cos(two_pi * u);
    if (w.kind == WaveformKind::compound) {
        s += (w.ripple_amplitude_v / w.ripple_period_fraction) *
             std::cos(two_pi * u / w.ripple_period_fraction);
    }
    return two_pi * s;
}

[[nodiscard]] inline double eval(const Waveform& w, double t) {
    return value_at_phase(w, t / w.period_s);
}

[[nodiscard]] inline double eval_derivative(const Waveform& w, double t) {
    return slope_at_phase(w, t / w.period_s) / w.period_s;
}

/// Times in [0, period_s) where dV/dt changes sign, i.e. the drive extrema.
/// Roots are bracketed on a 4096-point grid (well above Nyquist for the
/// fastest ripple supported here) and bisected to 1e-12 * period_s.
[[nodiscard]] inline std::vector<double> derivative_sign_changes(const Waveform& w) {
    validate_waveform(w);
    constexpr int kGridPoints = 4096;
    const double tol_u = 1e-12;

    std::vector<double> roots_u;
    double prev_u = 0.0;
    double prev_s = slope_at_phase(w, prev_u);
    for (int i = 1; i <= kGridPoints; ++i) {
        const double u = static_cast<double>(i) / kGridPoints;
        const double s = slope_at_phase(w, u);
        if (prev_s == 0.0) {
            roots_u.push_back(prev_u);
        } else if (s != 0.0 && ((prev_s > 0.0) != (s > 0.0))) {
            double lo = prev_u, hi = u;
            double slo = prev_s;
            while (hi - lo > tol_u) {
                const double mid = 0.5 * (lo + hi);
                const double smid = slope_at_phase(w, mid);
                if (smid == 0.0 || ((slo > 0.0) != (smid > 0.0))) {
                    hi = mid;
                } else {
                    lo = mid;
                    slo = smid;
                }
            }
            roots_u.push_back(0.5 * (lo + hi));
        }
        prev_u = u;
        prev_s = s;
    }

    std::vector<double> times;
    times.reserve(roots_u.size());
    for (double u : roots_u) {
        if (u >= 0.0 && u < 1.0) times.push_back(u * w.period_s);
    }
    return times;
}

}  // namespace memsim
