#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "memsim/analysis.hpp"

using namespace memsim;
using namespace memsim::test;

namespace {

constexpr double kPi = std::numbers::pi;

Trace synthetic_loop(int n, double v_amp, double i_amp, double v_offset) {
    Trace tr;
    tr.sample_spacing_s = 1.0 / n;
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * k / n;
        tr.times.push_back(k * tr.sample_spacing_s);
        tr.voltage.push_back(v_offset + v_amp * std::cos(th));
        tr.current.push_back(i_amp * std::sin(th));
        tr.v_dot.push_back(0.0);
        tr.resistance.push_back(1.0);
    }
    return tr;
}

Trace rotate_loop(const Trace& tr, std::size_t shift) {
    Trace out = tr;
    auto rot = [&](std::vector<double>& v) {
        std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(shift), v.end());
    };
    rot(out.voltage);
    rot(out.current);
    rot(out.resistance);
    return out;
}

/// Exact steady orbit of the threshold model under the 2 V sine: the rate law
/// integrates in closed form between threshold crossings and clamp events, so
/// the lobe areas can be computed by quadrature of an analytic integrand,
/// fully independent of the simulation path.
struct ExactMemristorOrbit {
    double beta;
    double t_on = std::asin(0.5) / (2.0 * kPi);  // 1/12, first crossing of +1 V
    double t_sat;                                // x reaches 1

    explicit ExactMemristorOrbit(double beta_per_vs) : beta(beta_per_vs) {
        // solve integral(2 sin - 1) from t_on == 1/beta by bisection
        auto g = [&](double t) {
            return (-std::cos(2.0 * kPi * t) / kPi - t) -
                   (-std::cos(2.0 * kPi * t_on) / kPi - t_on) - 1.0 / beta;
        };
        double lo = t_on, hi = 5.0 / 12.0;
        REQUIRE(g(hi) > 0.0);  // the drive must be strong enough to saturate
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? hi : lo) = mid;
        }
        t_sat = 0.5 * (lo + hi);
    }

    [[nodiscard]] double x(double t) const {
        t -= std::floor(t);
        if (t < t_on) return 0.0;
        if (t < t_sat) {
            return beta * ((-std::cos(2.0 * kPi * t) / kPi - t) -
                           (-std::cos(2.0 * kPi * t_on) / kPi - t_on));
        }
        if (t < 0.5 + t_on) return 1.0;  // clamped until the drive crosses -1 V
        if (t < 0.5 + t_sat) return 1.0 - x(t - 0.5);
        return 0.0;
    }

    [[nodiscard]] double lobe_area(double t0, double t1) const {
        // |integral of I dV| by Simpson quadrature
        const int n = 200000;
        const double h = (t1 - t0) / n;
        auto f = [&](double t) {
            const double v = 2.0 * std::sin(2.0 * kPi * t);
            const double vd = 4.0 * kPi * std::cos(2.0 * kPi * t);
            const double r = 1000.0 - 900.0 * x(t);
            return (v / r) * vd;
        };
        double sum = f(t0) + f(t1);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(t0 + i * h);
        return std::abs(sum * h / 3.0);
    }
};

}  // namespace

TEST_CASE("signed loop area of the threshold resistor vanishes") {
    for (double factor : {1.0, 10.0, 100.0}) {
        Waveform wf = drive_sine();
        wf.period_s /= factor;
        const Trace loop = steady_loop(type2(), wf);
        const double scale = 2.0 * 0.02;  // max|V| * max|I|
        CHECK(std::abs(loop_area(loop)) < 1e-12 * scale);
        CHECK(hysteresis_area(loop) < 1e-12 * scale);
    }
}

TEST_CASE("loop area rejects a trace that does not close") {
    // a quarter period leaves the drive at its +2 V peak
    const Trace tr = simulate(type1(), drive_sine(), config_periods(0.25, 1.0, 2000));
    CHECK_THROWS_WITH(loop_area(tr), Catch::Contains("not closed"));
}

TEST_CASE("signed loop area is invariant under cyclic rotation") {
    const Trace base = synthetic_loop(1024, 2.0, 0.02, 0.0);
    const double a0 = loop_area(base);
    CHECK(a0 == Approx(kPi * 2.0 * 0.02).epsilon(1e-4));  // ellipse area pi*a*b
    std::mt19937 gen(3);
    std::uniform_int_distribution<std::size_t> shift(1, 1023);
    for (int i = 0; i < 16; ++i) {
        CHECK(loop_area(rotate_loop(base, shift(gen))) == Approx(a0).epsilon(1e-12));
    }
}

TEST_CASE("derivative-sign model lobe area matches the closed form") {
    // out along V/R_on, back along V/R_off in each half:
    // total enclosed area = A^2 (1/R_on - 1/R_off)
    const Trace loop = steady_loop(type1(), drive_sine());
    const double expected = 2.0 * 2.0 * (1.0 / 100.0 - 1.0 / 1000.0);
    CHECK(hysteresis_area(loop) == Approx(expected).epsilon(1e-6));
    // the two lobes have opposite orientation, so the signed sum cancels
    CHECK(std::abs(loop_area(loop)) < 1e-9 * expected);
}

TEST_CASE("memristor lobe area agrees with the exact-orbit quadrature oracle") {
    const ExactMemristorOrbit oracle(20.0);
    const double expected = oracle.lobe_area(0.0, 0.5) + oracle.lobe_area(0.5, 1.0);

    const Trace loop = steady_loop(memristor(), drive_sine());
    CHECK(hysteresis_area(loop) == Approx(expected).epsilon(0.02));
    CHECK(expected > 1e-3);  // sanity: the slow loop has macroscopic area
}

TEST_CASE("memristor lobe area is non-increasing over two decades") {
    const auto entries = sweep_frequencies(memristor(), drive_sine(), {1.0, 10.0, 100.0});
    const double a1 = hysteresis_area(entries[0].steady);
    const double a10 = hysteresis_area(entries[1].steady);
    const double a100 = hysteresis_area(entries[2].steady);
    CHECK(a1 > a10);
    CHECK(a10 > a100);
    CHECK(a100 < 0.1 * a1);
}

TEST_CASE("pinch check accepts model loops and rejects offset fixtures") {
    CHECK(pinch_check(steady_loop(type1(), drive_sine(), 4000)));
    CHECK(pinch_check(steady_loop(type2(), drive_sine(), 4000)));
    CHECK(pinch_check(steady_loop(memristor(), drive_sine(), 4000)));
    CHECK_FALSE(pinch_check(synthetic_loop(1024, 0.5, 0.01, 1.0)));  // loop offset to +1 V
}

TEST_CASE("switching events of the derivative-sign model under the compound drive") {
    const Trace loop = steady_loop(type1(), drive_compound());
    const auto events = detect_switching_events(loop, 900.0);
    CHECK(events.size() == 20);  // one per derivative sign change
}

TEST_CASE("memristor motion begins at the first threshold crossing") {
    const Trace tr = simulate(memristor(), drive_sine(), config_periods(1.0));
    const auto onset = first_change_time(tr);
    REQUIRE(onset.has_value());
    CHECK(std::abs(*onset - 1.0 / 12.0) <= 2.0 * (1.0 / 20000.0));
}

TEST_CASE("first_change_time is empty for a frozen trace") {
    const Trace tr = simulate(memristor(), make_sine(0.5, 1.0), config_periods(1.0, 1.0, 2000));
    CHECK_FALSE(first_change_time(tr).has_value());
}

TEST_CASE("memristor crosses the midpoint twice per period under both drives") {
    for (const Waveform& wf : {drive_sine(), drive_compound()}) {
        const Trace loop = steady_loop(memristor(), wf);
        CHECK(detect_midpoint_crossings(loop, 550.0).size() == 2);
    }
}

TEST_CASE("threshold resistor shows a resistance period of half the drive period") {
    const Trace loop = steady_loop(type2(), drive_sine());
    const auto period = estimate_resistance_period(loop, 1.0);
    REQUIRE(period.has_value());
    CHECK(*period == 0.5);  // exact on the sample grid
}

TEST_CASE("derivative-sign model resistance period equals the drive period") {
    const Trace loop = steady_loop(type1(), drive_sine());
    const auto period = estimate_resistance_period(loop, 1.0);
    REQUIRE(period.has_value());
    CHECK(*period == 1.0);
}

TEST_CASE("memristor resistance period equals the drive period") {
    const Trace loop = steady_loop(memristor(), drive_sine());
    const auto period = estimate_resistance_period(loop, 1.0);
    REQUIRE(period.has_value());
    CHECK(*period == 1.0);
}

TEST_CASE("resistance period of a constant trace is reported as undefined") {
    const Trace tr = steady_loop(memristor(), make_sine(0.5, 1.0), 4000);
    CHECK_FALSE(estimate_resistance_period(tr, 1.0).has_value());
}

TEST_CASE("classifier reproduces the three verdicts end to end") {
    struct Case {
        DeviceModel dev;
        MemoryLabel expected;
    };
    const Case cases[] = {
        {type1(), MemoryLabel::frequency_independent_bistable},
        {type2(), MemoryLabel::nonlinear_resistor},
        {memristor(), MemoryLabel::memristive},
    };
    for (const auto& c : cases) {
        const auto entries = sweep_frequencies(c.dev, drive_sine(), {1.0, 10.0, 100.0});
        const auto verdict = classify(summarize_sweep(c.dev, entries));
        CHECK(label_name(verdict.label) == label_name(c.expected));
        CHECK_FALSE(verdict.evidence.empty());
    }
}

TEST_CASE("classifier is invariant to sweep ordering") {
    const auto entries = sweep_frequencies(memristor(), drive_sine(), {1.0, 10.0, 100.0});
    auto summaries = summarize_sweep(memristor(), entries);
    const auto a = classify(summaries);
    std::reverse(summaries.begin(), summaries.end());
    const auto b = classify(summaries);
    CHECK(label_name(a.label) == label_name(b.label));
    REQUIRE(a.evidence.size() == b.evidence.size());
    for (std::size_t i = 0; i < a.evidence.size(); ++i) {
        CHECK(a.evidence[i].criterion == b.evidence[i].criterion);
        CHECK(a.evidence[i].value == b.evidence[i].value);
    }
}

TEST_CASE("classifier rejects an insufficient sweep") {
    auto make_summary = [](double f, double area) {
        LoopSummary s;
        s.frequency_factor = f;
        s.hysteresis_area_va = area;
        s.pinched = true;
        return s;
    };
    CHECK_THROWS_WITH(classify({make_summary(1, 1e-3), make_summary(100, 1e-4)}),
                      Catch::Contains("3 frequency factors"));
    CHECK_THROWS_WITH(
        classify({make_summary(1, 1e-3), make_summary(5, 5e-4), make_summary(10, 1e-4)}),
        Catch::Contains("two decades"));
}

TEST_CASE("classifier flags a sweep that fits no rule as inconclusive") {
    auto make_summary = [](double f, double area) {
        LoopSummary s;
        s.frequency_factor = f;
        s.hysteresis_area_va = area;
        s.pinched = true;
        return s;
    };
    // closing, but only to 50%: too spread for bistable, too open for memristive
    const auto verdict =
        classify({make_summary(1, 1e-3), make_summary(10, 8e-4), make_summary(100, 5e-4)});
    const bool flagged = std::any_of(verdict.evidence.begin(), verdict.evidence.end(),
                                     [](const Evidence& e) {
                                         return e.criterion.find("inconclusive") != std::string::npos;
                                     });
    CHECK(flagged);
    CHECK(label_name(verdict.label) == "memristive");  // nearest rule: closure 5.0 vs spread 50
}

TEST_CASE("loop summaries carry per-model event counts") {
    const auto e1 = sweep_frequencies(type1(), drive_sine(), {1.0}, SweepOptions{3, 4000, 1});
    CHECK(summarize_loop(type1(), e1[0]).n_switch_events == 2);
    const auto e2 = sweep_frequencies(type2(), drive_sine(), {1.0}, SweepOptions{3, 4000, 1});
    CHECK(summarize_loop(type2(), e2[0]).n_switch_events == 4);
    const auto em = sweep_frequencies(memristor(), drive_sine(), {1.0}, SweepOptions{3, 4000, 1});
    CHECK(summarize_loop(memristor(), em[0]).n_switch_events == 2);
}
