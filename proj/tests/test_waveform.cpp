#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "memsim/waveform.hpp"

using namespace memsim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sine evaluation") {
    const Waveform w = make_sine(2.0, 1.0);
    CHECK(eval(w, 0.0) == Approx(0.0).margin(1e-15));
    CHECK(eval(w, 0.25) == Approx(2.0));
    CHECK(eval(w, 0.75) == Approx(-2.0));
}

TEST_CASE("compound evaluation") {
    const Waveform w = make_compound(2.0, 1.0, 0.3, 0.1);
    // at the main peak the ripple term is sin(5*pi) = 0
    CHECK(eval(w, 0.25) == Approx(2.0).margin(1e-12));
    CHECK(eval(w, 0.0) == Approx(0.0).margin(1e-15));
}

TEST_CASE("analytic derivative values") {
    const Waveform sine = make_sine(2.0, 1.0);
    CHECK(eval_derivative(sine, 0.0) == Approx(4.0 * kPi));
    CHECK(eval_derivative(sine, 0.25) == Approx(0.0).margin(1e-12));

    const Waveform comp = make_compound(2.0, 1.0, 0.3, 0.1);
    CHECK(eval_derivative(comp, 0.0) == Approx(10.0 * kPi));
}

TEST_CASE("analytic derivative matches central differences to second order") {
    // truncation bound: |V''' |_max / 6 * h^2, with margin for the neglected
    // higher orders; h is large enough that roundoff is negligible.
    struct Case {
        Waveform w;
        double third_deriv_max;
    };
    const Case cases[] = {
        {make_sine(2.0, 1.0), 2.0 * std::pow(2.0 * kPi, 3)},
        {make_compound(2.0, 1.0, 0.3, 0.1),
         2.0 * std::pow(2.0 * kPi, 3) + 0.3 * std::pow(20.0 * kPi, 3)},
    };
    const double h = 1e-3;
    for (const auto& c : cases) {
        double worst = 0.0;
        for (int i = 0; i < 1024; ++i) {
            const double t = (i + 0.5) / 1024.0;
            const double central = (eval(c.w, t + h) - eval(c.w, t - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(eval_derivative(c.w, t) - central));
        }
        CHECK(worst <= 1.5 * c.third_deriv_max / 6.0 * h * h);
    }
}

TEST_CASE("periodicity to machine precision") {
    for (const Waveform& w :
         {make_sine(2.0, 1.0), make_sine(1.0, 2.0), make_compound(2.0, 1.0, 0.3, 0.1)}) {
        for (int i = 0; i < 257; ++i) {
            const double t = 0.37 * i * w.period_s / 257.0;
            REQUIRE(eval(w, t + w.period_s) == Approx(eval(w, t)).margin(1e-12 * w.amplitude_v));
        }
    }
}

TEST_CASE("pure sine is odd around the half period") {
    const Waveform w = make_sine(2.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = i / 100.0 * 0.5;
        REQUIRE(eval(w, 0.5 + t) == Approx(-eval(w, t)).margin(1e-12));
    }
}

TEST_CASE("phase-based evaluation agrees with time-based evaluation") {
    const Waveform w = make_compound(2.0, 1.0, 0.3, 0.1);
    for (int i = 0; i <= 64; ++i) {
        const double u = i / 64.0;
        REQUIRE(value_at_phase(w, u) == Approx(eval(w, u * w.period_s)).margin(1e-12));
        REQUIRE(slope_at_phase(w, u) / w.period_s ==
                Approx(eval_derivative(w, u * w.period_s)).margin(1e-9));
    }
}

TEST_CASE("derivative sign changes of the pure sine sit at the extrema") {
    const auto roots = derivative_sign_changes(make_sine(2.0, 1.0));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == Approx(0.25).margin(1e-9));
    CHECK(roots[1] == Approx(0.75).margin(1e-9));

    const auto slow = derivative_sign_changes(make_sine(1.0, 2.0));
    REQUIRE(slow.size() == 2);
    CHECK(slow[0] == Approx(0.5).margin(1e-9));
    CHECK(slow[1] == Approx(1.5).margin(1e-9));
}

TEST_CASE("compound drive has twenty derivative sign changes per period") {
    // independent oracle: count roots of 4*pi*cos(2*pi*t) + 6*pi*cos(20*pi*t)
    // by dense sampling and bisection, without going through the waveform API
    auto g = [](double t) {
        return 4.0 * kPi * std::cos(2.0 * kPi * t) + 6.0 * kPi * std::cos(20.0 * kPi * t);
    };
    int oracle_count = 0;
    std::vector<double> oracle_roots;
    const int n = 20000;
    double prev = g(0.0);
    for (int i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const double cur = g(t);
        if ((prev > 0.0) != (cur > 0.0)) {
            ++oracle_count;
            double lo = (i - 1.0) / n, hi = t, glo = prev;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((glo > 0.0) != (g(mid) > 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = g(mid);
                }
            }
            oracle_roots.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    REQUIRE(oracle_count == 20);

    const auto roots = derivative_sign_changes(make_compound(2.0, 1.0, 0.3, 0.1));
    REQUIRE(roots.size() == 20);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        REQUIRE(roots[i] == Approx(oracle_roots[i]).margin(1e-9));
    }
}

TEST_CASE("waveform validation") {
    CHECK_THROWS_AS(make_sine(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_sine(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_compound(2.0, 1.0, 0.3, 0.3), std::invalid_argument);  // 1/0.3 not whole
    CHECK_THROWS_AS(make_compound(2.0, 1.0, 0.3, 1.5), std::invalid_argument);
    CHECK_NOTHROW(make_compound(2.0, 1.0, 0.3, 0.25));
    CHECK_NOTHROW(make_sine(0.0, 1.0));  // degenerate zero-amplitude drive is allowed

    Waveform bad = make_sine(2.0, 1.0);
    bad.ripple_amplitude_v = 0.1;
    CHECK_THROWS_AS(validate_waveform(bad), std::invalid_argument);
}
