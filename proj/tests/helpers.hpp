#pragma once

// Shared fixtures: the demonstration parameter set (100 ohm / 1 kohm rails,
// 1 V threshold, 2 V sine drive with T = 1 s) used across the test suites.

#include "memsim/device_models.hpp"
#include "memsim/sim_engine.hpp"

namespace memsim::test {

inline DeviceModel type1() { return Type1Device{}; }
inline DeviceModel type2() { return Type2Device{}; }
inline DeviceModel memristor() { return MemristorDevice{}; }

inline Waveform drive_sine() { return make_sine(2.0, 1.0); }
inline Waveform drive_compound() { return make_compound(2.0, 1.0, 0.3, 0.1); }

inline SimConfig config_periods(double periods, double period_s = 1.0,
                                std::int64_t samples_per_period = 20000) {
    SimConfig cfg;
    cfg.dt_s = period_s / static_cast<double>(samples_per_period);
    cfg.t_end_s = periods * period_s;
    cfg.record_stride = 1;
    return cfg;
}

inline Trace steady_loop(const DeviceModel& dev, const Waveform& wf,
                         std::int64_t samples_per_period = 20000) {
    SimConfig cfg = config_periods(3.0, wf.period_s, samples_per_period);
    return steady_state_period(simulate(dev, wf, cfg), wf.period_s);
}

}  // namespace memsim::test
