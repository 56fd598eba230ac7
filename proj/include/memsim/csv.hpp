#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "memsim/sim_engine.hpp"

namespace memsim {

/// Shortest decimal form that round-trips the exact double value.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Writes a trace as CSV with columns t,V,Vdot,R,I[,x].
inline void write_trace_csv(const std::string& path, const Trace& tr) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (tr.has_state() ? "t,V,Vdot,R,I,x\n" : "t,V,Vdot,R,I\n");
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out << format_double(tr.times[i]) << ',' << format_double(tr.voltage[i]) << ','
            << format_double(tr.v_dot[i]) << ',' << format_double(tr.resistance[i]) << ','
            << format_double(tr.current[i]);
        if (tr.has_state()) out << ',' << format_double(tr.state_x[i]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

/// Writes the (V, I) projection of a steady-state loop.
inline void write_loop_csv(const std::string& path, const Trace& tr) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "V,I\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        out << format_double(tr.voltage[i]) << ',' << format_double(tr.current[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}
}  // namespace detail

/// Reads a trace CSV written by write_trace_csv.
[[nodiscard]] inline Trace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    const bool with_state = line == "t,V,Vdot,R,I,x";
    if (!with_state && line != "t,V,Vdot,R,I") {
        throw std::runtime_error("unexpected CSV header in " + path + ": " + line);
    }
    Trace tr;
    const std::size_t n_cols = with_state ? 6 : 5;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != n_cols) {
            throw std::runtime_error("malformed CSV row in " + path + ": " + line);
        }
        tr.times.push_back(std::stod(fields[0]));
        tr.voltage.push_back(std::stod(fields[1]));
        tr.v_dot.push_back(std::stod(fields[2]));
        tr.resistance.push_back(std::stod(fields[3]));
        tr.current.push_back(std::stod(fields[4]));
        if (with_state) tr.state_x.push_back(std::stod(fields[5]));
    }
    if (tr.size() >= 2) tr.sample_spacing_s = tr.times[1] - tr.times[0];
    return tr;
}

}  // namespace memsim
