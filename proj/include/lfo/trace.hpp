#pragma once

#include <iosfwd>
#include <string>

#include "lfo/executor.hpp"

namespace lfo {

// Trace serialization. Both formats round-trip bit-exactly: doubles are
// written shortest-round-trip and re-parse to identical values.
void write_trace_json(std::ostream& out, const Trajectory& traj);
void write_trace_csv(std::ostream& out, const Trajectory& traj);
void write_trace_file(const std::string& path, const Trajectory& traj, const std::string& format);

Trajectory read_trace_json(std::istream& in);
Trajectory read_trace_csv(std::istream& in);
Trajectory read_trace_file(const std::string& path, const std::string& format);

}  // namespace lfo
