#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace lfo::cli {

struct CliConfig {
  std::string robot_path;
  std::string demo_path;
  std::string env_path;
  std::string trace_path;
  std::string format = "json";
  std::optional<double> control_period;
  std::optional<std::string> laban_strength;
  std::optional<double> margin;
};

// Exit codes: 0 success, 1 input/validation errors, 2 IK failure,
// 3 no surface hit during placing. Summaries go to `out`, diagnostics to `err`.
int cmd_execute(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lfo::cli
