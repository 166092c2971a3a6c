#include "lfo/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json_util.hpp"
#include "lfo/executor.hpp"
#include "lfo/taskir.hpp"
#include "lfo/taxonomy.hpp"
#include "lfo/trace.hpp"

namespace lfo::cli {

namespace {

TaskSequence load_demo_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFile("cannot open demonstration file '" + path + "'");
  return parse_task_sequence(in);
}

void print_report(const ValidationReport& report, std::ostream& out) {
  for (const auto& issue : report.issues) {
    out << "step " << issue.step_index;
    if (!issue.field.empty()) out << " " << issue.field;
    out << ": " << issue.message << "\n";
  }
}

}  // namespace

int cmd_execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RobotModel model = load_robot_file(cfg.robot_path);
    const TaskSequence demo = load_demo_file(cfg.demo_path);
    const Environment env = load_environment_file(cfg.env_path);

    ExecOptions opts;
    if (cfg.control_period) {
      if (*cfg.control_period <= 0.0) {
        err << "error: control period must be positive\n";
        return 1;
      }
      opts.control_period = *cfg.control_period;
    }
    if (cfg.laban_strength) {
      auto strength = laban::strength_from_string(*cfg.laban_strength);
      if (!strength) {
        err << "error: unknown laban strength '" << *cfg.laban_strength
            << "' (expected none, elbow or full)\n";
        return 1;
      }
      opts.laban_strength = *strength;
    }

    const ExecResult result = execute(model, to_robot_frame(demo), env, opts);

    if (!cfg.trace_path.empty())
      write_trace_file(cfg.trace_path, result.trajectory, cfg.format);

    out << "robot: " << model.name << " (" << model.dof() << " joints)\n";
    out << "tasks:";
    for (const auto& step : result.report.steps) out << " " << to_string(step.kind);
    out << "\n";
    int total_iters = 0;
    int total_waypoints = 0;
    for (const auto& step : result.report.steps) {
      total_iters += step.ik_iterations;
      total_waypoints += step.waypoints;
    }
    out << "ik: " << total_waypoints << " waypoints, " << total_iters << " iterations, "
        << result.report.laban_relaxations << " relaxations\n";
    out << "events: " << result.report.hit_events << " hit_detected\n";
    const auto violations =
        check_clearance(result.trajectory, env, cfg.margin.value_or(0.01));
    out << "clearance: " << violations.size() << " violation(s)\n";
    for (const auto& obj : result.report.final_objects) {
      const auto& p = obj.pose.position;
      out << "object " << obj.name << ": (" << p.x() << ", " << p.y() << ", " << p.z() << ")\n";
    }
    if (!cfg.trace_path.empty())
      out << "trace: " << cfg.trace_path << " (" << result.trajectory.samples.size()
          << " samples)\n";
    return 0;
  } catch (const IkFailure& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const skills::NoHitWithinTravel& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    load_demo_file(cfg.demo_path);
    out << "ok\n";
    return 0;
  } catch (const InvariantViolation& e) {
    print_report(e.report, out);
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_classify(std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    const auto j = jsonu::parse(std::string(std::istreambuf_iterator<char>(in), {}),
                                "normals");
    jsonu::expect_array(j, "normals");
    taxonomy::ContactModel contacts;
    for (size_t i = 0; i < j.size(); ++i)
      contacts.normals.push_back(jsonu::get_vec3(j[i], "normals[" + std::to_string(i) + "]"));
    const auto type = taxonomy::classify(taxonomy::feasible_cone(contacts));
    out << type.name << " (" << type.lineality_dim << "," << type.span_dim << ")\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lfo::cli
