#include "lfo/trace.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json_util.hpp"

namespace lfo {

namespace {

using jsonu::json;

// Shortest round-trip decimal form; re-parsing gives the identical double.
std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw MalformedFile(ctx + ": bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

}  // namespace

void write_trace_json(std::ostream& out, const Trajectory& traj) {
  json j;
  j["control_period"] = traj.control_period;
  j["joint_names"] = traj.joint_names;
  json samples = json::array();
  for (const auto& s : traj.samples) {
    json js;
    js["t"] = s.t;
    json q = json::array();
    for (int i = 0; i < s.q.size(); ++i) q.push_back(s.q[i]);
    js["q"] = q;
    js["ee_pose"] = jsonu::pose_json(s.ee_pose);
    js["effort"] = s.effort;
    js["task_index"] = s.task_index;
    if (s.event) js["event"] = *s.event;
    samples.push_back(js);
  }
  j["samples"] = samples;
  out << j.dump() << "\n";
}

Trajectory read_trace_json(std::istream& in) {
  const json j = jsonu::parse(in, "trace file");
  jsonu::expect_object(j, "trace file");
  jsonu::check_keys(j, {"control_period", "joint_names", "samples"}, {}, "trace file");

  Trajectory traj;
  traj.control_period = jsonu::get_number(j.at("control_period"), "control_period");
  for (const json& n : jsonu::expect_array(j.at("joint_names"), "joint_names"))
    traj.joint_names.push_back(jsonu::get_string(n, "joint_names"));
  for (const json& js : jsonu::expect_array(j.at("samples"), "samples")) {
    jsonu::expect_object(js, "sample");
    jsonu::check_keys(js, {"t", "q", "ee_pose", "effort", "task_index"}, {"event"}, "sample");
    TrajectorySample s;
    s.t = jsonu::get_number(js.at("t"), "sample.t");
    const json& q = jsonu::expect_array(js.at("q"), "sample.q");
    s.q.resize(q.size());
    for (size_t i = 0; i < q.size(); ++i) s.q[i] = jsonu::get_number(q[i], "sample.q");
    s.ee_pose = jsonu::get_pose(js.at("ee_pose"), "sample.ee_pose");
    s.effort = jsonu::get_number(js.at("effort"), "sample.effort");
    s.task_index = static_cast<int>(jsonu::get_number(js.at("task_index"), "sample.task_index"));
    if (js.contains("event")) s.event = jsonu::get_string(js.at("event"), "sample.event");
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

void write_trace_csv(std::ostream& out, const Trajectory& traj) {
  const int dof = traj.joint_names.empty() && !traj.samples.empty()
                      ? static_cast<int>(traj.samples.front().q.size())
                      : static_cast<int>(traj.joint_names.size());
  out << "t";
  for (int i = 0; i < dof; ++i) out << ",q" << i;
  out << ",px,py,pz,qw,qx,qy,qz,effort,task_index,event\n";
  for (const auto& s : traj.samples) {
    out << format_double(s.t);
    for (int i = 0; i < s.q.size(); ++i) out << "," << format_double(s.q[i]);
    const auto& p = s.ee_pose.position;
    const auto& o = s.ee_pose.orientation;
    out << "," << format_double(p.x()) << "," << format_double(p.y()) << ","
        << format_double(p.z());
    out << "," << format_double(o.w()) << "," << format_double(o.x()) << ","
        << format_double(o.y()) << "," << format_double(o.z());
    out << "," << format_double(s.effort) << "," << s.task_index << ","
        << (s.event ? *s.event : "") << "\n";
  }
}

Trajectory read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedFile("trace csv: empty file");
  const auto header = split(line, ',');
  if (header.size() < 11 || header.front() != "t" || header.back() != "event")
    throw MalformedFile("trace csv: unexpected header");
  const int dof = static_cast<int>(header.size()) - 11;

  Trajectory traj;
  for (int i = 0; i < dof; ++i) traj.joint_names.push_back(header[1 + i]);
  size_t row = 0;
  double prev_t = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string ctx = "trace csv row " + std::to_string(row);
    if (fields.size() != header.size()) throw MalformedFile(ctx + ": wrong field count");
    TrajectorySample s;
    int col = 0;
    s.t = parse_double(fields[col++], ctx);
    s.q.resize(dof);
    for (int i = 0; i < dof; ++i) s.q[i] = parse_double(fields[col++], ctx);
    for (int i = 0; i < 3; ++i) s.ee_pose.position[i] = parse_double(fields[col++], ctx);
    const double w = parse_double(fields[col++], ctx);
    const double x = parse_double(fields[col++], ctx);
    const double y = parse_double(fields[col++], ctx);
    const double z = parse_double(fields[col++], ctx);
    s.ee_pose.orientation = Eigen::Quaterniond(w, x, y, z);
    s.effort = parse_double(fields[col++], ctx);
    s.task_index = static_cast<int>(parse_double(fields[col++], ctx));
    if (!fields[col].empty()) s.event = fields[col];
    if (row > 0 && s.t <= prev_t) throw MalformedFile(ctx + ": time not increasing");
    prev_t = s.t;
    traj.samples.push_back(std::move(s));
    ++row;
  }
  // The CSV header names the joints q0..qN, so the loaded names are
  // positional, not the robot's.
  return traj;
}

void write_trace_file(const std::string& path, const Trajectory& traj, const std::string& format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open trace file '" + path + "' for writing");
  if (format == "csv")
    write_trace_csv(out, traj);
  else if (format == "json")
    write_trace_json(out, traj);
  else
    throw Error("unknown trace format '" + format + "' (expected json or csv)");
}

Trajectory read_trace_file(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open trace file '" + path + "'");
  if (format == "csv") return read_trace_csv(in);
  if (format == "json") return read_trace_json(in);
  throw Error("unknown trace format '" + format + "' (expected json or csv)");
}

}  // namespace lfo
