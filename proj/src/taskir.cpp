#include "lfo/taskir.hpp"

#include <istream>
#include <sstream>

#include "json_util.hpp"

namespace lfo {

namespace {

using jsonu::json;

bool veq(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return (a.array() == b.array()).all();
}

bool veq(const std::optional<Eigen::Vector3d>& a, const std::optional<Eigen::Vector3d>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || veq(*a, *b);
}

std::string step_ctx(size_t index) { return "step " + std::to_string(index); }

laban::LabanPose parse_laban_pose(const json& j, const std::string& ctx) {
  jsonu::expect_object(j, ctx);
  jsonu::check_keys(j, {"upper", "lower"}, {}, ctx);
  laban::LabanPose pose;
  const std::string upper = jsonu::get_string(j.at("upper"), ctx + ".upper");
  const std::string lower = jsonu::get_string(j.at("lower"), ctx + ".lower");
  auto u = laban::direction_from_name(upper);
  if (!u) throw SchemaViolation(ctx + ".upper: unknown direction name '" + upper + "'");
  auto l = laban::direction_from_name(lower);
  if (!l) throw SchemaViolation(ctx + ".lower: unknown direction name '" + lower + "'");
  pose.upper = *u;
  pose.lower = *l;
  return pose;
}

json laban_pose_json(const laban::LabanPose& pose) {
  json j;
  j["upper"] = std::string(laban::direction_name(pose.upper));
  j["lower"] = std::string(laban::direction_name(pose.lower));
  return j;
}

TaskStep parse_step(const json& j, size_t index) {
  const std::string ctx = step_ctx(index);
  jsonu::expect_object(j, ctx);
  jsonu::check_keys(j, {"kind", "params"}, {"utterance"}, ctx);

  TaskStep step;
  const std::string kind = jsonu::get_string(j.at("kind"), ctx + ".kind");
  auto k = task_kind_from_string(kind);
  if (!k) throw SchemaViolation(ctx + ".kind: unknown task kind '" + kind + "'");
  step.kind = *k;
  if (j.contains("utterance")) step.utterance = jsonu::get_string(j.at("utterance"), ctx);

  const json& p = jsonu::expect_object(j.at("params"), ctx + ".params");
  const std::string pc = ctx + ".params";
  jsonu::check_keys(
      p, {"start_pose", "end_pose", "displacement", "via_points", "laban_start", "laban_end"},
      {"grasp_type", "approach_direction", "surface_normal", "object_upright_axis"}, pc);

  SkillParams& sp = step.params;
  sp.start_hand_pose = jsonu::get_pose(p.at("start_pose"), pc + ".start_pose");
  sp.end_hand_pose = jsonu::get_pose(p.at("end_pose"), pc + ".end_pose");
  sp.displacement = jsonu::get_vec3(p.at("displacement"), pc + ".displacement");
  for (const json& v : jsonu::expect_array(p.at("via_points"), pc + ".via_points"))
    sp.via_points.push_back(jsonu::get_pose(v, pc + ".via_points"));
  sp.laban_start = parse_laban_pose(p.at("laban_start"), pc + ".laban_start");
  sp.laban_end = parse_laban_pose(p.at("laban_end"), pc + ".laban_end");
  if (p.contains("grasp_type")) {
    const std::string g = jsonu::get_string(p.at("grasp_type"), pc + ".grasp_type");
    auto gt = grasp_type_from_string(g);
    if (!gt) throw SchemaViolation(pc + ".grasp_type: unknown grasp type '" + g + "'");
    sp.grasp_type = *gt;
  }
  if (p.contains("approach_direction"))
    sp.approach_direction = jsonu::get_vec3(p.at("approach_direction"), pc + ".approach_direction");
  if (p.contains("surface_normal"))
    sp.surface_normal = jsonu::get_vec3(p.at("surface_normal"), pc + ".surface_normal");
  if (p.contains("object_upright_axis"))
    sp.object_upright_axis =
        jsonu::get_vec3(p.at("object_upright_axis"), pc + ".object_upright_axis");
  return step;
}

void check_unit(const std::optional<Eigen::Vector3d>& v, int step, const char* field,
                ValidationReport& report) {
  if (!v) return;
  if (std::abs(v->norm() - 1.0) > 1e-6)
    report.issues.push_back({step, field, "unit-norm violation"});
}

void require_presence(bool present, bool wanted, int step, const char* field,
                      ValidationReport& report) {
  if (wanted && !present)
    report.issues.push_back({step, field, "required for this task kind but missing"});
  if (!wanted && present)
    report.issues.push_back({step, field, "not allowed for this task kind"});
}

}  // namespace

std::string_view to_string(GraspType g) {
  switch (g) {
    case GraspType::PassiveForce: return "passive_force";
    case GraspType::ActiveForce: return "active_force";
    case GraspType::Lazy: return "lazy";
  }
  return "?";
}

std::optional<GraspType> grasp_type_from_string(std::string_view name) {
  if (name == "passive_force") return GraspType::PassiveForce;
  if (name == "active_force") return GraspType::ActiveForce;
  if (name == "lazy") return GraspType::Lazy;
  return std::nullopt;
}

bool exactly_equal(const SkillParams& a, const SkillParams& b) {
  if (!exactly_equal(a.start_hand_pose, b.start_hand_pose)) return false;
  if (!exactly_equal(a.end_hand_pose, b.end_hand_pose)) return false;
  if (!veq(a.displacement, b.displacement)) return false;
  if (a.via_points.size() != b.via_points.size()) return false;
  for (size_t i = 0; i < a.via_points.size(); ++i)
    if (!exactly_equal(a.via_points[i], b.via_points[i])) return false;
  if (!(a.laban_start == b.laban_start) || !(a.laban_end == b.laban_end)) return false;
  if (a.grasp_type != b.grasp_type) return false;
  return veq(a.approach_direction, b.approach_direction) &&
         veq(a.surface_normal, b.surface_normal) &&
         veq(a.object_upright_axis, b.object_upright_axis);
}

bool exactly_equal(const TaskSequence& a, const TaskSequence& b) {
  if (!exactly_equal(a.demo_to_robot, b.demo_to_robot)) return false;
  if (a.steps.size() != b.steps.size()) return false;
  for (size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].kind != b.steps[i].kind) return false;
    if (a.steps[i].utterance != b.steps[i].utterance) return false;
    if (!exactly_equal(a.steps[i].params, b.steps[i].params)) return false;
  }
  return true;
}

TaskSequence parse_task_sequence(std::istream& source) {
  const json j = jsonu::parse(source, "demonstration file");

  jsonu::expect_object(j, "demonstration file");
  jsonu::check_keys(j, {"frame_transform", "steps"}, {}, "demonstration file");

  TaskSequence seq;
  seq.demo_to_robot = jsonu::get_pose(j.at("frame_transform"), "frame_transform");
  const json& steps = jsonu::expect_array(j.at("steps"), "steps");
  for (size_t i = 0; i < steps.size(); ++i) seq.steps.push_back(parse_step(steps[i], i));

  ValidationReport report = validate_sequence(seq);
  if (!report.ok()) {
    const auto& first = report.issues.front();
    std::string what = "invalid task sequence (" + std::to_string(report.issues.size()) +
                       " issue(s)); first: step " + std::to_string(first.step_index);
    if (!first.field.empty()) what += " " + first.field;
    what += ": " + first.message;
    throw InvariantViolation(what, std::move(report));
  }
  return seq;
}

TaskSequence parse_task_sequence(const std::string& text) {
  std::istringstream in(text);
  return parse_task_sequence(in);
}

std::string serialize_task_sequence(const TaskSequence& seq) {
  json j;
  j["frame_transform"] = jsonu::pose_json(seq.demo_to_robot);
  json steps = json::array();
  for (const auto& step : seq.steps) {
    json s;
    s["kind"] = std::string(to_string(step.kind));
    s["utterance"] = step.utterance;
    json p;
    p["start_pose"] = jsonu::pose_json(step.params.start_hand_pose);
    p["end_pose"] = jsonu::pose_json(step.params.end_hand_pose);
    p["displacement"] = jsonu::vec3_json(step.params.displacement);
    json vias = json::array();
    for (const auto& v : step.params.via_points) vias.push_back(jsonu::pose_json(v));
    p["via_points"] = vias;
    p["laban_start"] = laban_pose_json(step.params.laban_start);
    p["laban_end"] = laban_pose_json(step.params.laban_end);
    if (step.params.grasp_type)
      p["grasp_type"] = std::string(to_string(*step.params.grasp_type));
    if (step.params.approach_direction)
      p["approach_direction"] = jsonu::vec3_json(*step.params.approach_direction);
    if (step.params.surface_normal)
      p["surface_normal"] = jsonu::vec3_json(*step.params.surface_normal);
    if (step.params.object_upright_axis)
      p["object_upright_axis"] = jsonu::vec3_json(*step.params.object_upright_axis);
    s["params"] = p;
    steps.push_back(s);
  }
  j["steps"] = steps;
  return j.dump(2) + "\n";
}

ValidationReport validate_sequence(const TaskSequence& seq) {
  ValidationReport report;

  if (seq.steps.empty()) {
    report.issues.push_back({-1, "steps", "sequence is empty"});
    return report;
  }
  if (seq.steps.front().kind != TaskKind::Grasp)
    report.issues.push_back({0, "kind", "first step must be Grasp"});
  if (seq.steps.back().kind != TaskKind::Release)
    report.issues.push_back(
        {static_cast<int>(seq.steps.size()) - 1, "kind", "last step must be Release"});
  for (size_t i = 1; i + 1 < seq.steps.size(); ++i) {
    if (!is_manipulation(seq.steps[i].kind))
      report.issues.push_back({static_cast<int>(i), "kind",
                               "steps between Grasp and Release must be manipulation kinds"});
  }

  for (size_t i = 0; i < seq.steps.size(); ++i) {
    const int idx = static_cast<int>(i);
    const TaskKind kind = seq.steps[i].kind;
    const SkillParams& p = seq.steps[i].params;

    require_presence(p.grasp_type.has_value(), kind == TaskKind::Grasp, idx, "grasp_type",
                     report);
    // approach_direction: required for Grasp, optional for Release (retreat
    // direction), meaningless elsewhere.
    if (kind == TaskKind::Grasp && !p.approach_direction)
      report.issues.push_back({idx, "approach_direction", "required for Grasp but missing"});
    if (kind != TaskKind::Grasp && kind != TaskKind::Release && p.approach_direction)
      report.issues.push_back({idx, "approach_direction", "not allowed for this task kind"});
    const bool wants_normal = kind == TaskKind::PTG13 || kind == TaskKind::PTG5;
    require_presence(p.surface_normal.has_value(), wants_normal, idx, "surface_normal", report);
    require_presence(p.object_upright_axis.has_value(), kind == TaskKind::STG12, idx,
                     "object_upright_axis", report);
    if (kind == TaskKind::PTG5 && p.via_points.empty())
      report.issues.push_back({idx, "via_points", "PTG5 needs the hinge anchor as a via point"});

    check_unit(p.approach_direction, idx, "approach_direction", report);
    check_unit(p.surface_normal, idx, "surface_normal", report);
    check_unit(p.object_upright_axis, idx, "object_upright_axis", report);
  }
  return report;
}

TaskSequence to_robot_frame(const TaskSequence& seq) {
  const Pose& t = seq.demo_to_robot;
  TaskSequence out = seq;
  out.demo_to_robot = Pose::identity();
  for (auto& step : out.steps) {
    SkillParams& p = step.params;
    p.start_hand_pose = t * p.start_hand_pose;
    p.end_hand_pose = t * p.end_hand_pose;
    for (auto& v : p.via_points) v = t * v;
    p.displacement = t.rotate(p.displacement);
    if (p.approach_direction) p.approach_direction = t.rotate(*p.approach_direction);
    if (p.surface_normal) p.surface_normal = t.rotate(*p.surface_normal);
    // object_upright_axis lives in the hand frame: frame changes leave it alone.
  }
  return out;
}

}  // namespace lfo
