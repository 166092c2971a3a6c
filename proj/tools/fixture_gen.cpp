// Regenerates the bundled fixture files (robot descriptions with their
// Labanotation calibration tables, demonstrations, environments). Run from
// the repository root:   build/tools/fixture_gen [out_dir]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <json.hpp>

#include "lfo/kinematics.hpp"
#include "lfo/laban.hpp"
#include "lfo/taskir.hpp"

using nlohmann::json;
using namespace lfo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Calibration rule for the joint-range tables. Upper-arm entries pin the two
// shoulder joints to the direction's azimuth/elevation within +/-30 deg.
// Lower-arm entries pin the bend joints relative to a tabletop reference
// (upper arm 45 deg below horizontal) within +/-75 deg; the roll that selects
// the bend plane stays near neutral. Directions a joint cannot reach are
// omitted from the table.
constexpr double kUpperWidth = 30.0 * kDeg;
constexpr double kLowerWidth = 75.0 * kDeg;
constexpr double kUpperRefElevation = -45.0 * kDeg;

struct JointSpec {
  const char* name;
  const char* type;
  Eigen::Vector3d axis;
  Eigen::Vector3d origin;
  double lo, hi;
};

json pose_json(const Eigen::Vector3d& p, const Eigen::Quaterniond& q = {1, 0, 0, 0}) {
  json j;
  j["position"] = {p.x(), p.y(), p.z()};
  j["quaternion"] = {q.w(), q.x(), q.y(), q.z()};
  return j;
}

std::optional<json> clamp_interval(double center, double width, double lo, double hi) {
  const double a = std::max(center - width, lo);
  const double b = std::min(center + width, hi);
  if (a > b) return std::nullopt;
  return json{a, b};
}

void direction_angles(laban::Direction d, double& azimuth, double& elevation) {
  const Eigen::Vector3d v = laban::direction_vector(d);
  elevation = std::asin(std::clamp(v.z(), -1.0, 1.0));
  azimuth = (std::abs(v.x()) + std::abs(v.y()) < 1e-12) ? 0.0 : std::atan2(v.y(), v.x());
}

// upper: (azimuth joint, pitch joint); lower: (roll joint, bend joint)
json laban_table(const std::vector<JointSpec>& joints, const char* azimuth_joint,
                 const char* pitch_joint, const char* roll_joint, const char* bend_joint) {
  auto limits_of = [&joints](const char* name) {
    for (const auto& j : joints)
      if (std::string_view(j.name) == name) return std::pair<double, double>{j.lo, j.hi};
    throw std::logic_error(std::string("unknown joint ") + name);
  };
  const auto [az_lo, az_hi] = limits_of(azimuth_joint);
  const auto [pi_lo, pi_hi] = limits_of(pitch_joint);
  const auto [ro_lo, ro_hi] = limits_of(roll_joint);
  const auto [be_lo, be_hi] = limits_of(bend_joint);

  json upper = json::object();
  json lower = json::object();
  for (laban::Direction d : laban::all_directions()) {
    double azimuth = 0.0, elevation = 0.0;
    direction_angles(d, azimuth, elevation);

    const auto az = clamp_interval(azimuth, kUpperWidth, az_lo, az_hi);
    const auto pitch = clamp_interval(-elevation, kUpperWidth, pi_lo, pi_hi);
    if (az && pitch) {
      json entry;
      entry[azimuth_joint] = *az;
      entry[pitch_joint] = *pitch;
      upper[std::string(laban::direction_name(d))] = entry;
    }

    const auto roll = clamp_interval(0.0, kLowerWidth, ro_lo, ro_hi);
    const auto bend =
        clamp_interval(elevation - kUpperRefElevation, kLowerWidth, be_lo, be_hi);
    if (roll && bend) {
      json entry;
      entry[roll_joint] = *roll;
      entry[bend_joint] = *bend;
      lower[std::string(laban::direction_name(d))] = entry;
    }
  }
  json table;
  table["upper_arm"] = upper;
  table["lower_arm"] = lower;
  return table;
}

json robot_json(const std::string& name, const std::vector<JointSpec>& joints,
                const Eigen::Vector3d& ee_offset, const char* elbow, const json& table) {
  json j;
  j["name"] = name;
  json arr = json::array();
  for (const auto& spec : joints) {
    json js;
    js["name"] = spec.name;
    js["type"] = spec.type;
    js["axis"] = {spec.axis.x(), spec.axis.y(), spec.axis.z()};
    js["origin"] = pose_json(spec.origin);
    js["limits"] = {spec.lo, spec.hi};
    arr.push_back(js);
  }
  j["joints"] = arr;
  j["end_effector"] = pose_json(ee_offset);
  j["labels"] = json{{"elbow_joint", elbow}};
  j["laban_table"] = table;
  return j;
}

json nextage_like() {
  // Six-revolute right arm on a fixed torso; x forward, y left, z up.
  const std::vector<JointSpec> joints{
      {"shoulder_yaw", "revolute", {0, 0, 1}, {0.0, -0.145, 0.87}, -1.53, 1.53},
      {"shoulder_pitch", "revolute", {0, 1, 0}, {0.0, 0.0, 0.0}, -1.40, 1.92},
      {"elbow_pitch", "revolute", {0, -1, 0}, {0.27, 0.0, 0.0}, -2.61, 2.61},
      {"forearm_roll", "revolute", {1, 0, 0}, {0.16, 0.0, 0.0}, -2.80, 2.80},
      {"wrist_pitch", "revolute", {0, 1, 0}, {0.13, 0.0, 0.0}, -1.90, 1.90},
      {"wrist_roll", "revolute", {1, 0, 0}, {0.07, 0.0, 0.0}, -2.80, 2.80},
  };
  const json table =
      laban_table(joints, "shoulder_yaw", "shoulder_pitch", "forearm_roll", "elbow_pitch");
  return robot_json("nextage_like", joints, {0.13, 0.0, 0.0}, "elbow_pitch", table);
}

json fetch_like() {
  // Prismatic torso lifter plus a seven-revolute arm.
  const std::vector<JointSpec> joints{
      {"torso_lift", "prismatic", {0, 0, 1}, {-0.09, 0.0, 0.38}, 0.0, 0.40},
      {"shoulder_pan", "revolute", {0, 0, 1}, {0.12, 0.0, 0.35}, -1.60, 1.60},
      {"shoulder_lift", "revolute", {0, 1, 0}, {0.117, 0.0, 0.06}, -1.22, 1.52},
      {"upperarm_roll", "revolute", {1, 0, 0}, {0.219, 0.0, 0.0}, -3.10, 3.10},
      {"elbow_flex", "revolute", {0, -1, 0}, {0.133, 0.0, 0.0}, -2.25, 2.25},
      {"forearm_roll", "revolute", {1, 0, 0}, {0.197, 0.0, 0.0}, -3.10, 3.10},
      {"wrist_flex", "revolute", {0, 1, 0}, {0.1245, 0.0, 0.0}, -2.16, 2.16},
      {"wrist_roll", "revolute", {1, 0, 0}, {0.1385, 0.0, 0.0}, -3.10, 3.10},
  };
  const json table =
      laban_table(joints, "shoulder_pan", "shoulder_lift", "upperarm_roll", "elbow_flex");
  return robot_json("fetch_like", joints, {0.17, 0.0, 0.0}, "elbow_flex", table);
}

// --- demonstrations, authored in the robot frame and stored in the
// demonstration frame (yaw 90 deg, table-height origin) ---

// All fixture grasps pitch the hand 45 degrees down: the palm axis points
// forward-down, which keeps the wrist high and behind the hand where both
// bundled arms have room.
const double kTilt = 45.0 * kDeg;

Eigen::Quaterniond hand_orientation() {
  return Eigen::Quaterniond(Eigen::AngleAxisd(kTilt, Eigen::Vector3d::UnitY()));
}

Eigen::Vector3d approach_direction() {
  return {std::cos(kTilt), 0.0, -std::sin(kTilt)};
}

Eigen::Vector3d upright_in_hand() {
  return hand_orientation().conjugate() * Eigen::Vector3d::UnitZ();
}

Pose at(double x, double y, double z) {
  Pose p;
  p.position = {x, y, z};
  p.orientation = hand_orientation();
  return p;
}

TaskStep step(TaskKind kind, const Pose& start, const Pose& end, const Eigen::Vector3d& disp,
              laban::LabanPose laban, std::string utterance) {
  TaskStep s;
  s.kind = kind;
  s.utterance = std::move(utterance);
  s.params.start_hand_pose = start;
  s.params.end_hand_pose = end;
  s.params.displacement = disp;
  s.params.laban_start = laban;
  s.params.laban_end = laban;
  return s;
}

const laban::LabanPose kReachPose{laban::Direction::ForwardMiddle,
                                  laban::Direction::ForwardHigh};

Pose demo_transform() {
  Pose t;
  t.position = {0.0, 0.0, 0.74};
  t.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(kPi / 2.0, Eigen::Vector3d::UnitZ()));
  return t;
}

TaskSequence to_demo_frame(TaskSequence robot_seq, const Pose& t) {
  robot_seq.demo_to_robot = t.inverse();
  TaskSequence demo = to_robot_frame(robot_seq);
  demo.demo_to_robot = t;
  return demo;
}

TaskSequence place_on_plate_demo() {
  TaskSequence seq;

  TaskStep grasp = step(TaskKind::Grasp, at(0.58, -0.10, 0.80), at(0.58, -0.10, 0.80),
                        {0, 0, 0}, kReachPose, "take hold of the box");
  grasp.params.grasp_type = GraspType::PassiveForce;
  grasp.params.approach_direction = approach_direction();
  seq.steps.push_back(grasp);

  seq.steps.push_back(step(TaskKind::PTG11, at(0.58, -0.10, 0.80), at(0.58, -0.10, 0.90),
                           {0, 0, 0.10}, kReachPose, "lift the box off the table"));

  TaskStep bring = step(TaskKind::STG12, at(0.58, -0.10, 0.90), at(0.62, -0.28, 0.90),
                        {0.04, -0.18, 0.0}, kReachPose, "carry the box over the plate");
  bring.params.via_points = {at(0.60, -0.19, 0.92)};
  bring.params.object_upright_axis = upright_in_hand();
  seq.steps.push_back(bring);

  TaskStep place = step(TaskKind::PTG13, at(0.62, -0.28, 0.90), at(0.62, -0.28, 0.815),
                        {0, 0, -0.085}, kReachPose, "set the box down on the plate");
  place.params.surface_normal = Eigen::Vector3d(0, 0, 1);
  seq.steps.push_back(place);

  seq.steps.push_back(step(TaskKind::Release, at(0.62, -0.28, 0.815), at(0.55, -0.28, 0.89),
                           {0, 0, 0}, kReachPose, "let go of the box"));

  return to_demo_frame(std::move(seq), demo_transform());
}

TaskSequence shelf_demo() {
  TaskSequence seq;

  TaskStep grasp = step(TaskKind::Grasp, at(0.60, -0.06, 0.80), at(0.60, -0.06, 0.80),
                        {0, 0, 0}, kReachPose, "take hold of the cup");
  grasp.params.grasp_type = GraspType::Lazy;
  grasp.params.approach_direction = approach_direction();
  seq.steps.push_back(grasp);

  seq.steps.push_back(step(TaskKind::PTG11, at(0.60, -0.06, 0.80), at(0.60, -0.06, 0.90),
                           {0, 0, 0.10}, kReachPose, "raise the cup"));

  TaskStep bring1 = step(TaskKind::STG12, at(0.60, -0.06, 0.90), at(0.60, -0.16, 0.96),
                         {0.0, -0.10, 0.06}, kReachPose, "bring the cup up to shelf height");
  bring1.params.via_points = {at(0.60, -0.10, 0.94)};
  bring1.params.object_upright_axis = upright_in_hand();
  seq.steps.push_back(bring1);

  TaskStep bring2 = step(TaskKind::STG12, at(0.60, -0.16, 0.96), at(0.60, -0.28, 0.96),
                         {0.0, -0.12, 0.0}, kReachPose, "move the cup over the shelf board");
  bring2.params.via_points = {at(0.60, -0.22, 0.96)};
  bring2.params.object_upright_axis = upright_in_hand();
  seq.steps.push_back(bring2);

  TaskStep bring3 = step(TaskKind::STG12, at(0.60, -0.28, 0.96), at(0.60, -0.28, 0.95),
                         {0.0, 0.0, -0.01}, kReachPose, "settle the cup inside the shelf");
  bring3.params.object_upright_axis = upright_in_hand();
  seq.steps.push_back(bring3);

  TaskStep place = step(TaskKind::PTG13, at(0.60, -0.28, 0.95), at(0.60, -0.28, 0.90),
                        {0, 0, -0.05}, kReachPose, "set the cup down");
  place.params.surface_normal = Eigen::Vector3d(0, 0, 1);
  seq.steps.push_back(place);

  seq.steps.push_back(step(TaskKind::Release, at(0.60, -0.28, 0.90), at(0.53, -0.28, 0.97),
                           {0, 0, 0}, kReachPose, "let go of the cup"));

  return to_demo_frame(std::move(seq), demo_transform());
}

json plane_json(double height, double x0, double y0, double x1, double y1) {
  json j;
  j["height"] = height;
  j["normal"] = {0.0, 0.0, 1.0};
  j["bounds"] = {{"min", {x0, y0}}, {"max", {x1, y1}}};
  return j;
}

json box_json(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  json j;
  j["min"] = {lo.x(), lo.y(), lo.z()};
  j["max"] = {hi.x(), hi.y(), hi.z()};
  return j;
}

json object_json(const std::string& name, const Eigen::Vector3d& center,
                 const Eigen::Vector3d& half_extents) {
  json j;
  j["name"] = name;
  j["pose"] = pose_json(center);
  j["half_extents"] = {half_extents.x(), half_extents.y(), half_extents.z()};
  return j;
}

json table_plate_env() {
  json j;
  j["support_planes"] = {plane_json(0.74, 0.25, -0.50, 0.85, 0.50),
                         plane_json(0.755, 0.53, -0.37, 0.71, -0.19)};
  j["obstacles"] = json::array();
  j["objects"] = {object_json("box", {0.58, -0.10, 0.79}, {0.03, 0.03, 0.05})};
  return j;
}

json shelf_env() {
  json j;
  j["support_planes"] = {plane_json(0.74, 0.25, -0.50, 0.85, 0.50),
                         plane_json(0.84, 0.50, -0.40, 0.70, -0.20)};
  j["obstacles"] = {box_json({0.50, -0.40, 0.82}, {0.70, -0.20, 0.84}),
                    box_json({0.50, -0.40, 1.06}, {0.70, -0.20, 1.08}),
                    box_json({0.70, -0.40, 0.82}, {0.72, -0.20, 1.08})};
  j["objects"] = {object_json("cup", {0.60, -0.06, 0.79}, {0.035, 0.035, 0.05})};
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(out_dir);

  write_file(out_dir / "nextage_like.robot", nextage_like().dump(2) + "\n");
  write_file(out_dir / "fetch_like.robot", fetch_like().dump(2) + "\n");
  write_file(out_dir / "place_on_plate.demo", serialize_task_sequence(place_on_plate_demo()));
  write_file(out_dir / "shelf.demo", serialize_task_sequence(shelf_demo()));
  write_file(out_dir / "table_plate.env", table_plate_env().dump(2) + "\n");
  write_file(out_dir / "shelf.env", shelf_env().dump(2) + "\n");
  return 0;
}
