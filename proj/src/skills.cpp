#include "lfo/skills.hpp"

#include <cmath>

namespace lfo::skills {

namespace {

// Interior points every kWaypointSpacing of path length, evenly spaced so the
// gap never exceeds the spacing; the segment end is emitted exactly.
void densify_segment(const Eigen::Vector3d& from, const Eigen::Vector3d& to,
                     const Eigen::Quaterniond& orientation, std::vector<HandTarget>& out) {
  const Eigen::Vector3d delta = to - from;
  const double len = delta.norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / kWaypointSpacing)));
  for (int i = 1; i <= n; ++i) {
    Eigen::Vector3d p = (i == n) ? to : Eigen::Vector3d(from + delta * (double(i) / n));
    out.push_back({Pose{p, orientation}, 1.0});
  }
}

Eigen::Vector3d unit_or_throw(const std::optional<Eigen::Vector3d>& v, const char* what) {
  if (!v) throw MissingParam(std::string(what) + " missing");
  const double n = v->norm();
  if (n < 1e-6) throw ZeroVector(std::string(what) + " has zero length");
  return *v / n;
}

}  // namespace

double grasp_aperture(GraspType type) {
  switch (type) {
    case GraspType::PassiveForce: return 0.15;
    case GraspType::ActiveForce: return 0.05;
    case GraspType::Lazy: return 0.35;
  }
  return 0.15;
}

std::vector<HandTarget> grasp_waypoints(const SkillParams& params) {
  if (!params.grasp_type) throw MissingParam("grasp_type missing");
  const Eigen::Vector3d approach = unit_or_throw(params.approach_direction, "approach_direction");

  const Pose& grasp = params.start_hand_pose;
  Pose pre = grasp;
  pre.position -= kApproachOffset * approach;

  return {
      {pre, 1.0},
      {grasp, 1.0},
      {grasp, grasp_aperture(*params.grasp_type)},
  };
}

std::vector<HandTarget> release_waypoints(const SkillParams& params) {
  const Pose& here = params.start_hand_pose;
  Eigen::Vector3d retreat = Eigen::Vector3d::UnitZ();
  if (params.approach_direction) retreat = -unit_or_throw(params.approach_direction, "approach_direction");

  Pose away = here;
  away.position += kApproachOffset * retreat;
  return {{here, 1.0}, {away, 1.0}};
}

std::vector<HandTarget> ptg11_waypoints(const SkillParams& params) {
  const Pose& start = params.start_hand_pose;
  const Eigen::Vector3d end = start.position + params.displacement;

  std::vector<HandTarget> out{{start, 1.0}};
  if (params.displacement.norm() < 1e-12) return out;
  densify_segment(start.position, end, start.orientation, out);
  return out;
}

std::vector<HandTarget> stg12_waypoints(const SkillParams& params) {
  const Eigen::Vector3d upright = unit_or_throw(params.object_upright_axis, "object_upright_axis");
  const Pose& start = params.start_hand_pose;

  // Re-align the start orientation with the smallest rotation that maps the
  // hand-frame upright axis onto world +z; held for the whole carry.
  const Eigen::Vector3d world_upright = start.orientation * upright;
  const Eigen::Quaterniond align =
      Eigen::Quaterniond::FromTwoVectors(world_upright, Eigen::Vector3d::UnitZ());
  const Eigen::Quaterniond orientation = (align * start.orientation).normalized();

  std::vector<Eigen::Vector3d> nodes{start.position};
  for (const auto& v : params.via_points) nodes.push_back(v.position);
  nodes.push_back(start.position + params.displacement);

  std::vector<HandTarget> out{{Pose{start.position, orientation}, 1.0}};
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    if ((nodes[i + 1] - nodes[i]).norm() < 1e-12) continue;
    densify_segment(nodes[i], nodes[i + 1], orientation, out);
  }
  return out;
}

std::vector<HandTarget> ptg3_waypoints(const SkillParams& params) {
  // Same straight-axis motion as a pick-up, constrained to the drawer line by
  // construction: every inter-waypoint displacement is parallel to it.
  return ptg11_waypoints(params);
}

std::vector<HandTarget> ptg5_waypoints(const SkillParams& params) {
  const Eigen::Vector3d axis = unit_or_throw(params.surface_normal, "surface_normal (hinge axis)");
  if (params.via_points.empty()) throw MissingParam("via_points (hinge anchor) missing");
  const Eigen::Vector3d anchor = params.via_points.front().position;
  const double angle = params.displacement.norm();

  const Pose& start = params.start_hand_pose;
  std::vector<HandTarget> out{{start, 1.0}};
  if (angle < 1e-12) return out;

  const Eigen::Vector3d radius = start.position - anchor;
  const double arc = angle * (radius - radius.dot(axis) * axis).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(arc / kWaypointSpacing)));
  for (int i = 1; i <= n; ++i) {
    const double theta = angle * double(i) / n;
    const Eigen::Quaterniond rot(Eigen::AngleAxisd(theta, axis));
    Pose p;
    p.position = anchor + rot * radius;
    p.orientation = (rot * start.orientation).normalized();
    out.push_back({p, 1.0});
  }
  return out;
}

Ptg13Stepper::Ptg13Stepper(const SkillParams& params)
    : demo_start_(params.start_hand_pose), demo_end_(params.end_hand_pose) {
  normal_ = unit_or_throw(params.surface_normal, "surface_normal");
}

SkillOutput Ptg13Stepper::step(const SkillState& state) {
  if (done_) return {{current_, 1.0}, true, std::nullopt};

  if (state.effort - kEffortBaseline > kHitThreshold) {
    if (!positioned_) current_ = state.hand_pose;
    done_ = true;
    return {{current_, 1.0}, true, "hit_detected"};
  }

  if (!positioned_) {
    positioned_ = true;
    // Landing start: demonstrated mid-height along the surface normal, in the
    // column of the live hand position.
    const Eigen::Vector3d mid = 0.5 * (demo_start_.position + demo_end_.position);
    const Eigen::Vector3d& here = state.hand_pose.position;
    current_.position = here + (mid - here).dot(normal_) * normal_;
    current_.orientation = state.hand_pose.orientation;
    return {{current_, 1.0}, false, "landing_start"};
  }

  const int max_steps = static_cast<int>(std::lround(kMaxDescent / kDescentStep));
  if (descent_steps_ >= max_steps)
    throw NoHitWithinTravel("no surface hit within " + std::to_string(kMaxDescent) +
                                " m of descent",
                            descent_steps_);
  current_.position -= kDescentStep * normal_;
  ++descent_steps_;
  return {{current_, 1.0}, false, std::nullopt};
}

}  // namespace lfo::skills
