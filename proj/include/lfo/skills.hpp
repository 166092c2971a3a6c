#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfo/errors.hpp"
#include "lfo/se3.hpp"
#include "lfo/taskir.hpp"

namespace lfo::skills {

// Output unit of every skill: where the hand should be and how open the grip
// is (1 = fully open). Skills that only move the hand emit aperture 1; the
// executor owns the live grip state and substitutes it.
struct HandTarget {
  Pose pose;
  double aperture = 1.0;
};

// Robot-side feedback a stepping skill consumes each control step.
struct SkillState {
  Pose hand_pose;
  double effort = 0.0;
  int step_index = 0;
};

struct SkillOutput {
  HandTarget target;
  bool done = false;
  std::optional<std::string> note;
};

inline constexpr double kApproachOffset = 0.10;   // m, pre-grasp and retreat
inline constexpr double kWaypointSpacing = 0.10;  // m, via-point densification
inline constexpr double kDescentStep = 0.005;     // m per PTG13 probe
inline constexpr double kMaxDescent = 0.30;       // m before giving up
inline constexpr double kEffortBaseline = 0.1;
inline constexpr double kHitThreshold = 0.5;  // fires on effort - baseline

double grasp_aperture(GraspType type);

// Pre-grasp offset back along the approach, move in, close to the aperture
// of the grasp type.
std::vector<HandTarget> grasp_waypoints(const SkillParams& params);

// Open fully, then retreat along -approach_direction (or +z when absent).
std::vector<HandTarget> release_waypoints(const SkillParams& params);

// Straight pick-up: end = start + displacement, orientation held, interior
// points every kWaypointSpacing of path length.
std::vector<HandTarget> ptg11_waypoints(const SkillParams& params);

// Carry through the via points; orientation is the start orientation
// re-aligned so the hand-frame object_upright_axis maps to world +z.
std::vector<HandTarget> stg12_waypoints(const SkillParams& params);

// Straight translation along the displacement axis (drawer).
std::vector<HandTarget> ptg3_waypoints(const SkillParams& params);

// Arc about a hinge: axis direction = surface_normal, angle = |displacement|
// (radians), hinge anchor = first via point. Orientation co-rotates.
std::vector<HandTarget> ptg5_waypoints(const SkillParams& params);

struct NoHitWithinTravel : Error {
  NoHitWithinTravel(const std::string& what, int descent_steps_)
      : Error(what), descent_steps(descent_steps_) {}
  int descent_steps = 0;
};

// Place with contact detection. The first step moves to the landing-start
// pose: the demonstrated midpoint height along surface_normal, in the column
// of the current hand position. Each further step descends kDescentStep
// until effort - kEffortBaseline exceeds kHitThreshold; done is absorbing.
// Throws NoHitWithinTravel after kMaxDescent of travel.
class Ptg13Stepper {
 public:
  explicit Ptg13Stepper(const SkillParams& params);

  SkillOutput step(const SkillState& state);

  bool done() const { return done_; }
  int descent_steps() const { return descent_steps_; }

 private:
  Pose demo_start_;
  Pose demo_end_;
  Eigen::Vector3d normal_;
  bool positioned_ = false;
  bool done_ = false;
  int descent_steps_ = 0;
  Pose current_;
};

}  // namespace lfo::skills
