#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfo/environment.hpp"
#include "lfo/kinematics.hpp"
#include "lfo/taskir.hpp"

namespace lfo {

struct ExecOptions {
  double control_period = 0.01;            // s
  double joint_speed_limit = 1.0;          // rad/s or m/s, per joint
  std::optional<laban::ConstraintStrength> laban_strength;  // default: per model
};

struct TrajectorySample {
  double t = 0.0;
  JointState q;
  Pose ee_pose;
  double effort = 0.0;
  int task_index = 0;
  std::optional<std::string> event;
};

struct Trajectory {
  double control_period = 0.01;
  std::vector<std::string> joint_names;
  std::vector<TrajectorySample> samples;
};

bool exactly_equal(const Trajectory& a, const Trajectory& b);

struct StepReport {
  TaskKind kind = TaskKind::Grasp;
  int waypoints = 0;
  int ik_iterations = 0;
  std::vector<std::string> events;
};

struct ExecutionReport {
  std::vector<StepReport> steps;
  std::vector<SceneObject> final_objects;
  int hit_events = 0;
  int laban_relaxations = 0;

  std::vector<TaskKind> kinds() const;
};

struct ExecResult {
  Trajectory trajectory;
  ExecutionReport report;
};

struct IkFailure : Error {
  IkFailure(const std::string& what, int task_index_, int waypoint_index_, double pos_err_,
            double rot_err_)
      : Error(what),
        task_index(task_index_),
        waypoint_index(waypoint_index_),
        pos_err(pos_err_),
        rot_err(rot_err_) {}
  int task_index = 0;
  int waypoint_index = 0;
  double pos_err = 0.0;
  double rot_err = 0.0;
};

// Run a robot-frame task sequence on a model in a kinematic environment:
// skill waypoints -> Labanotation-constrained IK -> joint-space interpolation
// at the control period, with simulated effort feedback and rigid held-object
// tracking. Deterministic for identical inputs.
ExecResult execute(const RobotModel& model, const TaskSequence& seq, const Environment& env,
                   const ExecOptions& opts = {});

struct ClearanceViolation {
  int sample_index = 0;
  int obstacle_index = 0;
};

// Flag samples whose end-effector position is strictly inside an obstacle box
// inflated by margin (end-effector point check only).
std::vector<ClearanceViolation> check_clearance(const Trajectory& traj, const Environment& env,
                                                double margin = 0.01);

}  // namespace lfo
