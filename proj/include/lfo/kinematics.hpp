#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfo/errors.hpp"
#include "lfo/laban.hpp"
#include "lfo/se3.hpp"

namespace lfo {

using JointState = Eigen::VectorXd;

enum class JointType { Revolute, Prismatic };

struct Joint {
  std::string name;
  JointType type = JointType::Revolute;
  Eigen::Vector3d axis{0.0, 0.0, 1.0};
  Pose origin;  // fixed offset from the parent joint frame
  laban::Interval limits;
};

struct BranchingChain : Error {
  using Error::Error;
};

// Serial-chain robot description with hard joint limits, an end-effector
// offset and the per-robot Labanotation calibration table.
struct RobotModel {
  std::string name;
  std::vector<Joint> joints;
  Pose end_effector_offset;
  laban::JointRangeTable laban_table;
  std::optional<std::string> elbow_joint;

  int dof() const { return static_cast<int>(joints.size()); }

  std::vector<laban::JointLimit> hard_limits() const;
  std::vector<laban::Interval> hard_intervals() const;
  JointState midpoint_state() const;

  // DOF-dependent default: seven or more joints get the full four-joint
  // constraint; otherwise just the elbow rule when an elbow is labeled.
  laban::ConstraintStrength default_strength() const;

  // Per-joint bounds for `pose` at `strength`, always inside hard limits.
  std::vector<laban::Interval> laban_bounds(const laban::LabanPose& pose,
                                            laban::ConstraintStrength strength) const;
};

RobotModel load_robot(std::istream& source);
RobotModel load_robot(const std::string& text);
RobotModel load_robot_file(const std::string& path);

// End-effector pose at q. Throws JointLimitViolation if q leaves hard limits.
Pose fk(const RobotModel& model, const JointState& q);

// World-frame geometric Jacobian at q: rows 0-2 linear, rows 3-5 angular.
Eigen::Matrix<double, 6, Eigen::Dynamic> jacobian(const RobotModel& model, const JointState& q);

struct IkOptions {
  double pos_tol = 1e-3;                         // m
  double rot_tol = 0.5 * std::numbers::pi / 180.0;  // rad
  int max_iters = 200;
  int restarts = 8;
  double damping = 1e-2;
  double step_clamp = 0.2;  // rad or m per joint per iteration
};

struct IkSolution {
  JointState q;
  double pos_err = 0.0;
  double rot_err = 0.0;
  int iterations = 0;  // corrective steps actually applied
};

struct NoConvergence : Error {
  NoConvergence(const std::string& what, JointState best_q_, double pos_err_, double rot_err_)
      : Error(what), best_q(std::move(best_q_)), pos_err(pos_err_), rot_err(rot_err_) {}
  JointState best_q;
  double pos_err = 0.0;
  double rot_err = 0.0;
};

// Damped-least-squares IK on the 6-D pose error with per-step bound
// projection and deterministic low-discrepancy restarts. Returns a state
// within `bounds`; on failure throws NoConvergence whose best_q is also
// within bounds.
IkSolution solve_ik(const RobotModel& model, const Pose& target, const JointState& seed,
                    std::span<const laban::Interval> bounds, const IkOptions& opts = {});

// Convenience: solve within the hard limits.
IkSolution solve_ik(const RobotModel& model, const Pose& target, const JointState& seed,
                    const IkOptions& opts = {});

// Labanotation-constrained solve seeded at the bound midpoints; used when a
// task starts and the previous posture is no guide.
IkSolution initial_posture(const RobotModel& model, const Pose& target,
                           const laban::LabanPose& pose, laban::ConstraintStrength strength,
                           const IkOptions& opts = {});

}  // namespace lfo
