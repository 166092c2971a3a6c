#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfo/errors.hpp"
#include "lfo/laban.hpp"
#include "lfo/se3.hpp"
#include "lfo/task_kind.hpp"

namespace lfo {

enum class GraspType { PassiveForce, ActiveForce, Lazy };

std::string_view to_string(GraspType g);
std::optional<GraspType> grasp_type_from_string(std::string_view name);

// Demonstration-derived inputs of one skill. Poses are SE(3); displacement is
// a free vector (relative motion); approach_direction and surface_normal are
// world-frame unit vectors; object_upright_axis is expressed in the hand
// frame, so it is invariant under world-frame changes.
struct SkillParams {
  Pose start_hand_pose;
  Pose end_hand_pose;
  Eigen::Vector3d displacement{0.0, 0.0, 0.0};
  std::vector<Pose> via_points;
  laban::LabanPose laban_start;
  laban::LabanPose laban_end;
  std::optional<GraspType> grasp_type;
  std::optional<Eigen::Vector3d> approach_direction;
  std::optional<Eigen::Vector3d> surface_normal;
  std::optional<Eigen::Vector3d> object_upright_axis;
};

struct TaskStep {
  TaskKind kind = TaskKind::Grasp;
  SkillParams params;
  std::string utterance;  // kept verbatim, never interpreted
};

// Robot-agnostic task IR. Poses stay in the demonstration frame until
// to_robot_frame is applied; demo_to_robot maps demo coordinates into the
// robot base frame.
struct TaskSequence {
  std::vector<TaskStep> steps;
  Pose demo_to_robot;
};

bool exactly_equal(const SkillParams& a, const SkillParams& b);
bool exactly_equal(const TaskSequence& a, const TaskSequence& b);

struct ValidationIssue {
  int step_index = -1;  // -1 for sequence-level issues
  std::string field;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
};

// Ordering or presence rules broken; carries the full report.
struct InvariantViolation : Error {
  InvariantViolation(const std::string& what, ValidationReport report_)
      : Error(what), report(std::move(report_)) {}
  ValidationReport report;
};

// Parse and validate a demonstration file. Throws MalformedFile,
// SchemaViolation or InvariantViolation; error messages name the offending
// step index and field.
TaskSequence parse_task_sequence(std::istream& source);
TaskSequence parse_task_sequence(const std::string& text);

std::string serialize_task_sequence(const TaskSequence& seq);

// Every semantic invariant, one issue per violation. Empty report iff valid.
ValidationReport validate_sequence(const TaskSequence& seq);

// Apply demo_to_robot to every pose, via point and world-frame direction;
// displacements rotate as free vectors; object_upright_axis (hand frame) is
// untouched. The returned sequence carries an identity transform, so the
// operation is idempotent after the first application.
TaskSequence to_robot_frame(const TaskSequence& seq);

}  // namespace lfo
