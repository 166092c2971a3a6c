#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lfo/errors.hpp"

namespace lfo::laban {

// The 26 canonical directions: 8 azimuths (45 deg apart) at three levels
// (high +45 deg, middle 0, low -45 deg elevation) plus the two vertical
// "place" directions. Robot base frame: x forward, y left, z up.
enum class Direction : int {
  PlaceHigh = 0,
  PlaceLow,
  ForwardHigh,
  ForwardMiddle,
  ForwardLow,
  ForwardRightHigh,
  ForwardRightMiddle,
  ForwardRightLow,
  RightHigh,
  RightMiddle,
  RightLow,
  BackRightHigh,
  BackRightMiddle,
  BackRightLow,
  BackHigh,
  BackMiddle,
  BackLow,
  BackLeftHigh,
  BackLeftMiddle,
  BackLeftLow,
  LeftHigh,
  LeftMiddle,
  LeftLow,
  ForwardLeftHigh,
  ForwardLeftMiddle,
  ForwardLeftLow,
};

inline constexpr int kDirectionCount = 26;

std::string_view direction_name(Direction d);
std::optional<Direction> direction_from_name(std::string_view name);
const Eigen::Vector3d& direction_vector(Direction d);
std::span<const Direction> all_directions();

// Nearest canonical direction by cosine similarity. Ties break to the lowest
// canonical index. Throws ZeroVector when |v| < 1e-6; otherwise v is
// normalized first, so positive scaling does not change the result.
Direction quantize_direction(const Eigen::Vector3d& v);

enum class Limb { UpperArm, LowerArm };

// Discretized pose of one arm: where the upper and lower arm segments point.
struct LabanPose {
  Direction upper = Direction::ForwardMiddle;
  Direction lower = Direction::ForwardMiddle;

  bool operator==(const LabanPose&) const = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
  bool contains(double v) const { return v >= lo && v <= hi; }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

// Per-robot calibration: joint intervals realizing each (limb, direction).
// Entries may be missing for directions the robot cannot reach.
struct JointRangeTable {
  std::map<Direction, std::map<std::string, Interval>> upper_arm;
  std::map<Direction, std::map<std::string, Interval>> lower_arm;

  const std::map<std::string, Interval>* find(Limb limb, Direction d) const;
  bool empty() const { return upper_arm.empty() && lower_arm.empty(); }
};

// How strongly a Labanotation pose constrains the IK joint bounds. Full pins
// four joints (two per limb); Elbow only keeps the elbow angle non-negative;
// None leaves the hard limits untouched.
enum class ConstraintStrength { None, Elbow, Full };

std::string_view to_string(ConstraintStrength s);
std::optional<ConstraintStrength> strength_from_string(std::string_view name);

struct MissingTableEntry : Error {
  using Error::Error;
};

// One (name, hard interval) pair per joint, in chain order.
struct JointLimit {
  std::string name;
  Interval hard;
};

// Narrow the hard limits of `joints` according to `pose` and `strength`.
// The result always stays inside the hard limits. `elbow_joint` names the
// joint used by ConstraintStrength::Elbow.
std::vector<Interval> joint_ranges(const LabanPose& pose, const JointRangeTable& table,
                                   ConstraintStrength strength,
                                   std::span<const JointLimit> joints,
                                   const std::optional<std::string>& elbow_joint);

}  // namespace lfo::laban
