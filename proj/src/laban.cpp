#include "lfo/laban.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace lfo::laban {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Azimuth blocks in enum order: forward, forward_right, right, back_right,
// back, back_left, left, forward_left. Signed degrees keep left/right mirror
// pairs bitwise symmetric.
constexpr std::array<double, 8> kAzimuthDeg{0.0, -45.0, -90.0, -135.0, 180.0, 135.0, 90.0, 45.0};
constexpr std::array<const char*, 8> kAzimuthName{
    "forward", "forward_right", "right", "back_right", "back", "back_left", "left",
    "forward_left"};
constexpr std::array<double, 3> kLevelDeg{45.0, 0.0, -45.0};
constexpr std::array<const char*, 3> kLevelName{"high", "middle", "low"};

struct Tables {
  std::array<std::string, kDirectionCount> names;
  std::array<Eigen::Vector3d, kDirectionCount> vectors;
  std::array<Direction, kDirectionCount> order;

  Tables() {
    names[0] = "place_high";
    vectors[0] = Eigen::Vector3d(0.0, 0.0, 1.0);
    names[1] = "place_low";
    vectors[1] = Eigen::Vector3d(0.0, 0.0, -1.0);
    for (int b = 0; b < 8; ++b) {
      for (int l = 0; l < 3; ++l) {
        const int idx = 2 + 3 * b + l;
        names[idx] = std::string(kAzimuthName[b]) + "_" + kLevelName[l];
        const double az = kAzimuthDeg[b] * kDeg;
        const double el = kLevelDeg[l] * kDeg;
        vectors[idx] = Eigen::Vector3d(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                                       std::sin(el));
      }
    }
    for (int i = 0; i < kDirectionCount; ++i) order[i] = static_cast<Direction>(i);
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

// Enum index of the direction at counterclockwise 45-degree multiple `ccw`
// (from +x toward +y) and level `l`.
int block_of_ccw(int ccw) { return (8 - ((ccw % 8) + 8) % 8) % 8; }

}  // namespace

std::string_view direction_name(Direction d) { return tables().names[static_cast<int>(d)]; }

std::optional<Direction> direction_from_name(std::string_view name) {
  const auto& t = tables();
  for (int i = 0; i < kDirectionCount; ++i)
    if (t.names[i] == name) return static_cast<Direction>(i);
  return std::nullopt;
}

const Eigen::Vector3d& direction_vector(Direction d) {
  return tables().vectors[static_cast<int>(d)];
}

std::span<const Direction> all_directions() { return tables().order; }

Direction quantize_direction(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (n < 1e-6) throw ZeroVector("quantize_direction: zero-length direction");
  const Eigen::Vector3d u = v / n;

  // Candidates: the two poles plus, per level, the two azimuth bins
  // bracketing the input azimuth. Evaluating dot products in canonical-index
  // order makes exact ties resolve to the lowest index.
  std::array<int, 8> candidates{};
  int count = 0;
  candidates[count++] = 0;
  candidates[count++] = 1;
  const double az = std::atan2(u.y(), u.x());
  const int k = static_cast<int>(std::floor(az / (45.0 * kDeg)));
  for (int l = 0; l < 3; ++l) {
    const int b0 = block_of_ccw(k);
    const int b1 = block_of_ccw(k + 1);
    candidates[count++] = 2 + 3 * b0 + l;
    if (b1 != b0) candidates[count++] = 2 + 3 * b1 + l;
  }
  std::sort(candidates.begin(), candidates.begin() + count);

  int best = candidates[0];
  double best_dot = u.dot(tables().vectors[best]);
  for (int i = 1; i < count; ++i) {
    const double d = u.dot(tables().vectors[candidates[i]]);
    if (d > best_dot) {
      best = candidates[i];
      best_dot = d;
    }
  }
  return static_cast<Direction>(best);
}

std::string_view to_string(ConstraintStrength s) {
  switch (s) {
    case ConstraintStrength::None: return "none";
    case ConstraintStrength::Elbow: return "elbow";
    case ConstraintStrength::Full: return "full";
  }
  return "?";
}

std::optional<ConstraintStrength> strength_from_string(std::string_view name) {
  if (name == "none") return ConstraintStrength::None;
  if (name == "elbow") return ConstraintStrength::Elbow;
  if (name == "full") return ConstraintStrength::Full;
  return std::nullopt;
}

const std::map<std::string, Interval>* JointRangeTable::find(Limb limb, Direction d) const {
  const auto& side = limb == Limb::UpperArm ? upper_arm : lower_arm;
  auto it = side.find(d);
  return it == side.end() ? nullptr : &it->second;
}

std::vector<Interval> joint_ranges(const LabanPose& pose, const JointRangeTable& table,
                                   ConstraintStrength strength,
                                   std::span<const JointLimit> joints,
                                   const std::optional<std::string>& elbow_joint) {
  std::vector<Interval> out;
  out.reserve(joints.size());
  for (const auto& j : joints) out.push_back(j.hard);

  if (strength == ConstraintStrength::None) return out;

  if (strength == ConstraintStrength::Elbow) {
    if (!elbow_joint) return out;
    for (size_t i = 0; i < joints.size(); ++i) {
      if (joints[i].name == *elbow_joint && joints[i].hard.hi >= 0.0) {
        out[i].lo = std::max(0.0, joints[i].hard.lo);
      }
    }
    return out;
  }

  const std::pair<Limb, Direction> wanted[] = {{Limb::UpperArm, pose.upper},
                                               {Limb::LowerArm, pose.lower}};
  for (const auto& [limb, dir] : wanted) {
    const auto* entry = table.find(limb, dir);
    if (entry == nullptr) {
      throw MissingTableEntry(std::string("no joint-range entry for (") +
                              (limb == Limb::UpperArm ? "upper_arm" : "lower_arm") + ", " +
                              std::string(direction_name(dir)) + ")");
    }
    for (const auto& [name, interval] : *entry) {
      for (size_t i = 0; i < joints.size(); ++i) {
        if (joints[i].name != name) continue;
        out[i].lo = std::max(out[i].lo, interval.lo);
        out[i].hi = std::min(out[i].hi, interval.hi);
        if (out[i].lo > out[i].hi) out[i].lo = out[i].hi;
      }
    }
  }
  return out;
}

}  // namespace lfo::laban
