#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfo/se3.hpp"
#include "lfo/skills.hpp"

namespace lfo {

// Horizontal support surface: points p with p.n <= height and (x, y) inside
// bounds are in contact.
struct SupportPlane {
  double height = 0.0;
  Eigen::Vector3d normal{0.0, 0.0, 1.0};
  Eigen::Vector2d bounds_min{0.0, 0.0};
  Eigen::Vector2d bounds_max{0.0, 0.0};
};

struct ObstacleBox {
  Eigen::Vector3d min{0.0, 0.0, 0.0};
  Eigen::Vector3d max{0.0, 0.0, 0.0};
};

struct SceneObject {
  std::string name;
  Pose pose;
  Eigen::Vector3d half_extents{0.0, 0.0, 0.0};
};

struct Environment {
  std::vector<SupportPlane> support_planes;
  std::vector<ObstacleBox> obstacles;
  std::vector<SceneObject> objects;
};

Environment load_environment(std::istream& source);
Environment load_environment(const std::string& text);
Environment load_environment_file(const std::string& path);

// Simulated finger-joint effort: kEffortBaseline in free space, 1.0 when the
// held object's lowest point (or the bare hand position) is at or below a
// support plane inside that plane's bounds.
double simulate_effort(const Environment& env, const skills::HandTarget& hand,
                       const std::optional<SceneObject>& held_object);

}  // namespace lfo
