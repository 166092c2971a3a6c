#include "lfo/environment.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace lfo {

namespace {

using jsonu::json;

SupportPlane parse_plane(const json& j, const std::string& ctx) {
  jsonu::expect_object(j, ctx);
  jsonu::check_keys(j, {"height", "normal", "bounds"}, {}, ctx);
  SupportPlane p;
  p.height = jsonu::get_number(j.at("height"), ctx + ".height");
  p.normal = jsonu::get_vec3(j.at("normal"), ctx + ".normal");
  if (std::abs(p.normal.norm() - 1.0) > 1e-6)
    throw SchemaViolation(ctx + ".normal: not unit norm");
  p.normal.normalize();
  const json& b = jsonu::expect_object(j.at("bounds"), ctx + ".bounds");
  jsonu::check_keys(b, {"min", "max"}, {}, ctx + ".bounds");
  p.bounds_min = jsonu::get_vec2(b.at("min"), ctx + ".bounds.min");
  p.bounds_max = jsonu::get_vec2(b.at("max"), ctx + ".bounds.max");
  if (p.bounds_min.x() > p.bounds_max.x() || p.bounds_min.y() > p.bounds_max.y())
    throw SchemaViolation(ctx + ".bounds: min exceeds max");
  return p;
}

ObstacleBox parse_box(const json& j, const std::string& ctx) {
  jsonu::expect_object(j, ctx);
  jsonu::check_keys(j, {"min", "max"}, {}, ctx);
  ObstacleBox b;
  b.min = jsonu::get_vec3(j.at("min"), ctx + ".min");
  b.max = jsonu::get_vec3(j.at("max"), ctx + ".max");
  if ((b.min.array() > b.max.array()).any())
    throw SchemaViolation(ctx + ": min exceeds max");
  return b;
}

SceneObject parse_object(const json& j, const std::string& ctx) {
  jsonu::expect_object(j, ctx);
  jsonu::check_keys(j, {"name", "pose", "half_extents"}, {}, ctx);
  SceneObject o;
  o.name = jsonu::get_string(j.at("name"), ctx + ".name");
  o.pose = jsonu::get_pose(j.at("pose"), ctx + ".pose");
  o.half_extents = jsonu::get_vec3(j.at("half_extents"), ctx + ".half_extents");
  if ((o.half_extents.array() <= 0.0).any())
    throw SchemaViolation(ctx + ".half_extents: must be positive");
  return o;
}

}  // namespace

Environment load_environment(std::istream& source) {
  const json j = jsonu::parse(source, "environment file");
  jsonu::expect_object(j, "environment file");
  jsonu::check_keys(j, {"support_planes", "obstacles", "objects"}, {}, "environment file");

  Environment env;
  const json& planes = jsonu::expect_array(j.at("support_planes"), "support_planes");
  for (size_t i = 0; i < planes.size(); ++i)
    env.support_planes.push_back(parse_plane(planes[i], "support_planes[" + std::to_string(i) + "]"));
  const json& boxes = jsonu::expect_array(j.at("obstacles"), "obstacles");
  for (size_t i = 0; i < boxes.size(); ++i)
    env.obstacles.push_back(parse_box(boxes[i], "obstacles[" + std::to_string(i) + "]"));
  const json& objects = jsonu::expect_array(j.at("objects"), "objects");
  for (size_t i = 0; i < objects.size(); ++i)
    env.objects.push_back(parse_object(objects[i], "objects[" + std::to_string(i) + "]"));
  return env;
}

Environment load_environment(const std::string& text) {
  std::istringstream in(text);
  return load_environment(in);
}

Environment load_environment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFile("cannot open environment file '" + path + "'");
  return load_environment(in);
}

double simulate_effort(const Environment& env, const skills::HandTarget& hand,
                       const std::optional<SceneObject>& held_object) {
  for (const auto& plane : env.support_planes) {
    Eigen::Vector3d lowest = hand.pose.position;
    if (held_object) {
      double best = std::numeric_limits<double>::infinity();
      for (int sx = -1; sx <= 1; sx += 2) {
        for (int sy = -1; sy <= 1; sy += 2) {
          for (int sz = -1; sz <= 1; sz += 2) {
            const Eigen::Vector3d corner = held_object->pose.apply(Eigen::Vector3d(
                sx * held_object->half_extents.x(), sy * held_object->half_extents.y(),
                sz * held_object->half_extents.z()));
            const double d = corner.dot(plane.normal);
            if (d < best) {
              best = d;
              lowest = corner;
            }
          }
        }
      }
    }
    const bool inside = lowest.x() >= plane.bounds_min.x() && lowest.x() <= plane.bounds_max.x() &&
                        lowest.y() >= plane.bounds_min.y() && lowest.y() <= plane.bounds_max.y();
    if (inside && lowest.dot(plane.normal) <= plane.height) return 1.0;
  }
  return skills::kEffortBaseline;
}

}  // namespace lfo
