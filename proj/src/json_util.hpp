#pragma once

#include <initializer_list>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "lfo/errors.hpp"
#include "lfo/se3.hpp"

namespace lfo::jsonu {

using nlohmann::json;

inline json parse(std::istream& in, const std::string& what) {
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw MalformedFile(what + ": not valid JSON");
  return j;
}

inline json parse(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw MalformedFile(what + ": not valid JSON");
  return j;
}

inline const json& expect_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw SchemaViolation(ctx + ": expected an object");
  return j;
}

inline const json& expect_array(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw SchemaViolation(ctx + ": expected an array");
  return j;
}

// Strict field access: every required key present, no unknown keys.
inline void check_keys(const json& obj, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional, const std::string& ctx) {
  for (const char* key : required) {
    if (!obj.contains(key)) throw SchemaViolation(ctx + ": missing field '" + key + "'");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : required) known = known || it.key() == key;
    for (const char* key : optional) known = known || it.key() == key;
    if (!known) throw SchemaViolation(ctx + ": unknown field '" + it.key() + "'");
  }
}

inline double get_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw SchemaViolation(ctx + ": expected a number");
  return j.get<double>();
}

inline std::string get_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw SchemaViolation(ctx + ": expected a string");
  return j.get<std::string>();
}

inline Eigen::Vector3d get_vec3(const json& j, const std::string& ctx) {
  expect_array(j, ctx);
  if (j.size() != 3) throw SchemaViolation(ctx + ": expected 3 numbers");
  return {get_number(j[0], ctx), get_number(j[1], ctx), get_number(j[2], ctx)};
}

inline Eigen::Vector2d get_vec2(const json& j, const std::string& ctx) {
  expect_array(j, ctx);
  if (j.size() != 2) throw SchemaViolation(ctx + ": expected 2 numbers");
  return {get_number(j[0], ctx), get_number(j[1], ctx)};
}

// Pose object {"position":[x,y,z], "quaternion":[w,x,y,z]}. The quaternion
// must be unit within 1e-6; it is renormalized on load.
inline Pose get_pose(const json& j, const std::string& ctx) {
  expect_object(j, ctx);
  check_keys(j, {"position", "quaternion"}, {}, ctx);
  Pose p;
  p.position = get_vec3(j.at("position"), ctx + ".position");
  const json& q = expect_array(j.at("quaternion"), ctx + ".quaternion");
  if (q.size() != 4) throw SchemaViolation(ctx + ".quaternion: expected 4 numbers");
  Eigen::Quaterniond quat(get_number(q[0], ctx), get_number(q[1], ctx), get_number(q[2], ctx),
                          get_number(q[3], ctx));
  if (std::abs(quat.norm() - 1.0) > 1e-6)
    throw SchemaViolation(ctx + ".quaternion: not unit norm");
  p.orientation = quat.normalized();
  return p;
}

inline json pose_json(const Pose& p) {
  json j;
  j["position"] = {p.position.x(), p.position.y(), p.position.z()};
  j["quaternion"] = {p.orientation.w(), p.orientation.x(), p.orientation.y(),
                     p.orientation.z()};
  return j;
}

inline json vec3_json(const Eigen::Vector3d& v) { return json{v.x(), v.y(), v.z()}; }

}  // namespace lfo::jsonu
