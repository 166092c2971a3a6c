#include "lfo/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "json_util.hpp"

namespace lfo {

namespace {

using jsonu::json;

struct JointFrame {
  Eigen::Vector3d origin;  // world position of the joint axis
  Eigen::Vector3d axis;    // world direction of the joint axis
};

// Composes the chain; optionally records the world frame of every joint.
Pose fk_unchecked(const RobotModel& model, const JointState& q, std::vector<JointFrame>* frames) {
  Pose t;
  for (int i = 0; i < model.dof(); ++i) {
    const Joint& joint = model.joints[i];
    t = t * joint.origin;
    if (frames) frames->push_back({t.position, t.rotate(joint.axis)});
    if (joint.type == JointType::Revolute) {
      Pose motion;
      motion.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(q[i], joint.axis));
      t = t * motion;
    } else {
      Pose motion;
      motion.position = joint.axis * q[i];
      t = t * motion;
    }
  }
  return t * model.end_effector_offset;
}

double clamp_to(double v, const laban::Interval& iv) { return std::clamp(v, iv.lo, iv.hi); }

JointState clamp_state(const JointState& q, std::span<const laban::Interval> bounds) {
  JointState out = q;
  for (int i = 0; i < out.size(); ++i) out[i] = clamp_to(out[i], bounds[i]);
  return out;
}

// Radical-inverse (Halton) sequence: deterministic restart perturbations.
double halton(int index, int base) {
  double f = 1.0;
  double r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

laban::Interval parse_limits(const json& j, const std::string& ctx) {
  jsonu::expect_array(j, ctx);
  if (j.size() != 2) throw SchemaViolation(ctx + ": expected [lo, hi]");
  laban::Interval iv{jsonu::get_number(j[0], ctx), jsonu::get_number(j[1], ctx)};
  return iv;
}

void parse_table_side(const json& j, const std::string& ctx, const RobotModel& model,
                      std::map<laban::Direction, std::map<std::string, laban::Interval>>& side) {
  jsonu::expect_object(j, ctx);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto dir = laban::direction_from_name(it.key());
    if (!dir) throw SchemaViolation(ctx + ": unknown direction name '" + it.key() + "'");
    const json& entry = jsonu::expect_object(it.value(), ctx + "." + it.key());
    std::map<std::string, laban::Interval> ranges;
    for (auto jt = entry.begin(); jt != entry.end(); ++jt) {
      const auto joint = std::find_if(model.joints.begin(), model.joints.end(),
                                      [&](const Joint& x) { return x.name == jt.key(); });
      if (joint == model.joints.end())
        throw SchemaViolation(ctx + "." + it.key() + ": unknown joint '" + jt.key() + "'");
      laban::Interval iv = parse_limits(jt.value(), ctx + "." + it.key() + "." + jt.key());
      if (iv.lo > iv.hi)
        throw SchemaViolation(ctx + "." + it.key() + "." + jt.key() + ": lo > hi");
      if (iv.lo < joint->limits.lo - 1e-12 || iv.hi > joint->limits.hi + 1e-12)
        throw SchemaViolation(ctx + "." + it.key() + "." + jt.key() +
                              ": interval outside hard joint limits");
      ranges[jt.key()] = iv;
    }
    side[*dir] = ranges;
  }
}

}  // namespace

std::vector<laban::JointLimit> RobotModel::hard_limits() const {
  std::vector<laban::JointLimit> out;
  out.reserve(joints.size());
  for (const auto& j : joints) out.push_back({j.name, j.limits});
  return out;
}

std::vector<laban::Interval> RobotModel::hard_intervals() const {
  std::vector<laban::Interval> out;
  out.reserve(joints.size());
  for (const auto& j : joints) out.push_back(j.limits);
  return out;
}

JointState RobotModel::midpoint_state() const {
  JointState q(dof());
  for (int i = 0; i < dof(); ++i) q[i] = joints[i].limits.mid();
  return q;
}

laban::ConstraintStrength RobotModel::default_strength() const {
  if (dof() >= 7) return laban::ConstraintStrength::Full;
  return elbow_joint ? laban::ConstraintStrength::Elbow : laban::ConstraintStrength::None;
}

std::vector<laban::Interval> RobotModel::laban_bounds(const laban::LabanPose& pose,
                                                      laban::ConstraintStrength strength) const {
  const auto limits = hard_limits();
  return laban::joint_ranges(pose, laban_table, strength, limits, elbow_joint);
}

RobotModel load_robot(std::istream& source) {
  const json j = jsonu::parse(source, "robot description");
  jsonu::expect_object(j, "robot description");
  jsonu::check_keys(j, {"name", "joints", "end_effector"}, {"laban_table", "labels"},
                    "robot description");

  RobotModel model;
  model.name = jsonu::get_string(j.at("name"), "name");

  const json& joints = jsonu::expect_array(j.at("joints"), "joints");
  if (joints.empty()) throw SchemaViolation("joints: empty chain");
  std::map<std::string, int> children;
  for (size_t i = 0; i < joints.size(); ++i) {
    const std::string ctx = "joints[" + std::to_string(i) + "]";
    const json& js = jsonu::expect_object(joints[i], ctx);
    jsonu::check_keys(js, {"name", "type", "axis", "origin", "limits"}, {"parent"}, ctx);

    Joint joint;
    joint.name = jsonu::get_string(js.at("name"), ctx + ".name");
    for (const auto& existing : model.joints)
      if (existing.name == joint.name)
        throw SchemaViolation(ctx + ".name: duplicate joint name '" + joint.name + "'");
    const std::string type = jsonu::get_string(js.at("type"), ctx + ".type");
    if (type == "revolute")
      joint.type = JointType::Revolute;
    else if (type == "prismatic")
      joint.type = JointType::Prismatic;
    else
      throw SchemaViolation(ctx + ".type: unknown joint type '" + type + "'");
    joint.axis = jsonu::get_vec3(js.at("axis"), ctx + ".axis");
    if (std::abs(joint.axis.norm() - 1.0) > 1e-6)
      throw SchemaViolation(ctx + ".axis: not unit norm");
    joint.axis.normalize();
    joint.origin = jsonu::get_pose(js.at("origin"), ctx + ".origin");
    joint.limits = parse_limits(js.at("limits"), ctx + ".limits");
    if (!(joint.limits.lo < joint.limits.hi))
      throw SchemaViolation(ctx + ".limits: lo must be < hi");

    // A serial chain lists joints parent-to-child; a parent with two children
    // is a tree, which this engine does not model.
    const std::string prev = model.joints.empty() ? "base" : model.joints.back().name;
    std::string parent = prev;
    if (js.contains("parent")) parent = jsonu::get_string(js.at("parent"), ctx + ".parent");
    if (parent != prev) {
      const bool known =
          parent == "base" ||
          std::any_of(model.joints.begin(), model.joints.end(),
                      [&](const Joint& x) { return x.name == parent; });
      if (!known) throw SchemaViolation(ctx + ".parent: unknown parent '" + parent + "'");
      if (children[parent] > 0)
        throw BranchingChain("link '" + parent + "' has two children; chain must be serial");
      throw SchemaViolation(ctx + ".parent: joints must be listed parent-to-child");
    }
    children[parent] += 1;
    if (children[parent] > 1)
      throw BranchingChain("link '" + parent + "' has two children; chain must be serial");
    model.joints.push_back(std::move(joint));
  }

  model.end_effector_offset = jsonu::get_pose(j.at("end_effector"), "end_effector");

  if (j.contains("labels")) {
    const json& labels = jsonu::expect_object(j.at("labels"), "labels");
    jsonu::check_keys(labels, {}, {"elbow_joint"}, "labels");
    if (labels.contains("elbow_joint")) {
      const std::string elbow = jsonu::get_string(labels.at("elbow_joint"), "labels.elbow_joint");
      const bool known = std::any_of(model.joints.begin(), model.joints.end(),
                                     [&](const Joint& x) { return x.name == elbow; });
      if (!known) throw SchemaViolation("labels.elbow_joint: unknown joint '" + elbow + "'");
      model.elbow_joint = elbow;
    }
  }

  if (j.contains("laban_table")) {
    const json& table = jsonu::expect_object(j.at("laban_table"), "laban_table");
    jsonu::check_keys(table, {}, {"upper_arm", "lower_arm"}, "laban_table");
    if (table.contains("upper_arm"))
      parse_table_side(table.at("upper_arm"), "laban_table.upper_arm", model,
                       model.laban_table.upper_arm);
    if (table.contains("lower_arm"))
      parse_table_side(table.at("lower_arm"), "laban_table.lower_arm", model,
                       model.laban_table.lower_arm);
  }
  return model;
}

RobotModel load_robot(const std::string& text) {
  std::istringstream in(text);
  return load_robot(in);
}

RobotModel load_robot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFile("cannot open robot description '" + path + "'");
  return load_robot(in);
}

Pose fk(const RobotModel& model, const JointState& q) {
  if (q.size() != model.dof())
    throw JointLimitViolation("fk: joint state size " + std::to_string(q.size()) +
                              " does not match " + std::to_string(model.dof()) + " joints");
  for (int i = 0; i < model.dof(); ++i) {
    const auto& iv = model.joints[i].limits;
    if (q[i] < iv.lo - 1e-9 || q[i] > iv.hi + 1e-9)
      throw JointLimitViolation("fk: joint '" + model.joints[i].name + "' value " +
                                std::to_string(q[i]) + " outside [" + std::to_string(iv.lo) +
                                ", " + std::to_string(iv.hi) + "]");
  }
  return fk_unchecked(model, q, nullptr);
}

Eigen::Matrix<double, 6, Eigen::Dynamic> jacobian(const RobotModel& model, const JointState& q) {
  std::vector<JointFrame> frames;
  frames.reserve(model.dof());
  const Pose ee = fk_unchecked(model, q, &frames);

  Eigen::Matrix<double, 6, Eigen::Dynamic> jac(6, model.dof());
  for (int i = 0; i < model.dof(); ++i) {
    if (model.joints[i].type == JointType::Revolute) {
      jac.col(i).head<3>() = frames[i].axis.cross(ee.position - frames[i].origin);
      jac.col(i).tail<3>() = frames[i].axis;
    } else {
      jac.col(i).head<3>() = frames[i].axis;
      jac.col(i).tail<3>().setZero();
    }
  }
  return jac;
}

IkSolution solve_ik(const RobotModel& model, const Pose& target, const JointState& seed,
                    std::span<const laban::Interval> bounds, const IkOptions& opts) {
  const int n = model.dof();
  if (seed.size() != n || static_cast<int>(bounds.size()) != n)
    throw std::invalid_argument("solve_ik: seed/bounds size does not match the model");
  for (int i = 0; i < n; ++i) {
    if (bounds[i].lo > bounds[i].hi)
      throw std::invalid_argument("solve_ik: empty bound interval for joint " + std::to_string(i));
    if (bounds[i].lo < model.joints[i].limits.lo - 1e-9 ||
        bounds[i].hi > model.joints[i].limits.hi + 1e-9)
      throw std::invalid_argument("solve_ik: bounds exceed hard limits for joint '" +
                                  model.joints[i].name + "'");
  }

  JointState best_q = clamp_state(seed, bounds);
  double best_score = std::numeric_limits<double>::infinity();
  double best_pos = 0.0, best_rot = 0.0;
  int total_steps = 0;

  // Restart seeds and stall-escape reseeds draw from one fixed Halton
  // sequence scaled to the bound widths, so solves are reproducible.
  int halton_index = std::max(1, opts.restarts);
  constexpr int kStallWindow = 15;

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    JointState q = seed;
    if (restart > 0) {
      for (int i = 0; i < n; ++i) {
        const double u = halton(restart, kPrimes[i % std::size(kPrimes)]);
        q[i] = seed[i] + (u - 0.5) * bounds[i].width();
      }
    }
    q = clamp_state(q, bounds);

    double restart_best = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int iter = 0; iter <= opts.max_iters; ++iter) {
      const Pose pose = fk_unchecked(model, q, nullptr);
      Eigen::Matrix<double, 6, 1> err;
      err.head<3>() = target.position - pose.position;
      err.tail<3>() = rotation_log(pose.orientation, target.orientation);
      const double pos_err = err.head<3>().norm();
      const double rot_err = err.tail<3>().norm();

      const double score = pos_err / opts.pos_tol + rot_err / opts.rot_tol;
      if (score < best_score) {
        best_score = score;
        best_q = q;
        best_pos = pos_err;
        best_rot = rot_err;
      }
      if (pos_err < opts.pos_tol && rot_err < opts.rot_tol)
        return IkSolution{q, pos_err, rot_err, total_steps};
      if (iter == opts.max_iters) break;

      // A stalled descent is stuck in the wrong solution branch; spend the
      // remaining budget from a fresh deterministic point instead.
      if (score < restart_best - 1e-9) {
        restart_best = score;
        stalled = 0;
      } else if (++stalled >= kStallWindow) {
        for (int i = 0; i < n; ++i) {
          const double u = halton(halton_index, kPrimes[i % std::size(kPrimes)]);
          q[i] = bounds[i].lo + u * bounds[i].width();
        }
        ++halton_index;
        restart_best = std::numeric_limits<double>::infinity();
        stalled = 0;
        continue;
      }

      auto jac = jacobian(model, q);
      // Joints pinned at a bound with the gradient pushing outward cannot
      // contribute; mask them so free joints own the error this step.
      const Eigen::VectorXd grad = jac.transpose() * err;
      for (int i = 0; i < n; ++i) {
        const bool at_lo = q[i] <= bounds[i].lo + 1e-12;
        const bool at_hi = q[i] >= bounds[i].hi - 1e-12;
        if ((at_lo && grad[i] < 0.0) || (at_hi && grad[i] > 0.0)) jac.col(i).setZero();
      }
      const Eigen::MatrixXd a =
          jac.transpose() * jac + (opts.damping * opts.damping) * identity;
      Eigen::VectorXd dq = a.ldlt().solve(jac.transpose() * err);
      const double biggest = dq.cwiseAbs().maxCoeff();
      if (biggest > opts.step_clamp) dq *= opts.step_clamp / biggest;
      q = clamp_state(q + dq, bounds);
      ++total_steps;
    }
  }

  std::ostringstream what;
  what << "IK did not converge: pos_err=" << best_pos << " m, rot_err=" << best_rot << " rad";
  throw NoConvergence(what.str(), best_q, best_pos, best_rot);
}

IkSolution solve_ik(const RobotModel& model, const Pose& target, const JointState& seed,
                    const IkOptions& opts) {
  const auto bounds = model.hard_intervals();
  return solve_ik(model, target, seed, bounds, opts);
}

IkSolution initial_posture(const RobotModel& model, const Pose& target,
                           const laban::LabanPose& pose, laban::ConstraintStrength strength,
                           const IkOptions& opts) {
  const auto bounds = model.laban_bounds(pose, strength);
  JointState seed(model.dof());
  for (int i = 0; i < model.dof(); ++i) seed[i] = bounds[i].mid();
  return solve_ik(model, target, seed, bounds, opts);
}

}  // namespace lfo
