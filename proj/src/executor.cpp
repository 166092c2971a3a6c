#include "lfo/executor.hpp"

#include <cmath>
#include <sstream>

#include "lfo/skills.hpp"

namespace lfo {

namespace {

constexpr double kAttachRadius = 0.25;  // m, hand-to-object-center at grasp
constexpr double kContinuityRadius = 0.75;  // rad or m, tracking solves stay local

std::string format_aperture_event(double aperture) {
  std::ostringstream s;
  s << "grip:" << aperture;
  return s.str();
}

void append_event(std::optional<std::string>& slot, const std::string& event) {
  if (slot)
    *slot += ";" + event;
  else
    slot = event;
}

// Single-execution state machine: owns the trajectory being built, the live
// joint state, the grip, and the held object.
class Execution {
 public:
  Execution(const RobotModel& model, const Environment& env, const ExecOptions& opts)
      : model_(model), env_(env), opts_(opts) {
    strength_ = opts.laban_strength.value_or(model.default_strength());
    traj_.control_period = opts.control_period;
    for (const auto& j : model.joints) traj_.joint_names.push_back(j.name);

    q_ = model.midpoint_state();
    achieved_ = fk(model_, q_);
    commanded_ = achieved_;
    push_sample(q_, std::nullopt);
  }

  ExecResult run(const TaskSequence& seq) {
    for (size_t i = 0; i < seq.steps.size(); ++i) {
      task_index_ = static_cast<int>(i);
      step_report_ = StepReport{seq.steps[i].kind, 0, 0, {}};
      run_step(seq.steps[i]);
      report_.steps.push_back(std::move(step_report_));
    }
    report_.final_objects = env_.objects;
    return ExecResult{std::move(traj_), std::move(report_)};
  }

 private:
  void run_step(const TaskStep& step) {
    SkillParams params = step.params;
    // Displacements and via points are demonstration-relative; starts are
    // live. Grasp keeps its demonstrated pose, PTG13 re-anchors itself.
    switch (step.kind) {
      case TaskKind::Release:
      case TaskKind::PTG11:
      case TaskKind::STG12:
      case TaskKind::PTG3:
      case TaskKind::PTG5:
        params.start_hand_pose = commanded_;
        break;
      case TaskKind::Grasp:
      case TaskKind::PTG13:
        break;
    }

    switch (step.kind) {
      case TaskKind::Grasp: {
        const auto wps = skills::grasp_waypoints(params);
        move_to(wps[0].pose, params.laban_start, true);
        move_to(wps[1].pose, params.laban_start, false);
        set_aperture(wps[2].aperture);
        attach_nearest_object();
        break;
      }
      case TaskKind::Release: {
        const auto wps = skills::release_waypoints(params);
        move_to(wps[0].pose, params.laban_start, true);
        set_aperture(1.0);
        detach_object();
        move_to(wps[1].pose, params.laban_start, false);
        break;
      }
      case TaskKind::PTG11:
      case TaskKind::STG12:
      case TaskKind::PTG3:
      case TaskKind::PTG5: {
        std::vector<skills::HandTarget> wps;
        if (step.kind == TaskKind::PTG11) wps = skills::ptg11_waypoints(params);
        if (step.kind == TaskKind::STG12) wps = skills::stg12_waypoints(params);
        if (step.kind == TaskKind::PTG3) wps = skills::ptg3_waypoints(params);
        if (step.kind == TaskKind::PTG5) wps = skills::ptg5_waypoints(params);
        for (size_t w = 0; w < wps.size(); ++w)
          move_to(wps[w].pose, params.laban_start, w == 0);
        break;
      }
      case TaskKind::PTG13: {
        skills::Ptg13Stepper stepper(params);
        bool first = true;
        while (true) {
          skills::SkillState state;
          state.hand_pose = commanded_;
          state.effort = current_effort();
          state.step_index = stepper.descent_steps();
          const skills::SkillOutput out = stepper.step(state);
          if (out.done) {
            if (!traj_.samples.empty())
              append_event(traj_.samples.back().event, out.note.value_or("hit_detected"));
            step_report_.events.push_back("hit_detected");
            report_.hit_events += 1;
            break;
          }
          move_to(out.target.pose, params.laban_start, first);
          first = false;
        }
        break;
      }
    }
  }

  // Bounds shrunk to a window around the current state: interpolating to a
  // far-branch solution would sweep the hand across the workspace.
  std::vector<laban::Interval> local_bounds() const {
    std::vector<laban::Interval> out = model_.hard_intervals();
    for (int i = 0; i < model_.dof(); ++i) {
      out[i].lo = std::max(out[i].lo, q_[i] - kContinuityRadius);
      out[i].hi = std::min(out[i].hi, q_[i] + kContinuityRadius);
    }
    return out;
  }

  bool near_current(const JointState& q) const {
    return (q - q_).cwiseAbs().maxCoeff() <= kContinuityRadius;
  }

  // The step's first waypoint per the footnote rule: constrained solve from
  // the bound midpoints. When that lands in a distant branch, prefer a
  // solution of the same constrained problem seeded at the current posture.
  IkSolution constrained_first(const Pose& target, const laban::LabanPose& laban_start,
                               laban::ConstraintStrength strength, int& iterations) {
    IkSolution sol = initial_posture(model_, target, laban_start, strength);
    iterations += sol.iterations;
    if (near_current(sol.q)) return sol;
    try {
      const auto bounds = model_.laban_bounds(laban_start, strength);
      JointState seed = q_;
      for (int i = 0; i < model_.dof(); ++i)
        seed[i] = std::clamp(q_[i], bounds[i].lo, bounds[i].hi);
      IkSolution warm = solve_ik(model_, target, seed, bounds);
      iterations += warm.iterations;
      return warm;
    } catch (const NoConvergence&) {
      return sol;
    }
  }

  // Solve IK for `target` and interpolate to the solution in joint space.
  // The first waypoint of a step gets the Labanotation-constrained initial
  // posture; on failure it is retried unconstrained and flagged.
  void move_to(const Pose& target, const laban::LabanPose& laban_start, bool first_of_step) {
    IkSolution sol;
    std::optional<std::string> arrival_event;
    int extra_iterations = 0;
    try {
      if (first_of_step) {
        try {
          sol = constrained_first(target, laban_start, strength_, extra_iterations);
        } catch (const NoConvergence&) {
          if (strength_ == laban::ConstraintStrength::None) throw;
          sol = constrained_first(target, laban_start, laban::ConstraintStrength::None,
                                  extra_iterations);
          arrival_event = "laban_relaxed";
          report_.laban_relaxations += 1;
          step_report_.events.push_back("laban_relaxed");
        }
        sol.iterations = extra_iterations;
      } else {
        try {
          sol = solve_ik(model_, target, q_, local_bounds());
        } catch (const NoConvergence&) {
          sol = solve_ik(model_, target, q_);
        }
      }
    } catch (const NoConvergence& failure) {
      std::ostringstream what;
      what << "IK failure at task " << task_index_ << " waypoint " << step_report_.waypoints
           << ": pos_err=" << failure.pos_err << " rot_err=" << failure.rot_err;
      throw IkFailure(what.str(), task_index_, step_report_.waypoints, failure.pos_err,
                      failure.rot_err);
    }

    step_report_.waypoints += 1;
    step_report_.ik_iterations += sol.iterations;
    interpolate_to(sol.q, arrival_event);
    commanded_ = target;
  }

  // Linear joint-space interpolation at the control period; segment duration
  // is set by the slowest joint at the speed limit, rounded up to whole
  // periods. Endpoint values are emitted exactly.
  void interpolate_to(const JointState& q_target, std::optional<std::string> arrival_event) {
    const Eigen::VectorXd delta = q_target - q_;
    const double biggest = delta.cwiseAbs().maxCoeff();
    const double per_period = opts_.joint_speed_limit * opts_.control_period;
    int n = static_cast<int>(std::ceil(biggest / per_period));
    if (biggest <= 0.0) n = 0;
    if (n == 0) {
      if (arrival_event) push_sample(q_, arrival_event);
      q_ = q_target;
      return;
    }
    for (int s = 1; s <= n; ++s) {
      const JointState qs = (s == n) ? q_target : JointState(q_ + delta * (double(s) / n));
      push_sample(qs, s == n ? arrival_event : std::nullopt);
    }
    q_ = q_target;
  }

  void push_sample(const JointState& q, std::optional<std::string> event) {
    achieved_ = fk(model_, q);
    if (held_) {
      env_.objects[*held_].pose = achieved_ * held_offset_;
    }
    TrajectorySample sample;
    sample.t = double(traj_.samples.size()) * opts_.control_period;
    sample.q = q;
    sample.ee_pose = achieved_;
    sample.effort = current_effort();
    sample.task_index = task_index_;
    sample.event = std::move(event);
    traj_.samples.push_back(std::move(sample));
  }

  double current_effort() const {
    std::optional<SceneObject> held;
    if (held_) held = env_.objects[*held_];
    return simulate_effort(env_, skills::HandTarget{achieved_, aperture_}, held);
  }

  void set_aperture(double aperture) {
    if (aperture == aperture_) return;
    aperture_ = aperture;
    push_sample(q_, format_aperture_event(aperture));
  }

  void attach_nearest_object() {
    int best = -1;
    double best_dist = kAttachRadius;
    for (size_t i = 0; i < env_.objects.size(); ++i) {
      const double d = (env_.objects[i].pose.position - commanded_.position).norm();
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) return;
    held_ = best;
    held_offset_ = achieved_.inverse() * env_.objects[best].pose;
    step_report_.events.push_back("attached:" + env_.objects[best].name);
  }

  void detach_object() {
    if (!held_) return;
    step_report_.events.push_back("released:" + env_.objects[*held_].name);
    held_.reset();
  }

  const RobotModel& model_;
  Environment env_;
  ExecOptions opts_;
  laban::ConstraintStrength strength_ = laban::ConstraintStrength::None;

  Trajectory traj_;
  ExecutionReport report_;
  StepReport step_report_;
  int task_index_ = 0;

  JointState q_;
  Pose achieved_;
  Pose commanded_;
  double aperture_ = 1.0;
  std::optional<int> held_;
  Pose held_offset_;
};

}  // namespace

std::vector<TaskKind> ExecutionReport::kinds() const {
  std::vector<TaskKind> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.kind);
  return out;
}

bool exactly_equal(const Trajectory& a, const Trajectory& b) {
  if (a.control_period != b.control_period) return false;
  if (a.joint_names != b.joint_names) return false;
  if (a.samples.size() != b.samples.size()) return false;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    const auto& x = a.samples[i];
    const auto& y = b.samples[i];
    if (x.t != y.t || x.effort != y.effort || x.task_index != y.task_index) return false;
    if (x.event != y.event) return false;
    if (x.q.size() != y.q.size() || !(x.q.array() == y.q.array()).all()) return false;
    if (!exactly_equal(x.ee_pose, y.ee_pose)) return false;
  }
  return true;
}

ExecResult execute(const RobotModel& model, const TaskSequence& seq, const Environment& env,
                   const ExecOptions& opts) {
  const ValidationReport report = validate_sequence(seq);
  if (!report.ok()) {
    throw InvariantViolation("execute: task sequence is invalid", report);
  }
  // Harmless when already in the robot frame: the transform is then identity.
  const TaskSequence robot_seq = to_robot_frame(seq);

  Execution execution(model, env, opts);
  return execution.run(robot_seq);
}

std::vector<ClearanceViolation> check_clearance(const Trajectory& traj, const Environment& env,
                                                double margin) {
  std::vector<ClearanceViolation> out;
  for (size_t s = 0; s < traj.samples.size(); ++s) {
    const Eigen::Vector3d& p = traj.samples[s].ee_pose.position;
    for (size_t b = 0; b < env.obstacles.size(); ++b) {
      const auto& box = env.obstacles[b];
      const bool inside = (p.array() > (box.min.array() - margin)).all() &&
                          (p.array() < (box.max.array() + margin)).all();
      if (inside) out.push_back({static_cast<int>(s), static_cast<int>(b)});
    }
  }
  return out;
}

}  // namespace lfo
