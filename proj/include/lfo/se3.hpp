#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace lfo {

// Rigid pose: position in meters plus a unit quaternion.
// Quaternions are kept normalized; serialization order is (w, x, y, z).
struct Pose {
  Eigen::Vector3d position{0.0, 0.0, 0.0};
  Eigen::Quaterniond orientation{1.0, 0.0, 0.0, 0.0};

  static Pose identity() { return Pose{}; }

  // Composition: this * rhs applies rhs first, then this.
  Pose operator*(const Pose& rhs) const {
    Pose out;
    out.position = position + orientation * rhs.position;
    out.orientation = (orientation * rhs.orientation).normalized();
    return out;
  }

  Pose inverse() const {
    Pose out;
    out.orientation = orientation.conjugate();
    out.position = -(out.orientation * position);
    return out;
  }

  // Transform a point.
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return position + orientation * p;
  }

  // Transform a free vector (rotation only).
  Eigen::Vector3d rotate(const Eigen::Vector3d& v) const {
    return orientation * v;
  }
};

// Angle of the relative rotation between two orientations, in [0, pi].
inline double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  Eigen::Quaterniond e = (a * b.conjugate()).normalized();
  double w = std::abs(e.w());
  double v = e.vec().norm();
  return 2.0 * std::atan2(v, w);
}

// Axis-angle vector of the rotation taking `from` to `to`, expressed in the
// frame both are measured in. Smooth through the identity.
inline Eigen::Vector3d rotation_log(const Eigen::Quaterniond& from, const Eigen::Quaterniond& to) {
  Eigen::Quaterniond e = (to * from.conjugate()).normalized();
  if (e.w() < 0.0) e.coeffs() = -e.coeffs();
  const double vn = e.vec().norm();
  if (vn < 1e-12) return 2.0 * e.vec();
  const double angle = 2.0 * std::atan2(vn, e.w());
  return (angle / vn) * e.vec();
}

// Bitwise equality, for round-trip checks.
inline bool exactly_equal(const Pose& a, const Pose& b) {
  return a.position == b.position && a.orientation.coeffs() == b.orientation.coeffs();
}

inline bool approx_equal(const Pose& a, const Pose& b, double pos_tol, double rot_tol) {
  return (a.position - b.position).norm() <= pos_tol &&
         rotation_angle(a.orientation, b.orientation) <= rot_tol;
}

}  // namespace lfo
