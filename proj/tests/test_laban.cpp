#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "lfo/kinematics.hpp"
#include "lfo/laban.hpp"

using namespace lfo;
using laban::Direction;

namespace {

// Exhaustive nearest-direction reference; the implementation narrows the
// candidate set analytically, so this stays an independent check.
Direction brute_force_quantize(const Eigen::Vector3d& v) {
  const Eigen::Vector3d u = v.normalized();
  Direction best = Direction::PlaceHigh;
  double best_dot = -2.0;
  for (Direction d : laban::all_directions()) {
    const double dot = u.dot(laban::direction_vector(d));
    if (dot > best_dot) {
      best_dot = dot;
      best = d;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("canonical directions are distinct unit vectors") {
  std::set<std::string> names;
  for (Direction d : laban::all_directions()) {
    const Eigen::Vector3d& v = laban::direction_vector(d);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    names.insert(std::string(laban::direction_name(d)));
    for (Direction e : laban::all_directions()) {
      if (d == e) continue;
      CHECK((laban::direction_vector(e) - v).norm() > 1e-6);
    }
  }
  CHECK(names.size() == 26);
}

TEST_CASE("direction set is closed under left/right mirroring") {
  for (Direction d : laban::all_directions()) {
    Eigen::Vector3d mirrored = laban::direction_vector(d);
    mirrored.y() = -mirrored.y();
    bool found = false;
    for (Direction e : laban::all_directions())
      found = found || (laban::direction_vector(e) - mirrored).norm() < 1e-12;
    CHECK(found);
  }
}

TEST_CASE("round-trip between names and enum values") {
  for (Direction d : laban::all_directions()) {
    auto back = laban::direction_from_name(laban::direction_name(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  CHECK(!laban::direction_from_name("sideways").has_value());
}

TEST_CASE("quantize_direction fixed points") {
  for (Direction d : laban::all_directions())
    CHECK(laban::quantize_direction(laban::direction_vector(d)) == d);
}

TEST_CASE("quantize_direction canonical examples") {
  CHECK(laban::quantize_direction({0, 0, 1}) == Direction::PlaceHigh);
  CHECK(laban::quantize_direction({1, 0, 0}) == Direction::ForwardMiddle);
  const Eigen::Vector3d v = Eigen::Vector3d(0.7, 0.65, 0.05).normalized();
  CHECK(laban::quantize_direction(v) == brute_force_quantize(v));
  CHECK(laban::quantize_direction(v) == Direction::ForwardLeftMiddle);
}

TEST_CASE("quantize_direction equals the exhaustive oracle") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const Eigen::Vector3d v = random_unit(rng);
    CHECK(laban::quantize_direction(v) == brute_force_quantize(v));
  }
}

TEST_CASE("quantize_direction is invariant to positive scaling") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d v = random_unit(rng);
    CHECK(laban::quantize_direction(v) == laban::quantize_direction(scale(rng) * v));
  }
}

TEST_CASE("quantize_direction rejects near-zero input") {
  CHECK_THROWS_AS(laban::quantize_direction({1e-8, 0, 0}), ZeroVector);
}

TEST_CASE("joint_ranges strengths") {
  const RobotModel fetch = load_robot_file(fixture("fetch_like.robot"));
  const RobotModel nextage = load_robot_file(fixture("nextage_like.robot"));
  const laban::LabanPose pose{Direction::ForwardMiddle, Direction::ForwardHigh};

  SUBCASE("None returns the hard limits") {
    const auto limits = fetch.hard_limits();
    const auto out = laban::joint_ranges(pose, fetch.laban_table,
                                         laban::ConstraintStrength::None, limits,
                                         fetch.elbow_joint);
    for (size_t i = 0; i < limits.size(); ++i) CHECK(out[i] == limits[i].hard);
  }

  SUBCASE("Full narrows exactly four joints") {
    const auto limits = fetch.hard_limits();
    const auto out = laban::joint_ranges(pose, fetch.laban_table,
                                         laban::ConstraintStrength::Full, limits,
                                         fetch.elbow_joint);
    int narrowed = 0;
    for (size_t i = 0; i < limits.size(); ++i)
      if (!(out[i] == limits[i].hard)) ++narrowed;
    CHECK(narrowed == 4);
  }

  SUBCASE("Elbow clamps the elbow to non-negative values") {
    const auto limits = nextage.hard_limits();
    const auto out = laban::joint_ranges(pose, nextage.laban_table,
                                         laban::ConstraintStrength::Elbow, limits,
                                         nextage.elbow_joint);
    for (size_t i = 0; i < limits.size(); ++i) {
      if (limits[i].name == *nextage.elbow_joint) {
        CHECK(out[i].lo == 0.0);
        CHECK(out[i].hi == limits[i].hard.hi);
      } else {
        CHECK(out[i] == limits[i].hard);
      }
    }
  }

  SUBCASE("missing table entry names the limb and direction") {
    const laban::LabanPose unreachable{Direction::BackMiddle, Direction::ForwardMiddle};
    const auto limits = nextage.hard_limits();
    CHECK_THROWS_WITH_AS(
        laban::joint_ranges(unreachable, nextage.laban_table, laban::ConstraintStrength::Full,
                            limits, nextage.elbow_joint),
        doctest::Contains("back_middle"), laban::MissingTableEntry);
  }
}

TEST_CASE("joint_ranges output always stays inside hard limits") {
  const RobotModel fetch = load_robot_file(fixture("fetch_like.robot"));
  const auto limits = fetch.hard_limits();
  for (Direction upper : laban::all_directions()) {
    for (laban::ConstraintStrength s :
         {laban::ConstraintStrength::None, laban::ConstraintStrength::Elbow,
          laban::ConstraintStrength::Full}) {
      laban::LabanPose pose{upper, Direction::ForwardMiddle};
      std::vector<laban::Interval> out;
      try {
        out = laban::joint_ranges(pose, fetch.laban_table, s, limits, fetch.elbow_joint);
      } catch (const laban::MissingTableEntry&) {
        continue;  // direction not realizable on this robot
      }
      for (size_t i = 0; i < limits.size(); ++i) {
        CHECK(out[i].lo >= limits[i].hard.lo);
        CHECK(out[i].hi <= limits[i].hard.hi);
        CHECK(out[i].lo <= out[i].hi);
      }
    }
  }
}
