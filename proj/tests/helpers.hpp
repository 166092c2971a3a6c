#pragma once

#include <random>
#include <string>

#include <Eigen/Core>

inline std::string fixture(const char* name) {
  return std::string(LFO_FIXTURE_DIR "/") + name;
}

inline Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Vector3d v;
  do {
    v = {gauss(rng), gauss(rng), gauss(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}
