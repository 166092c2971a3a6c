#include "lfo/taxonomy.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "lfo/errors.hpp"

namespace lfo::taxonomy {

namespace {

constexpr double kRankTol = 1e-8;  // singular-value cutoff for dimension counts
constexpr double kFeasTol = 1e-9;

int rank_of_rows(const std::vector<Eigen::Vector3d>& rows) {
  if (rows.empty()) return 0;
  Eigen::MatrixXd m(rows.size(), 3);
  for (size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTol * std::max(1.0, sv(0));
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

bool feasible(const Eigen::Vector3d& d, const std::vector<Eigen::Vector3d>& normals) {
  for (const auto& n : normals)
    if (n.dot(d) < -kFeasTol) return false;
  return true;
}

// Generator description of {v : n.v >= 0}: an orthonormal basis of the
// lineality space (the null space of the normal matrix) plus the extreme
// rays of the pointed remainder. In 3-D the extreme-ray candidates are the
// null direction crossed with each normal (rank 2) or pairwise normal cross
// products (rank 3).
struct Generators {
  std::vector<Eigen::Vector3d> lineality;
  std::vector<Eigen::Vector3d> rays;
};

Generators generators(const std::vector<Eigen::Vector3d>& normals) {
  Generators g;
  if (normals.empty()) {
    g.lineality = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
    return g;
  }

  Eigen::MatrixXd m(normals.size(), 3);
  for (size_t i = 0; i < normals.size(); ++i) m.row(i) = normals[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTol * std::max(1.0, sv(0));
  int rank = 0;
  for (int i = 0; i < sv.size() && i < 3; ++i)
    if (sv(i) > cutoff) ++rank;

  for (int i = rank; i < 3; ++i) g.lineality.push_back(svd.matrixV().col(i));

  std::vector<Eigen::Vector3d> candidates;
  if (rank == 1) {
    const Eigen::Vector3d w = svd.matrixV().col(0);
    candidates.push_back(w);
    candidates.push_back(-w);
  } else if (rank == 2) {
    const Eigen::Vector3d null_dir = svd.matrixV().col(2);
    for (const auto& n : normals) {
      Eigen::Vector3d d = null_dir.cross(n);
      const double len = d.norm();
      if (len < 1e-9) continue;
      d /= len;
      candidates.push_back(d);
      candidates.push_back(-d);
    }
  } else if (rank == 3) {
    for (size_t i = 0; i < normals.size(); ++i) {
      for (size_t j = i + 1; j < normals.size(); ++j) {
        Eigen::Vector3d d = normals[i].cross(normals[j]);
        const double len = d.norm();
        if (len < 1e-9) continue;
        d /= len;
        candidates.push_back(d);
        candidates.push_back(-d);
      }
    }
  }

  for (const auto& d : candidates)
    if (feasible(d, normals)) g.rays.push_back(d);
  return g;
}

// True when every point of the cone spanned by `gens` satisfies n.v >= 0.
bool implied_by(const Eigen::Vector3d& n, const Generators& gens) {
  for (const auto& b : gens.lineality)
    if (std::abs(n.dot(b)) > 1e-9) return false;
  for (const auto& r : gens.rays)
    if (n.dot(r) < -1e-9) return false;
  return true;
}

}  // namespace

DisplacementType displacement_type_from_dims(int lineality_dim, int span_dim) {
  struct Entry {
    int l, s;
    std::string_view name;
  };
  static constexpr std::array<Entry, 10> kTypes{{
      {0, 0, "Point"},
      {0, 1, "Ray"},
      {0, 2, "PlanarCone"},
      {0, 3, "SolidCone"},
      {1, 1, "Line"},
      {1, 2, "HalfPlane"},
      {1, 3, "WedgeSolid"},
      {2, 2, "Plane"},
      {2, 3, "HalfSpace"},
      {3, 3, "FullSpace"},
  }};
  for (const auto& e : kTypes)
    if (e.l == lineality_dim && e.s == span_dim)
      return DisplacementType{e.l, e.s, e.name};
  throw std::invalid_argument("no displacement type with lineality " +
                              std::to_string(lineality_dim) + ", span " +
                              std::to_string(span_dim));
}

std::vector<DisplacementType> all_displacement_types() {
  std::vector<DisplacementType> out;
  for (int l = 0; l <= 3; ++l)
    for (int s = l; s <= 3; ++s) out.push_back(displacement_type_from_dims(l, s));
  return out;
}

FeasibleCone feasible_cone(const ContactModel& contacts) {
  std::vector<Eigen::Vector3d> normals;
  auto add = [&normals](const Eigen::Vector3d& n) {
    const double len = n.norm();
    if (len < 1e-6) throw ZeroVector("feasible_cone: zero-length constraint normal");
    const Eigen::Vector3d u = n / len;
    for (const auto& existing : normals)
      if (existing.dot(u) > 1.0 - 1e-9) return;  // duplicate
    normals.push_back(u);
  };
  for (const auto& n : contacts.normals) add(n);
  for (const auto& n : contacts.semantic_normals) add(n);

  // Drop normals implied by the rest; the cone is unchanged at each removal.
  for (int i = static_cast<int>(normals.size()) - 1; i >= 0; --i) {
    std::vector<Eigen::Vector3d> others;
    others.reserve(normals.size() - 1);
    for (int j = 0; j < static_cast<int>(normals.size()); ++j)
      if (j != i) others.push_back(normals[j]);
    if (implied_by(normals[i], generators(others)))
      normals.erase(normals.begin() + i);
  }
  return FeasibleCone{std::move(normals)};
}

DisplacementType classify(const FeasibleCone& cone) {
  const Generators g = generators(cone.normals);
  const int lineality_dim = static_cast<int>(g.lineality.size());

  std::vector<Eigen::Vector3d> span_vectors = g.lineality;
  span_vectors.insert(span_vectors.end(), g.rays.begin(), g.rays.end());
  const int span_dim = rank_of_rows(span_vectors);

  return displacement_type_from_dims(lineality_dim, span_dim);
}

std::optional<TaskKind> transition_task(const DisplacementType& begin,
                                        const DisplacementType& end,
                                        bool has_upright_semantic) {
  const auto half_space = displacement_type_from_dims(2, 3);
  const auto full_space = displacement_type_from_dims(3, 3);
  const auto line = displacement_type_from_dims(1, 1);

  if (begin == half_space && end == full_space) return TaskKind::PTG11;
  if (begin == full_space && end == half_space) return TaskKind::PTG13;
  if (begin == full_space && end == full_space && has_upright_semantic) return TaskKind::STG12;
  if (begin == line && end == line) return TaskKind::PTG3;
  return std::nullopt;
}

std::optional<TaskKind> rotational_transition_task(const DisplacementType& begin,
                                                   const DisplacementType& end) {
  const auto line = displacement_type_from_dims(1, 1);
  if (begin == line && end == line) return TaskKind::PTG5;
  return std::nullopt;
}

}  // namespace lfo::taxonomy
