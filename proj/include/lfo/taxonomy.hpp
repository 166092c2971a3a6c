#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lfo/task_kind.hpp"

namespace lfo::taxonomy {

// Contact constraints on the instantaneous displacement of a manipulated
// object. Normals point to the feasible side; semantic normals come from the
// task meaning rather than physics, but constrain motion the same way.
struct ContactModel {
  std::vector<Eigen::Vector3d> normals;
  std::vector<Eigen::Vector3d> semantic_normals;
};

// H-representation of the feasible cone {v : n.v >= 0 for all n}, with
// duplicate and redundant normals removed.
struct FeasibleCone {
  std::vector<Eigen::Vector3d> normals;
};

// Class of a polyhedral convex cone by (lineality dim, span dim). The ten
// admissible pairs are exactly the pairs with lineality <= span.
struct DisplacementType {
  int lineality_dim = 3;
  int span_dim = 3;
  std::string_view name = "FullSpace";

  bool operator==(const DisplacementType& o) const {
    return lineality_dim == o.lineality_dim && span_dim == o.span_dim;
  }
};

// Lookup by dims; throws std::invalid_argument for inadmissible pairs.
DisplacementType displacement_type_from_dims(int lineality_dim, int span_dim);

// All ten types, in (lineality, span) lexicographic order.
std::vector<DisplacementType> all_displacement_types();

FeasibleCone feasible_cone(const ContactModel& contacts);

DisplacementType classify(const FeasibleCone& cone);

// Task implied by a begin -> end transition of the translation displacement
// class. Returns nullopt for transitions outside the implemented skill set.
std::optional<TaskKind> transition_task(const DisplacementType& begin,
                                        const DisplacementType& end,
                                        bool has_upright_semantic);

// Same transition rule applied to angular-velocity space.
std::optional<TaskKind> rotational_transition_task(const DisplacementType& begin,
                                                   const DisplacementType& end);

}  // namespace lfo::taxonomy
