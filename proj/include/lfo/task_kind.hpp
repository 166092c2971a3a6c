#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace lfo {

// Symbolic task vocabulary. Grasp/Release bracket a sequence; the PTG/STG
// kinds are the manipulation moves between them.
enum class TaskKind {
  Grasp,
  Release,
  PTG3,   // translate along a fixed axis (drawer)
  PTG5,   // rotate about a fixed hinge (door)
  PTG11,  // pick up
  STG12,  // bring, keeping the object upright
  PTG13,  // place with contact detection
};

std::string_view to_string(TaskKind kind);
std::optional<TaskKind> task_kind_from_string(std::string_view name);

inline bool is_manipulation(TaskKind kind) {
  return kind != TaskKind::Grasp && kind != TaskKind::Release;
}

}  // namespace lfo
