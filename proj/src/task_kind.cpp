#include "lfo/task_kind.hpp"

#include <array>

namespace lfo {

namespace {
constexpr std::array<std::pair<TaskKind, std::string_view>, 7> kNames{{
    {TaskKind::Grasp, "Grasp"},
    {TaskKind::Release, "Release"},
    {TaskKind::PTG3, "PTG3"},
    {TaskKind::PTG5, "PTG5"},
    {TaskKind::PTG11, "PTG11"},
    {TaskKind::STG12, "STG12"},
    {TaskKind::PTG13, "PTG13"},
}};
}  // namespace

std::string_view to_string(TaskKind kind) {
  for (const auto& [k, n] : kNames)
    if (k == kind) return n;
  return "?";
}

std::optional<TaskKind> task_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

}  // namespace lfo
