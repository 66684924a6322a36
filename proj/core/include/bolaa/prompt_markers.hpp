#pragma once

#include <string_view>

// Section headers and line labels shared by the prompt renderer and by the
// scripted backend, which needs to find the latest observation in a prompt.
namespace bolaa::markers {

inline constexpr std::string_view kExamples = "[Examples]";
inline constexpr std::string_view kEpisode = "[Current episode]";

inline constexpr std::string_view kInstruction = "Instruction:";
inline constexpr std::string_view kPlan = "Plan:";
inline constexpr std::string_view kThought = "Thought:";
inline constexpr std::string_view kAction = "Action:";
inline constexpr std::string_view kObservation = "Observation:";
inline constexpr std::string_view kInvalid = "Invalid output:";

inline constexpr std::string_view kActionCue = "Action:";
inline constexpr std::string_view kThinkCue = "Think:";
inline constexpr std::string_view kPlanCue = "Plan:";
inline constexpr std::string_view kSelectCue = "Agent:";

}  // namespace bolaa::markers
