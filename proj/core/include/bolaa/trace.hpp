#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bolaa/agent.hpp"
#include "bolaa/orchestrator.hpp"
#include "bolaa/trajectory.hpp"
#include "bolaa/types.hpp"

namespace bolaa {

inline constexpr int kTraceSchemaVersion = 1;

struct TraceHeader {
  int schema_version = kTraceSchemaVersion;
  std::string task_id;
  std::string config_name;
  std::string backend;
  EnvKind env_kind = EnvKind::shopping;
  int complexity = 1;
  std::uint64_t seed = 0;
  std::string config_fingerprint;  // 16 hex digits
  std::string config_json;         // compact JSON of the architecture

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

// One JSONL file: header line, one line per record, result footer line.
struct TraceFile {
  TraceHeader header;
  Trajectory trajectory;
  EpisodeResult result;

  friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

// "<arch>-<fingerprint>-<task_id>.trace.jsonl" with unsafe characters replaced.
std::string trace_file_name(std::string_view architecture, std::string_view fingerprint, std::string_view task_id);

// Sidecar holding the rendered prompts of the same episode.
std::filesystem::path prompt_log_path(const std::filesystem::path& trace_path);

std::string render_trace(const TraceFile& trace);
// Throws TraceError naming the 1-based line of the first problem.
TraceFile parse_trace(std::string_view text, const std::string& label = "<trace>");

void persist_trace(const std::filesystem::path& path, const TraceFile& trace);
TraceFile load_trace(const std::filesystem::path& path);

std::string render_prompt_log(const std::vector<PromptLogEntry>& entries);
std::vector<PromptLogEntry> parse_prompt_log(std::string_view text, const std::string& label = "<prompts>");

// Architecture-shape checks over one episode. Returns one message per
// violation; an empty list means the trace is consistent with the config.
// `prompts` may be null, in which case the fewshot check is skipped.
std::vector<std::string> check_solo_shape(const LAAConfig& config, const std::vector<Record>& records,
                                          const EpisodeResult& result, const std::vector<PromptLogEntry>* prompts);
std::vector<std::string> check_pool_shape(const LaborPool& pool, std::size_t max_steps,
                                          const std::vector<Record>& records, const EpisodeResult& result,
                                          const std::vector<PromptLogEntry>* prompts);

// Dispatches on the header's config (solo or pool).
std::vector<std::string> check_trace_shape(const TraceFile& trace, const std::vector<PromptLogEntry>* prompts);

}  // namespace bolaa
