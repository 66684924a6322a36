#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bolaa/benchmark_spec.hpp"
#include "bolaa/report.hpp"
#include "bolaa/trace.hpp"

namespace bolaa {

struct RunOptions {
  std::filesystem::path out_dir;
  std::size_t workers = 1;
  // Reuse trace files whose fingerprint matches instead of re-running them.
  bool resume = false;
  // Write a .prompts.jsonl sidecar next to each executed trace.
  bool debug_prompts = false;
  // Stop after this many newly executed episodes (the rest stay pending).
  std::optional<std::size_t> max_new_episodes;
};

struct RunSummary {
  ResultsTable table;  // over the finished episodes only
  std::vector<EpisodeEntry> entries;
  std::vector<std::filesystem::path> trace_paths;
  std::size_t executed = 0;
  std::size_t reused = 0;
  std::size_t pending = 0;
  // Backends whose every finished episode aborted on a backend error.
  std::vector<std::string> failed_backends;

  bool complete() const { return pending == 0; }
};

// Runs one episode of `arch` on `task` with a fresh environment.
EpisodeOutcome run_architecture_episode(const ArchitectureRef& arch, const Task& task, const BenchmarkSpec& spec,
                                        Backend& backend, std::shared_ptr<const Catalog> catalog,
                                        std::shared_ptr<const Corpus> corpus, PromptSink sink = {});

// Samples the tasks, runs every (backend, architecture, task) episode on a
// bounded worker pool and writes one trace per episode into out_dir.
// Episode aborts are scored 0 and counted; other errors stop the batch.
RunSummary run_benchmark(const BenchmarkSpec& spec, const RunOptions& options);

// Aggregates every *.trace.jsonl in `dir`. Columns follow the canonical
// architecture order, then BOLAA, then other names alphabetically.
ResultsTable table_from_traces(const std::filesystem::path& dir);

}  // namespace bolaa
