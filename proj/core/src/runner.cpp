#include "bolaa/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "bolaa/errors.hpp"
#include "bolaa/fixtures.hpp"
#include "bolaa/sampling.hpp"
#include "bolaa/shopping_env.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

struct Job {
  std::size_t backend = 0;
  std::size_t arch = 0;
  std::size_t task = 0;
  std::string fingerprint;
  std::filesystem::path path;
};

enum class JobState { pending, reused, executed };

std::unique_ptr<Environment> make_env(const BenchmarkSpec& spec, std::shared_ptr<const Catalog> catalog,
                                      std::shared_ptr<const Corpus> corpus) {
  if (spec.env_kind == EnvKind::shopping) {
    ShoppingOptions opts;
    opts.price_gate = spec.limits.price_gate;
    return std::make_unique<ShoppingEnv>(std::move(catalog), opts);
  }
  return std::make_unique<WikiEnv>(std::move(corpus));
}

std::optional<TraceFile> try_reuse(const Job& job) {
  if (!std::filesystem::exists(job.path)) return std::nullopt;
  try {
    TraceFile t = load_trace(job.path);
    if (t.header.config_fingerprint != job.fingerprint) return std::nullopt;
    return t;
  } catch (const TraceError&) {
    return std::nullopt;  // partial file from an interrupted write; run it again
  }
}

int column_rank(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kCanonicalArchitectures); ++i) {
    if (kCanonicalArchitectures[i] == name) return static_cast<int>(i);
  }
  return name == kBolaaName ? static_cast<int>(std::size(kCanonicalArchitectures)) : 1000;
}

}  // namespace

EpisodeOutcome run_architecture_episode(const ArchitectureRef& arch, const Task& task, const BenchmarkSpec& spec,
                                        Backend& backend, std::shared_ptr<const Catalog> catalog,
                                        std::shared_ptr<const Corpus> corpus, PromptSink sink) {
  auto env = make_env(spec, std::move(catalog), std::move(corpus));
  EpisodeOptions episode;
  episode.generation.max_new_tokens = spec.limits.max_new_tokens;
  episode.parse_failure_cap = spec.limits.parse_failure_cap;
  episode.prompt_sink = std::move(sink);
  if (arch.solo) return run_episode(task, *arch.solo, *env, backend, episode);

  BolaaOptions options;
  options.max_steps = spec.limits.max_steps;
  options.context_limit = spec.limits.context_limit;
  options.policy = arch.selection;
  options.episode = std::move(episode);
  return run_bolaa_episode(*arch.pool, task, *env, backend, options);
}

RunSummary run_benchmark(const BenchmarkSpec& spec, const RunOptions& options) {
  validate_spec(spec);
  if (options.workers == 0) throw ConfigError("workers must be at least 1");
  const std::vector<Task> tasks = sample_tasks(load_universe(spec), spec.per_level_count, spec.levels, spec.seed);

  std::shared_ptr<const Catalog> catalog;
  std::shared_ptr<const Corpus> corpus;
  if (spec.env_kind == EnvKind::shopping) {
    catalog = load_spec_catalog(spec);
  } else {
    corpus = load_spec_corpus(spec);
  }

  std::vector<std::unique_ptr<Backend>> backends;
  for (const auto& ref : spec.backends) backends.push_back(make_backend(ref, tasks, catalog.get()));

  std::filesystem::create_directories(options.out_dir);
  std::vector<Job> jobs;
  for (std::size_t b = 0; b < spec.backends.size(); ++b) {
    for (std::size_t a = 0; a < spec.architectures.size(); ++a) {
      const std::string fp = detail::hex64(config_fingerprint(spec, spec.architectures[a], spec.backends[b]));
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        Job job{b, a, t, fp, {}};
        job.path = options.out_dir / trace_file_name(spec.architectures[a].name, fp, tasks[t].id);
        jobs.push_back(std::move(job));
      }
    }
  }

  std::vector<JobState> states(jobs.size(), JobState::pending);
  std::vector<EpisodeResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> started{0};
  std::atomic<bool> stop{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= jobs.size()) return;
      const Job& job = jobs[i];
      try {
        if (options.resume) {
          if (auto reused = try_reuse(job)) {
            results[i] = reused->result;
            states[i] = JobState::reused;
            continue;
          }
        }
        if (options.max_new_episodes && started++ >= *options.max_new_episodes) continue;

        const Task& task = tasks[job.task];
        const ArchitectureRef& arch = spec.architectures[job.arch];
        std::vector<PromptLogEntry> prompts;
        PromptSink sink;
        if (options.debug_prompts) sink = [&prompts](const PromptLogEntry& e) { prompts.push_back(e); };

        EpisodeOutcome outcome =
            run_architecture_episode(arch, task, spec, *backends[job.backend], catalog, corpus, std::move(sink));
        outcome.result.trajectory_ref = job.path.filename().string();

        TraceFile trace;
        trace.header.task_id = task.id;
        trace.header.config_name = arch.name;
        trace.header.backend = spec.backends[job.backend].name;
        trace.header.env_kind = spec.env_kind;
        trace.header.complexity = task_complexity(task);
        trace.header.seed = spec.seed;
        trace.header.config_fingerprint = job.fingerprint;
        trace.header.config_json = architecture_json(arch, spec.limits);
        trace.trajectory = std::move(outcome.trajectory);
        trace.result = outcome.result;
        persist_trace(job.path, trace);
        if (options.debug_prompts) write_file_atomic(prompt_log_path(job.path), render_prompt_log(prompts));

        results[i] = outcome.result;
        states[i] = JobState::executed;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        stop = true;
      }
    }
  };

  const std::size_t n_threads = std::min(options.workers, std::max<std::size_t>(1, jobs.size()));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RunSummary summary;
  std::map<std::string, std::pair<std::size_t, std::size_t>> backend_aborts;  // finished, backend aborts
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (states[i] == JobState::pending) {
      ++summary.pending;
      continue;
    }
    (states[i] == JobState::reused ? summary.reused : summary.executed)++;
    const Job& job = jobs[i];
    EpisodeEntry entry;
    entry.backend = spec.backends[job.backend].name;
    entry.architecture = spec.architectures[job.arch].name;
    entry.complexity = task_complexity(tasks[job.task]);
    entry.result = results[i];
    auto& acc = backend_aborts[entry.backend];
    ++acc.first;
    acc.second += entry.result.abort_cause == "backend";
    summary.entries.push_back(std::move(entry));
    summary.trace_paths.push_back(job.path);
  }
  for (const auto& [name, acc] : backend_aborts) {
    if (acc.first > 0 && acc.first == acc.second) summary.failed_backends.push_back(name);
  }
  summary.table = aggregate(summary.entries, spec.env_kind);
  return summary;
}

ResultsTable table_from_traces(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 12 && name.ends_with(".trace.jsonl")) files.push_back(e.path());
  }
  if (files.empty()) throw ConfigError("no trace files in " + dir.string());

  struct Keyed {
    EpisodeEntry entry;
    int rank;
  };
  std::vector<Keyed> keyed;
  std::optional<EnvKind> env;
  for (const auto& f : files) {
    TraceFile t = load_trace(f);
    if (env && *env != t.header.env_kind) throw ConfigError(dir.string() + " mixes environments");
    env = t.header.env_kind;
    keyed.push_back({{t.header.backend, t.header.config_name, t.header.complexity, t.result},
                     column_rank(t.header.config_name)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.entry.backend, a.rank, a.entry.architecture, a.entry.result.task_id) <
           std::tie(b.entry.backend, b.rank, b.entry.architecture, b.entry.result.task_id);
  });
  std::vector<EpisodeEntry> entries;
  for (auto& k : keyed) entries.push_back(std::move(k.entry));

  // aggregate() orders columns by first appearance; re-sort them by rank.
  ResultsTable table = aggregate(entries, *env);
  std::stable_sort(table.columns.begin(), table.columns.end(), [](const std::string& a, const std::string& b) {
    return std::make_pair(column_rank(a), a) < std::make_pair(column_rank(b), b);
  });
  return table;
}

}  // namespace bolaa
