// bolaa: run agent benchmarks, emit reports, sample task sets, check traces.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "bolaa/errors.hpp"
#include "bolaa/fixtures.hpp"
#include "bolaa/harness.hpp"

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kSpecError = 2, kShortage = 3, kBackendFailure = 4 };

int cmd_run(const std::filesystem::path& spec_path, const bolaa::RunOptions& options) {
  const bolaa::BenchmarkSpec spec = bolaa::load_benchmark_spec(spec_path);
  const bolaa::RunSummary summary = bolaa::run_benchmark(spec, options);
  std::cerr << "executed " << summary.executed << ", reused " << summary.reused << ", pending " << summary.pending
            << " episodes into " << options.out_dir.string() << "\n";
  if (!summary.entries.empty()) std::cout << bolaa::emit_report(summary.table, bolaa::ReportFormat::markdown);
  if (!summary.failed_backends.empty()) {
    for (const auto& b : summary.failed_backends) std::cerr << "backend " << b << " failed on every episode\n";
    return kBackendFailure;
  }
  return kOk;
}

int cmd_report(const std::filesystem::path& in, const std::string& format) {
  std::cout << bolaa::emit_report(bolaa::table_from_traces(in), bolaa::parse_report_format(format));
  return kOk;
}

int cmd_sample(const std::filesystem::path& universe, std::size_t per_level, std::uint64_t seed,
               std::vector<int> levels, const std::filesystem::path& out) {
  const auto tasks = bolaa::load_tasks(universe);
  if (tasks.empty()) throw bolaa::ConfigError("universe " + universe.string() + " holds no tasks");
  if (levels.empty()) levels = bolaa::default_levels(tasks.front().env_kind);
  const auto sampled = bolaa::sample_tasks(tasks, per_level, levels, seed);
  bolaa::write_file_atomic(out, bolaa::serialize_tasks(sampled));
  std::cerr << "wrote " << sampled.size() << " tasks to " << out.string() << "\n";
  return kOk;
}

int cmd_validate(const std::filesystem::path& file) {
  const bolaa::TraceFile trace = bolaa::load_trace(file);
  std::vector<bolaa::PromptLogEntry> prompts;
  const auto sidecar = bolaa::prompt_log_path(file);
  const bool have_prompts = std::filesystem::exists(sidecar);
  if (have_prompts) prompts = bolaa::parse_prompt_log(bolaa::read_file(sidecar), sidecar.string());

  const auto problems = bolaa::check_trace_shape(trace, have_prompts ? &prompts : nullptr);
  for (const auto& p : problems) std::cout << file.string() << ": " << p << "\n";
  if (!problems.empty()) return kFailure;
  std::cout << file.string() << ": ok (" << trace.trajectory.records().size() << " records"
            << (have_prompts ? ", prompts checked" : "") << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LLM-augmented agent benchmark harness"};
  app.require_subcommand(1);

  std::filesystem::path spec_path, out_dir, in_dir, universe, sample_out, trace_file;
  bolaa::RunOptions run_options;
  std::size_t max_new = 0;
  std::string format = "markdown";
  std::size_t per_level = 10;
  std::uint64_t seed = 0;
  std::vector<int> levels;

  auto* run = app.add_subcommand("run", "Run every episode of a benchmark spec");
  run->add_option("--spec", spec_path, "Benchmark spec (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Trace output directory")->required();
  run->add_option("--workers", run_options.workers, "Concurrent episodes")->check(CLI::PositiveNumber);
  run->add_flag("--resume", run_options.resume, "Reuse matching traces already in --out");
  run->add_flag("--debug-prompts", run_options.debug_prompts, "Write rendered prompts next to each trace");
  run->add_option("--max-new-episodes", max_new, "Stop after this many new episodes (0 = no limit)");

  auto* report = app.add_subcommand("report", "Aggregate a trace directory into a table");
  report->add_option("--in", in_dir, "Trace directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--format", format, "markdown or csv")->check(CLI::IsMember({"markdown", "csv"}));

  auto* sample = app.add_subcommand("sample", "Draw a complexity-stratified task set");
  sample->add_option("--universe", universe, "Task file to sample from")->required()->check(CLI::ExistingFile);
  sample->add_option("--per-level", per_level, "Tasks per complexity level")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "Shuffle seed")->required();
  sample->add_option("--levels", levels, "Complexity levels (default: all of the environment's)");
  sample->add_option("--out", sample_out, "Output task file")->required();

  auto* validate = app.add_subcommand("validate-trace", "Check a trace against its architecture's invariants");
  validate->add_option("file", trace_file, "Trace file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      run_options.out_dir = out_dir;
      if (max_new > 0) run_options.max_new_episodes = max_new;
      return cmd_run(spec_path, run_options);
    }
    if (*report) return cmd_report(in_dir, format);
    if (*sample) return cmd_sample(universe, per_level, seed, levels, sample_out);
    if (*validate) return cmd_validate(trace_file);
  } catch (const bolaa::ShortageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kShortage;
  } catch (const bolaa::BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kBackendFailure;
  } catch (const bolaa::TraceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const bolaa::ConfigError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const bolaa::SchemaError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const bolaa::ValidationError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
