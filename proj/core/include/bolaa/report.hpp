#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bolaa/types.hpp"

namespace bolaa {

// One finished episode as seen by aggregation.
struct EpisodeEntry {
  std::string backend;
  std::string architecture;
  int complexity = 1;
  EpisodeResult result;
};

struct LevelStat {
  int level = 0;
  double mean = 0.0;
  std::size_t count = 0;

  friend bool operator==(const LevelStat&, const LevelStat&) = default;
};

struct Cell {
  double mean_reward = 0.0;
  std::optional<double> mean_recall;  // shopping only
  std::vector<LevelStat> reward_by_level;
  std::vector<LevelStat> recall_by_level;
  std::size_t episodes = 0;
  std::size_t aborts = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Rows are backends, columns are architectures, in first-seen order. A cell
// with no episodes is absent rather than zero.
struct ResultsTable {
  EnvKind env_kind = EnvKind::shopping;
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::map<std::pair<std::string, std::string>, Cell> cells;

  const Cell* cell(const std::string& row, const std::string& column) const;

  friend bool operator==(const ResultsTable&, const ResultsTable&) = default;
};

// Means per (backend, architecture) and per complexity level. Aborted
// episodes count with their (zero) reward.
ResultsTable aggregate(const std::vector<EpisodeEntry>& entries, EnvKind env);

// A plain value grid, e.g. one metric of a ResultsTable or a published table.
struct MetricGrid {
  std::string metric;
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> values;  // [row][column]
};

struct CellMarks {
  bool row_best = false;
  bool col_best = false;
};

// Every cell equal to its row maximum is row_best, every cell equal to its
// column maximum is col_best. Absent cells are never marked.
std::vector<std::vector<CellMarks>> compute_marks(const MetricGrid& grid);

MetricGrid reward_grid(const ResultsTable& table);
// Absent for wikiqa tables.
std::optional<MetricGrid> recall_grid(const ResultsTable& table);
MetricGrid level_grid(const ResultsTable& table, bool recall, int level);

enum class ReportFormat { markdown, csv };

ReportFormat parse_report_format(std::string_view text);

// Markdown: row best in bold, column best underlined, 4 decimals.
std::string render_markdown(const MetricGrid& grid, std::string_view corner = "Backend");

// csv lines "metric,backend,architecture,level,value,row_best,col_best".
std::string csv_header();
std::string render_csv_rows(const MetricGrid& grid, std::string_view level);

// Reward table, recall table (shopping), then per-level tables; abort counts
// are listed in markdown output.
std::string emit_report(const ResultsTable& table, ReportFormat format);

}  // namespace bolaa
