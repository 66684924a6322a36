#include "bolaa/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "bolaa/errors.hpp"

namespace bolaa {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Summed in sorted order so the mean does not depend on the order episodes arrive in.
double mean_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::vector<LevelStat> level_means(const std::map<int, std::vector<double>>& values) {
  std::vector<LevelStat> out;
  for (const auto& [level, vs] : values) out.push_back({level, mean_of(vs), vs.size()});
  return out;
}

std::set<int> all_levels(const ResultsTable& table) {
  std::set<int> levels;
  for (const auto& [key, cell] : table.cells) {
    for (const auto& s : cell.reward_by_level) levels.insert(s.level);
  }
  return levels;
}

template <typename Pick>
MetricGrid grid_of(const ResultsTable& table, std::string metric, Pick pick) {
  MetricGrid g;
  g.metric = std::move(metric);
  g.rows = table.rows;
  g.columns = table.columns;
  for (const auto& r : table.rows) {
    auto& row = g.values.emplace_back();
    for (const auto& c : table.columns) {
      const Cell* cell = table.cell(r, c);
      row.push_back(cell ? pick(*cell) : std::nullopt);
    }
  }
  return g;
}

std::optional<double> level_value(const std::vector<LevelStat>& stats, int level) {
  for (const auto& s : stats) {
    if (s.level == level) return s.mean;
  }
  return std::nullopt;
}

}  // namespace

const Cell* ResultsTable::cell(const std::string& row, const std::string& column) const {
  const auto it = cells.find({row, column});
  return it == cells.end() ? nullptr : &it->second;
}

ResultsTable aggregate(const std::vector<EpisodeEntry>& entries, EnvKind env) {
  struct Acc {
    std::vector<double> reward;
    std::vector<double> recall;
    std::size_t aborts = 0;
    std::map<int, std::vector<double>> reward_levels;
    std::map<int, std::vector<double>> recall_levels;
  };

  ResultsTable table;
  table.env_kind = env;
  std::map<std::pair<std::string, std::string>, Acc> accs;
  for (const auto& e : entries) {
    if (std::find(table.rows.begin(), table.rows.end(), e.backend) == table.rows.end()) table.rows.push_back(e.backend);
    if (std::find(table.columns.begin(), table.columns.end(), e.architecture) == table.columns.end()) {
      table.columns.push_back(e.architecture);
    }
    Acc& a = accs[{e.backend, e.architecture}];
    a.reward.push_back(e.result.reward);
    a.recall.push_back(e.result.recall);
    a.aborts += e.result.terminated == Termination::aborted;
    a.reward_levels[e.complexity].push_back(e.result.reward);
    a.recall_levels[e.complexity].push_back(e.result.recall);
  }

  for (const auto& [key, a] : accs) {
    Cell c;
    c.episodes = a.reward.size();
    c.aborts = a.aborts;
    c.mean_reward = mean_of(a.reward);
    c.reward_by_level = level_means(a.reward_levels);
    if (env == EnvKind::shopping) {
      c.mean_recall = mean_of(a.recall);
      c.recall_by_level = level_means(a.recall_levels);
    }
    table.cells.emplace(key, std::move(c));
  }
  return table;
}

std::vector<std::vector<CellMarks>> compute_marks(const MetricGrid& grid) {
  const std::size_t nr = grid.rows.size();
  const std::size_t nc = grid.columns.size();
  std::vector<std::vector<CellMarks>> marks(nr, std::vector<CellMarks>(nc));
  std::vector<std::optional<double>> row_max(nr);
  std::vector<std::optional<double>> col_max(nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& v = grid.values.at(r).at(c);
      if (!v) continue;
      if (!row_max[r] || *v > *row_max[r]) row_max[r] = *v;
      if (!col_max[c] || *v > *col_max[c]) col_max[c] = *v;
    }
  }
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& v = grid.values[r][c];
      if (!v) continue;
      marks[r][c].row_best = *v == *row_max[r];
      marks[r][c].col_best = *v == *col_max[c];
    }
  }
  return marks;
}

MetricGrid reward_grid(const ResultsTable& table) {
  return grid_of(table, "reward", [](const Cell& c) -> std::optional<double> { return c.mean_reward; });
}

std::optional<MetricGrid> recall_grid(const ResultsTable& table) {
  if (table.env_kind != EnvKind::shopping) return std::nullopt;
  return grid_of(table, "recall", [](const Cell& c) { return c.mean_recall; });
}

MetricGrid level_grid(const ResultsTable& table, bool recall, int level) {
  return grid_of(table, recall ? "recall" : "reward",
                 [&](const Cell& c) { return level_value(recall ? c.recall_by_level : c.reward_by_level, level); });
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  if (text == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + std::string(text) + "'");
}

std::string render_markdown(const MetricGrid& grid, std::string_view corner) {
  const auto marks = compute_marks(grid);
  std::string out = "| " + std::string(corner) + " |";
  for (const auto& c : grid.columns) out += " " + c + " |";
  out += "\n| --- |";
  for (std::size_t i = 0; i < grid.columns.size(); ++i) out += " --- |";
  out += '\n';
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    out += "| " + grid.rows[r] + " |";
    for (std::size_t c = 0; c < grid.columns.size(); ++c) {
      const auto& v = grid.values[r][c];
      std::string text = v ? fixed4(*v) : "-";
      if (marks[r][c].col_best) text = "<u>" + text + "</u>";
      if (marks[r][c].row_best) text = "**" + text + "**";
      out += " " + text + " |";
    }
    out += '\n';
  }
  return out;
}

std::string csv_header() { return "metric,backend,architecture,level,value,row_best,col_best"; }

std::string render_csv_rows(const MetricGrid& grid, std::string_view level) {
  const auto marks = compute_marks(grid);
  std::string out;
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    for (std::size_t c = 0; c < grid.columns.size(); ++c) {
      const auto& v = grid.values[r][c];
      if (!v) continue;
      char value[40];
      std::snprintf(value, sizeof value, "%.17g", *v);
      out += csv_field(grid.metric) + "," + csv_field(grid.rows[r]) + "," + csv_field(grid.columns[c]) + "," +
             std::string(level) + "," + value + "," + (marks[r][c].row_best ? "true" : "false") + "," +
             (marks[r][c].col_best ? "true" : "false") + "\n";
    }
  }
  return out;
}

std::string emit_report(const ResultsTable& table, ReportFormat format) {
  if (table.cells.empty()) throw ContractError("cannot report an empty results table");
  const auto recall = recall_grid(table);
  const auto levels = all_levels(table);

  if (format == ReportFormat::csv) {
    std::string out = csv_header() + "\n";
    out += render_csv_rows(reward_grid(table), "all");
    if (recall) out += render_csv_rows(*recall, "all");
    for (int level : levels) {
      out += render_csv_rows(level_grid(table, false, level), std::to_string(level));
      if (recall) out += render_csv_rows(level_grid(table, true, level), std::to_string(level));
    }
    return out;
  }

  const std::string env(to_string(table.env_kind));
  std::string out = "## Average reward (" + env + ")\n\n" + render_markdown(reward_grid(table));
  if (recall) out += "\n## Average recall (" + env + ")\n\n" + render_markdown(*recall);
  for (int level : levels) {
    out += "\n## Reward at complexity " + std::to_string(level) + "\n\n" + render_markdown(level_grid(table, false, level));
  }

  out += "\n## Episodes\n\n| Backend | Architecture | Episodes | Aborted |\n|---|---|---:|---:|\n";
  for (const auto& r : table.rows) {
    for (const auto& c : table.columns) {
      if (const Cell* cell = table.cell(r, c)) {
        out += "| " + r + " | " + c + " | " + std::to_string(cell->episodes) + " | " + std::to_string(cell->aborts) + " |\n";
      }
    }
  }
  return out;
}

}  // namespace bolaa
