#include <doctest.h>

#include <random>

#include "bolaa/errors.hpp"
#include "bolaa/report.hpp"

using namespace bolaa;

namespace {

EpisodeEntry entry(std::string backend, std::string arch, int level, double reward, int recall = 0,
                   Termination t = Termination::completed) {
  EpisodeEntry e;
  e.backend = std::move(backend);
  e.architecture = std::move(arch);
  e.complexity = level;
  e.result.task_id = "t";
  e.result.reward = reward;
  e.result.recall = recall;
  e.result.terminated = t;
  if (t == Termination::aborted) e.result.abort_cause = "backend";
  return e;
}

}  // namespace

TEST_CASE("aggregate examples") {
  const ResultsTable a = aggregate({entry("m", "ZS", 1, 1.0), entry("m", "ZS", 1, 0.0)}, EnvKind::shopping);
  REQUIRE(a.cell("m", "ZS") != nullptr);
  CHECK(a.cell("m", "ZS")->mean_reward == 0.5);

  std::vector<EpisodeEntry> es;
  for (int i = 0; i < 10; ++i) es.push_back(entry("m", "ZS", 1, 0.8));
  for (int i = 0; i < 10; ++i) es.push_back(entry("m", "ZS", 2, 0.6));
  const ResultsTable b = aggregate(es, EnvKind::shopping);
  const Cell& c = *b.cell("m", "ZS");
  CHECK(c.mean_reward == doctest::Approx(0.7).epsilon(1e-12));
  REQUIRE(c.reward_by_level.size() == 2);
  CHECK(c.reward_by_level[0].level == 1);
  CHECK(c.reward_by_level[0].count == 10);
  CHECK(c.reward_by_level[0].mean == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(c.reward_by_level[1].mean == doctest::Approx(0.6).epsilon(1e-12));

  const ResultsTable w = aggregate({entry("m", "ZS", 1, 1.0)}, EnvKind::wikiqa);
  CHECK_FALSE(w.cell("m", "ZS")->mean_recall.has_value());
  CHECK_FALSE(recall_grid(w).has_value());
  CHECK(w.cell("m", "ReAct") == nullptr);
}

TEST_CASE("aborted episodes count with zero reward") {
  const ResultsTable t = aggregate(
      {entry("m", "ZS", 1, 1.0, 1), entry("m", "ZS", 1, 0.0, 0, Termination::aborted)}, EnvKind::shopping);
  const Cell& c = *t.cell("m", "ZS");
  CHECK(c.mean_reward == 0.5);
  CHECK(*c.mean_recall == 0.5);
  CHECK(c.episodes == 2);
  CHECK(c.aborts == 1);
}

TEST_CASE("per-level means recombine to the cell mean") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EpisodeEntry> es;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) {
      es.push_back(entry(rng() % 2 ? "a" : "b", rng() % 2 ? "ZS" : "BOLAA", 1 + static_cast<int>(rng() % 6),
                         (rng() % 1000) / 999.0, static_cast<int>(rng() % 2)));
    }
    const ResultsTable t = aggregate(es, EnvKind::shopping);
    for (const auto& [key, cell] : t.cells) {
      double sum = 0.0, rsum = 0.0;
      std::size_t count = 0;
      for (const auto& l : cell.reward_by_level) {
        sum += l.mean * static_cast<double>(l.count);
        count += l.count;
      }
      for (const auto& l : cell.recall_by_level) rsum += l.mean * static_cast<double>(l.count);
      CHECK(count == cell.episodes);
      CHECK(sum / static_cast<double>(count) == doctest::Approx(cell.mean_reward).epsilon(1e-9));
      CHECK(rsum / static_cast<double>(count) == doctest::Approx(*cell.mean_recall).epsilon(1e-9));
    }
  }
}

TEST_CASE("marks equal the brute-force argmax sets") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    MetricGrid g;
    g.metric = "reward";
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    for (std::size_t r = 0; r < rows; ++r) g.rows.push_back("r" + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) g.columns.push_back("c" + std::to_string(c));
    g.values.assign(rows, std::vector<std::optional<double>>(cols));
    for (auto& row : g.values) {
      for (auto& v : row) {
        if (rng() % 6) v = static_cast<double>(rng() % 5) / 4.0;  // few distinct values, so ties happen
      }
    }
    const auto marks = compute_marks(g);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const auto& v = g.values[r][c];
        bool row_best = v.has_value(), col_best = v.has_value();
        for (std::size_t k = 0; k < cols && v; ++k) row_best = row_best && !(g.values[r][k] && *g.values[r][k] > *v);
        for (std::size_t k = 0; k < rows && v; ++k) col_best = col_best && !(g.values[k][c] && *g.values[k][c] > *v);
        CHECK(marks[r][c].row_best == row_best);
        CHECK(marks[r][c].col_best == col_best);
      }
    }
  }
}

TEST_CASE("a 1x1 table is both bold and underlined") {
  const ResultsTable t = aggregate({entry("m", "ZS", 1, 0.25)}, EnvKind::shopping);
  const std::string md = render_markdown(reward_grid(t));
  CHECK(md.find("**<u>0.2500</u>**") != std::string::npos);
  const std::string csv = render_csv_rows(reward_grid(t), "all");
  CHECK(csv == "reward,m,ZS,all,0.25,true,true\n");
}

TEST_CASE("markdown layout, absent cells and csv") {
  MetricGrid g;
  g.metric = "reward";
  g.rows = {"x", "y"};
  g.columns = {"ZS", "ReAct"};
  g.values = {{0.5, 0.25}, {std::nullopt, 0.75}};
  const std::string md = render_markdown(g);
  CHECK(md ==
        "| Backend | ZS | ReAct |\n"
        "| --- | --- | --- |\n"
        "| x | **<u>0.5000</u>** | 0.2500 |\n"
        "| y | - | **<u>0.7500</u>** |\n");
  CHECK(csv_header() == "metric,backend,architecture,level,value,row_best,col_best");
  CHECK(render_csv_rows(g, "3") ==
        "reward,x,ZS,3,0.5,true,true\n"
        "reward,x,ReAct,3,0.25,false,false\n"
        "reward,y,ReAct,3,0.75,true,true\n");
}

TEST_CASE("emit_report covers every table and rejects an empty one") {
  std::vector<EpisodeEntry> es{entry("m", "ZS", 1, 1.0, 1), entry("m", "ZS", 2, 0.5, 1),
                               entry("m", "BOLAA", 1, 0.0, 0, Termination::aborted)};
  const ResultsTable t = aggregate(es, EnvKind::shopping);
  const std::string md = emit_report(t, ReportFormat::markdown);
  CHECK(md.find("reward") != std::string::npos);
  CHECK(md.find("recall") != std::string::npos);
  CHECK(md.find("Aborted") != std::string::npos);
  const std::string csv = emit_report(t, ReportFormat::csv);
  CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  CHECK(csv.find("reward,m,ZS,all,0.75,true,true") != std::string::npos);
  CHECK(csv.find("reward,m,ZS,2,0.5,") != std::string::npos);
  CHECK(csv.find("recall,m,BOLAA,all,0,false,true") != std::string::npos);
  CHECK_THROWS_AS(emit_report(ResultsTable{}, ReportFormat::csv), ContractError);
  CHECK(parse_report_format("csv") == ReportFormat::csv);
  CHECK_THROWS(parse_report_format("html"));
}
