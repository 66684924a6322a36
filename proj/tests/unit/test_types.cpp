#include <doctest.h>

#include <algorithm>
#include <random>

#include "bolaa/errors.hpp"
#include "bolaa/types.hpp"

using namespace bolaa;

namespace {

Task monopod_task() {
  Task t;
  t.id = "monopod";
  t.instruction =
      "i'm looking for a travel monopod camera tripod with quick release and easy to carry, and price lower than "
      "130.00 dollars";
  t.env_kind = EnvKind::shopping;
  t.ground_truth = ShoppingTruth{"B01", {"quick release", "camera tripod", "easy carry"}, 130.0};
  t.complexity = 3;
  return t;
}

}  // namespace

TEST_CASE("architecture flags match the five canonical names") {
  struct Row {
    std::string_view name;
    ArchitectureFlags flags;
  };
  const Row table[] = {
      {"ZS", {false, false, false}},     {"ZST", {false, true, false}},    {"ReAct", {true, true, false}},
      {"PlanAct", {true, false, true}}, {"PlanReAct", {true, true, true}},
  };
  for (const auto& row : table) {
    CAPTURE(row.name);
    REQUIRE(architecture_flags(row.name).has_value());
    CHECK(*architecture_flags(row.name) == row.flags);
    CHECK(architecture_name(row.flags) == row.name);
  }
  CHECK_FALSE(architecture_flags("BOLAA").has_value());
  CHECK_FALSE(architecture_name({false, false, true}).has_value());
}

TEST_CASE("make_config applies the env grammar and limits") {
  const LAAConfig c = make_config("ReAct", EnvKind::shopping, 7, 1024);
  CHECK(c.fewshot);
  CHECK(c.think);
  CHECK_FALSE(c.plan);
  CHECK(c.max_steps == 7);
  CHECK(c.context_limit == 1024);
  CHECK(c.allowed_action_kinds == ActionSet{ActionKind::search, ActionKind::click});
  CHECK(make_config("ZS", EnvKind::wikiqa).allowed_action_kinds ==
        ActionSet{ActionKind::search, ActionKind::lookup, ActionKind::finish});
  CHECK_THROWS_AS(make_config("Reflexion", EnvKind::shopping), ConfigError);
}

TEST_CASE("action payloads are non-empty and trimmed") {
  CHECK(make_action(ActionKind::search, "camera tripod").to_text() == "search[camera tripod]");
  CHECK_THROWS_AS(make_action(ActionKind::click, ""), ValidationError);
  CHECK_THROWS_AS(make_action(ActionKind::click, " Buy Now"), ValidationError);
  CHECK_THROWS_AS(make_action(ActionKind::click, "Buy Now\n"), ValidationError);
}

TEST_CASE("ActionSet behaves as a set") {
  ActionSet s{ActionKind::click, ActionKind::search, ActionKind::click};
  CHECK(s.size() == 2);
  CHECK(s.contains(ActionKind::search));
  CHECK_FALSE(s.contains(ActionKind::finish));
  CHECK(s.intersect(action_grammar(EnvKind::wikiqa)) == ActionSet{ActionKind::search});
  CHECK(s.kinds() == std::vector<ActionKind>{ActionKind::search, ActionKind::click});
}

TEST_CASE("task_complexity counts required attributes, not the price cap") {
  CHECK(task_complexity(monopod_task()) == 3);

  Task one = monopod_task();
  one.ground_truth = ShoppingTruth{"B02", {"red"}, std::nullopt};
  one.complexity = 1;
  CHECK(task_complexity(one) == 1);

  Task hard;
  hard.id = "q";
  hard.instruction = "Who?";
  hard.env_kind = EnvKind::wikiqa;
  hard.ground_truth = WikiTruth{"Someone"};
  hard.complexity = 3;
  CHECK(task_complexity(hard) == 3);
}

TEST_CASE("validate_task rejects malformed tasks") {
  Task t = monopod_task();
  t.complexity = 2;
  CHECK_THROWS_AS(validate_task(t), ValidationError);

  t = monopod_task();
  t.instruction.clear();
  CHECK_THROWS_AS(validate_task(t), ValidationError);

  t = monopod_task();
  t.ground_truth = ShoppingTruth{"B01", {}, std::nullopt};
  t.complexity = 0;
  CHECK_THROWS_AS(validate_task(t), ValidationError);

  Task w;
  w.id = "w";
  w.instruction = "Q";
  w.env_kind = EnvKind::wikiqa;
  w.ground_truth = WikiTruth{""};
  w.complexity = 1;
  CHECK_THROWS_AS(validate_task(w), ValidationError);
  w.ground_truth = WikiTruth{"A"};
  w.complexity = 4;
  CHECK_THROWS_AS(validate_task(w), ValidationError);

  Task mixed = monopod_task();
  mixed.env_kind = EnvKind::wikiqa;
  CHECK_THROWS_AS(validate_task(mixed), ValidationError);
}

TEST_CASE("task_complexity is invariant under attribute insertion order") {
  std::vector<std::string> attrs{"quick release", "camera tripod", "easy carry", "black", "aluminum"};
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(attrs.begin(), attrs.end(), rng);
    ShoppingTruth truth;
    truth.target_product_id = "X";
    for (const auto& a : attrs) truth.required_attributes.insert(a);
    Task t = monopod_task();
    t.ground_truth = truth;
    t.complexity = 5;
    CHECK(task_complexity(t) == 5);
  }
}

TEST_CASE("enum text forms round trip") {
  for (auto k : {EnvKind::shopping, EnvKind::wikiqa}) CHECK(parse_env_kind(to_string(k)) == k);
  for (auto k : kAllActionKinds) CHECK(parse_action_kind(to_string(k)) == k);
  for (auto k : {RecordKind::plan, RecordKind::thought, RecordKind::action, RecordKind::observation,
                 RecordKind::parse_failure}) {
    CHECK(parse_record_kind(to_string(k)) == k);
  }
  for (auto t : {Termination::completed, Termination::max_steps, Termination::aborted}) {
    CHECK(parse_termination(to_string(t)) == t);
  }
  CHECK_THROWS(parse_env_kind("kitchen"));
  CHECK_FALSE(parse_action_kind("buy").has_value());
}
