#include "bolaa/trajectory.hpp"

#include "bolaa/errors.hpp"

namespace bolaa {

namespace {

bool opens_slot(RecordKind k) { return k == RecordKind::action || k == RecordKind::parse_failure; }

// Shared by append() and the from-scratch checker so both enforce the same rules.
struct OrderingState {
  bool has_plan = false;
  bool seen_action = false;
  bool awaiting_observation = false;
  std::optional<std::size_t> last_step;

  std::optional<std::string> check(const Record& r) const {
    if (last_step && r.step_index < *last_step) {
      return "step_index " + std::to_string(r.step_index) + " precedes " + std::to_string(*last_step);
    }
    if (r.kind == RecordKind::action) {
      if (!r.action) return "action record without an action";
    } else if (r.action) {
      return std::string(to_string(r.kind)) + " record carries an action";
    }
    switch (r.kind) {
      case RecordKind::plan:
        if (has_plan) return "second plan record";
        if (seen_action) return "plan record after an action";
        break;
      case RecordKind::action:
      case RecordKind::parse_failure:
        if (awaiting_observation) return "action before the previous action's observation";
        break;
      case RecordKind::observation:
        if (!awaiting_observation) return "observation without a preceding action";
        break;
      case RecordKind::thought:
        break;
    }
    return std::nullopt;
  }

  void apply(const Record& r) {
    last_step = r.step_index;
    if (r.kind == RecordKind::plan) has_plan = true;
    if (opens_slot(r.kind)) {
      seen_action = true;
      awaiting_observation = true;
    }
    if (r.kind == RecordKind::observation) awaiting_observation = false;
  }
};

}  // namespace

void Trajectory::append(Record record) {
  OrderingState state{has_plan_, seen_action_, awaiting_observation_,
                      records_.empty() ? std::nullopt
                                       : std::optional<std::size_t>(records_.back().step_index)};
  if (auto err = state.check(record)) throw StructuralError(*err);
  state.apply(record);
  has_plan_ = state.has_plan;
  seen_action_ = state.seen_action;
  awaiting_observation_ = state.awaiting_observation;
  records_.push_back(std::move(record));
}

Trajectory append_record(Trajectory trajectory, Record record) {
  trajectory.append(std::move(record));
  return trajectory;
}

std::optional<std::string> find_trajectory_violation(const std::vector<Record>& records) {
  OrderingState state;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (auto err = state.check(records[i])) return "record " + std::to_string(i) + ": " + *err;
    state.apply(records[i]);
  }
  return std::nullopt;
}

}  // namespace bolaa
