#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bolaa/types.hpp"

namespace bolaa {

// Ordered episode memory. Records are immutable once appended; append()
// rejects anything that would break the ordering invariants:
//   - step_index never decreases,
//   - at most one Plan, and it precedes every Action / ParseFailure,
//   - each Action (or ParseFailure) gets exactly one Observation before the next one,
//   - an Observation always answers an open Action / ParseFailure.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(std::string task_id) : task_id_(std::move(task_id)) {}

  const std::string& task_id() const { return task_id_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::optional<Termination> terminated() const { return terminated_; }
  void set_terminated(Termination t) { terminated_ = t; }

  // Throws StructuralError and leaves the trajectory untouched on violation.
  void append(Record record);

  bool has_plan() const { return has_plan_; }
  // True while the latest Action / ParseFailure still waits for its Observation.
  bool awaiting_observation() const { return awaiting_observation_; }

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.task_id_ == b.task_id_ && a.records_ == b.records_ && a.terminated_ == b.terminated_;
  }

 private:
  std::string task_id_;
  std::vector<Record> records_;
  std::optional<Termination> terminated_;
  bool has_plan_ = false;
  bool seen_action_ = false;
  bool awaiting_observation_ = false;
};

// Value-returning form of Trajectory::append.
Trajectory append_record(Trajectory trajectory, Record record);

// Re-checks every invariant from scratch. Returns a description of the first
// violation, or nullopt if the record list is well formed.
std::optional<std::string> find_trajectory_violation(const std::vector<Record>& records);

}  // namespace bolaa
