#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bolaa/catalog.hpp"
#include "bolaa/env.hpp"

namespace bolaa {

inline constexpr std::string_view kBuyNow = "Buy Now";
inline constexpr std::string_view kBackToSearch = "Back to Search";

struct ShoppingOptions {
  std::size_t results_per_page = 10;
  bool price_gate = false;
};

struct ShoppingState {
  PageKind page = PageKind::search_page;
  std::vector<std::string> last_ranking;  // ids shown on the current / last results page
  std::optional<std::string> viewed_item;
  std::optional<std::string> purchased;
  std::set<std::string> retrieved_ids;  // every id ever shown on a results page
};

// 1 iff the target product appeared on some results page during the episode.
int recall(const ShoppingState& state, const ShoppingTruth& truth);

// Simplified web shop: search page -> results page -> item page -> buy.
class ShoppingEnv final : public Environment {
 public:
  explicit ShoppingEnv(std::shared_ptr<const Catalog> catalog, ShoppingOptions options = {},
                       std::shared_ptr<const ProductRanker> ranker = nullptr);

  EnvKind kind() const override { return EnvKind::shopping; }
  Observation reset(const Task& task) override;
  StepOutcome step(const Action& action) override;
  bool done() const override { return state_.purchased.has_value(); }
  EpisodeScore score() const override;

  const ShoppingState& state() const { return state_; }
  const Observation& current() const { return current_; }
  // Hash of the full state machine state plus the current page.
  std::uint64_t fingerprint() const;

 private:
  Observation render_search_page() const;
  Observation render_results() const;
  Observation render_item(const Product& p) const;
  Observation invalid(const std::string& what) const;

  std::shared_ptr<const Catalog> catalog_;
  std::shared_ptr<const ProductRanker> ranker_;
  ShoppingOptions options_;
  std::optional<Task> task_;
  ShoppingState state_;
  Observation current_;
};

}  // namespace bolaa
