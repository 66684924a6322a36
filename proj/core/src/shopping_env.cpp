#include "bolaa/shopping_env.hpp"

#include <cstdio>

#include "bolaa/errors.hpp"
#include "text_util.hpp"

namespace bolaa {

namespace {

std::string money(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "$%.2f", v);
  return buf;
}

std::string bracketed(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += "[" + labels[i] + "]";
  }
  return out;
}

}  // namespace

int recall(const ShoppingState& state, const ShoppingTruth& truth) {
  return state.retrieved_ids.count(truth.target_product_id) ? 1 : 0;
}

ShoppingEnv::ShoppingEnv(std::shared_ptr<const Catalog> catalog, ShoppingOptions options,
                         std::shared_ptr<const ProductRanker> ranker)
    : catalog_(std::move(catalog)), ranker_(std::move(ranker)), options_(options) {
  if (!catalog_) throw ConfigError("shopping environment needs a catalog");
  if (!ranker_) ranker_ = std::make_shared<TermCountRanker>();
  if (options_.results_per_page == 0) throw ConfigError("results_per_page must be >= 1");
}

Observation ShoppingEnv::reset(const Task& task) {
  if (task.env_kind != EnvKind::shopping) throw ContractError("shopping environment given a wikiqa task");
  validate_task(task);
  task_ = task;
  state_ = ShoppingState{};
  current_ = render_search_page();
  return current_;
}

Observation ShoppingEnv::render_search_page() const {
  Observation obs;
  obs.page_kind = PageKind::search_page;
  obs.content = "WebShop [SEP] Instruction: [SEP] " + task_->instruction + " [SEP] [Search]";
  return obs;
}

Observation ShoppingEnv::render_results() const {
  Observation obs;
  obs.page_kind = PageKind::results_page;
  obs.clickables.emplace_back(kBackToSearch);
  obs.content = "[" + std::string(kBackToSearch) + "]\nPage 1 (Total results: " +
                std::to_string(state_.last_ranking.size()) + ")";
  for (const auto& id : state_.last_ranking) {
    const Product& p = catalog_->at(id);
    obs.content += "\n[" + p.title + "] " + money(p.price);
    obs.clickables.push_back(p.title);
  }
  return obs;
}

Observation ShoppingEnv::render_item(const Product& p) const {
  Observation obs;
  obs.page_kind = PageKind::item_page;
  std::vector<std::string> attrs(p.attributes.begin(), p.attributes.end());
  std::string options;
  for (const auto& [name, values] : p.options) {
    if (!options.empty()) options += "; ";
    options += name + ": " + detail::join(values, ", ");
  }
  obs.content = "[" + std::string(kBackToSearch) + "]\n" + p.title + "\nPrice: " + money(p.price) +
                "\nAttributes: " + detail::join(attrs, ", ") + "\nOptions: " + options +
                "\nDescription: " + p.description + "\n[" + std::string(kBuyNow) + "]";
  obs.clickables = {std::string(kBackToSearch), std::string(kBuyNow)};
  return obs;
}

Observation ShoppingEnv::invalid(const std::string& what) const {
  Observation obs = current_;
  obs.content = "Invalid element: " + what + ". Clickable elements: " +
                (current_.clickables.empty() ? std::string("none") : bracketed(current_.clickables));
  return obs;
}

StepOutcome ShoppingEnv::step(const Action& action) {
  if (!task_) throw ContractError("step before reset");
  if (done()) throw ContractError("step after the episode finished");
  if (!grammar().contains(action.kind)) {
    throw ContractError("action " + action.to_text() + " is outside the shopping grammar");
  }

  StepOutcome out;
  if (action.kind == ActionKind::search) {
    auto ranked = ranker_->rank(action.payload, *catalog_);
    state_.last_ranking.clear();
    for (auto& s : ranked) {
      if (state_.last_ranking.size() == options_.results_per_page) break;
      state_.retrieved_ids.insert(s.id);
      state_.last_ranking.push_back(std::move(s.id));
    }
    state_.page = PageKind::results_page;
    state_.viewed_item.reset();
    current_ = render_results();
    out.observation = current_;
    return out;
  }

  // click
  const std::string& label = action.payload;
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < current_.clickables.size(); ++i) {
    if (detail::iequals(detail::trim(current_.clickables[i]), detail::trim(label))) {
      hit = i;
      break;
    }
  }
  if (!hit) {
    out.observation = invalid(label);
    return out;
  }
  const std::string& element = current_.clickables[*hit];

  if (element == kBackToSearch) {
    state_.page = PageKind::search_page;
    state_.viewed_item.reset();
    current_ = render_search_page();
  } else if (state_.page == PageKind::item_page && element == kBuyNow) {
    const Product& bought = catalog_->at(*state_.viewed_item);
    state_.purchased = bought.id;
    state_.page = PageKind::done_page;
    current_ = Observation{PageKind::done_page,
                           "Thank you for shopping with us! You bought " + bought.title + ".", {}};
    out.done = true;
    out.score = score();
  } else if (state_.page == PageKind::results_page) {
    // clickables[0] is Back to Search; titles follow in ranking order.
    const std::string& id = state_.last_ranking.at(*hit - 1);
    state_.viewed_item = id;
    state_.page = PageKind::item_page;
    current_ = render_item(catalog_->at(id));
  } else {
    out.observation = invalid(label);
    return out;
  }
  out.observation = current_;
  return out;
}

EpisodeScore ShoppingEnv::score() const {
  EpisodeScore s;
  if (!task_) return s;
  const ShoppingTruth& truth = task_->shopping();
  s.recall = recall(state_, truth);
  if (state_.purchased) s.reward = webshop_reward(catalog_->at(*state_.purchased), truth, options_.price_gate);
  return s;
}

std::uint64_t ShoppingEnv::fingerprint() const {
  std::string blob(to_string(state_.page));
  blob += '|';
  for (const auto& id : state_.last_ranking) blob += id + ",";
  blob += '|' + state_.viewed_item.value_or("-") + '|' + state_.purchased.value_or("-") + '|';
  for (const auto& id : state_.retrieved_ids) blob += id + ",";
  blob += '|' + current_.content;
  return detail::fnv1a64(blob);
}

}  // namespace bolaa
