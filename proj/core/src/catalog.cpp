#include "bolaa/catalog.hpp"

#include <algorithm>

#include "bolaa/errors.hpp"
#include "text_util.hpp"

namespace bolaa {

Catalog::Catalog(std::vector<Product> products) : products_(std::move(products)) {
  terms_.reserve(products_.size());
  for (std::size_t i = 0; i < products_.size(); ++i) {
    const Product& p = products_[i];
    if (p.id.empty()) throw ValidationError("product with an empty id");
    if (!index_.emplace(p.id, i).second) throw ValidationError("duplicate product id " + p.id);
    if (p.attributes.empty()) throw ValidationError("product " + p.id + " has no attributes");
    if (!(p.price > 0.0)) throw ValidationError("product " + p.id + " has a non-positive price");

    std::unordered_set<std::string> terms;
    auto add = [&](std::string_view text) {
      for (auto& t : detail::alnum_terms(text)) terms.insert(std::move(t));
    };
    add(p.title);
    for (const auto& a : p.attributes) add(a);
    add(p.description);
    terms_.push_back(std::move(terms));
  }
}

const Product* Catalog::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &products_[it->second];
}

const Product& Catalog::at(std::string_view id) const {
  if (const Product* p = find(id)) return *p;
  throw ContractError("unknown product id " + std::string(id));
}

std::vector<ScoredProduct> TermCountRanker::rank(std::string_view query, const Catalog& catalog) const {
  auto terms = detail::alnum_terms(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  std::vector<ScoredProduct> scored;
  if (terms.empty()) return scored;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& product_terms = catalog.terms(i);
    std::size_t score = 0;
    for (const auto& t : terms) score += product_terms.count(t);
    if (score > 0) scored.push_back({catalog.products()[i].id, score});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredProduct& a, const ScoredProduct& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  return scored;
}

std::vector<std::string> search_products(std::string_view query, const Catalog& catalog, std::size_t k) {
  if (k == 0) throw ContractError("search_products: k must be >= 1");
  std::vector<std::string> ids;
  for (auto& s : TermCountRanker{}.rank(query, catalog)) {
    if (ids.size() == k) break;
    ids.push_back(std::move(s.id));
  }
  return ids;
}

double webshop_reward(const Product& bought, const ShoppingTruth& truth, bool price_gate) {
  if (truth.required_attributes.empty()) throw ValidationError("ground truth has no required attributes");
  if (price_gate && truth.price_cap && bought.price > *truth.price_cap) return 0.0;
  std::size_t overlap = 0;
  for (const auto& a : truth.required_attributes) overlap += bought.attributes.count(a);
  return static_cast<double>(overlap) / static_cast<double>(truth.required_attributes.size());
}

}  // namespace bolaa
