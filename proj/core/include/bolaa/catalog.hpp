#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bolaa/types.hpp"

namespace bolaa {

struct Product {
  std::string id;
  std::string title;
  std::set<std::string> attributes;
  double price = 0.0;
  std::map<std::string, std::vector<std::string>> options;
  std::string description;

  friend bool operator==(const Product&, const Product&) = default;
};

// Immutable product collection with a per-product search term index.
class Catalog {
 public:
  // Throws ValidationError on duplicate ids, empty attributes, or non-positive prices.
  explicit Catalog(std::vector<Product> products);

  const std::vector<Product>& products() const { return products_; }
  std::size_t size() const { return products_.size(); }

  const Product* find(std::string_view id) const;
  const Product& at(std::string_view id) const;

  // Normalized terms of title + attributes + description for products()[index].
  const std::unordered_set<std::string>& terms(std::size_t index) const { return terms_[index]; }

 private:
  std::vector<Product> products_;
  std::vector<std::unordered_set<std::string>> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ScoredProduct {
  std::string id;
  std::size_t score = 0;
};

// Pluggable ranking function for the shopping search engine.
class ProductRanker {
 public:
  virtual ~ProductRanker() = default;
  // Products with a positive score, best first. Must be deterministic and total.
  virtual std::vector<ScoredProduct> rank(std::string_view query, const Catalog& catalog) const = 0;
};

// Score = number of distinct query terms present in the product's terms.
// Ties break by ascending id.
class TermCountRanker final : public ProductRanker {
 public:
  std::vector<ScoredProduct> rank(std::string_view query, const Catalog& catalog) const override;
};

// Top-k product ids for a query under TermCountRanker; empty for an empty query.
std::vector<std::string> search_products(std::string_view query, const Catalog& catalog, std::size_t k);

// Attribute overlap |bought ∩ required| / |required|. With price_gate on, a
// bought price above the task's cap scores 0.
double webshop_reward(const Product& bought, const ShoppingTruth& truth, bool price_gate = false);

}  // namespace bolaa
