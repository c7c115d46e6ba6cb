#include "floerkit/relation.hpp"

#include <algorithm>

#include "floerkit/error.hpp"

namespace floerkit {

SetRef make_set(std::string name, std::size_t size) {
  return std::make_shared<const FiniteSet>(FiniteSet{std::move(name), size});
}

bool same_set(const SetRef& a, const SetRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

FiniteRelation::FiniteRelation(SetRef source, SetRef target, std::vector<IndexPair> pairs)
    : source_(std::move(source)), target_(std::move(target)), pairs_(std::move(pairs)) {
  if (!source_ || !target_) raise(ErrorKind::EndpointMismatch, "relation without endpoints");
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (const auto& [x, y] : pairs_)
    if (x >= source_->size || y >= target_->size)
      raise(ErrorKind::EndpointMismatch,
            "pair outside " + source_->name + " x " + target_->name, {{"pair", {x, y}}});
  offsets_.assign(source_->size + 1, 0);
  cols_.reserve(pairs_.size());
  for (const auto& [x, y] : pairs_) {
    ++offsets_[x + 1];
    cols_.push_back(y);
  }
  for (std::size_t i = 0; i < source_->size; ++i) offsets_[i + 1] += offsets_[i];
}

FiniteRelation FiniteRelation::diagonal(const SetRef& set) {
  std::vector<IndexPair> p;
  for (Index i = 0; i < set->size; ++i) p.emplace_back(i, i);
  return {set, set, std::move(p)};
}

FiniteRelation FiniteRelation::graph(const SetRef& source, const SetRef& target,
                                     const std::vector<Index>& map) {
  if (map.size() != source->size) raise(ErrorKind::EndpointMismatch, "graph map has wrong length");
  std::vector<IndexPair> p;
  for (Index i = 0; i < map.size(); ++i) p.emplace_back(i, map[i]);
  return {source, target, std::move(p)};
}

FiniteRelation FiniteRelation::full(const SetRef& source, const SetRef& target) {
  std::vector<IndexPair> p;
  for (Index i = 0; i < source->size; ++i)
    for (Index j = 0; j < target->size; ++j) p.emplace_back(i, j);
  return {source, target, std::move(p)};
}

bool FiniteRelation::contains(Index x, Index y) const {
  auto row = image(x);
  return std::binary_search(row.begin(), row.end(), y);
}

std::span<const Index> FiniteRelation::image(Index x) const {
  if (x >= source_->size) return {};
  return {cols_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
}

FiniteRelation FiniteRelation::transpose() const {
  std::vector<IndexPair> p;
  p.reserve(pairs_.size());
  for (const auto& [x, y] : pairs_) p.emplace_back(y, x);
  return {target_, source_, std::move(p)};
}

bool FiniteRelation::is_function() const {
  for (std::size_t x = 0; x < source_->size; ++x)
    if (offsets_[x + 1] - offsets_[x] != 1) return false;
  return true;
}

bool FiniteRelation::is_bijection_graph() const {
  if (!is_function() || source_->size != target_->size) return false;
  std::vector<bool> hit(target_->size, false);
  for (Index y : cols_) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

std::uint64_t FiniteRelation::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (char c : source_->name) mix(std::uint8_t(c));
  mix(source_->size);
  for (char c : target_->name) mix(std::uint8_t(c));
  mix(target_->size);
  for (const auto& [x, y] : pairs_) mix((std::uint64_t(x) << 32) | y);
  return h;
}

bool FiniteRelation::operator==(const FiniteRelation& other) const {
  return same_set(source_, other.source_) && same_set(target_, other.target_) &&
         pairs_ == other.pairs_;
}

}  // namespace floerkit
