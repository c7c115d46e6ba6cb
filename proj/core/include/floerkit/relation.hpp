#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace floerkit {

/// Abstract finite set {0, …, size−1}; sets are identified by (name, size).
struct FiniteSet {
  std::string name;
  std::size_t size = 0;
  bool operator==(const FiniteSet&) const = default;
};

using SetRef = std::shared_ptr<const FiniteSet>;

SetRef make_set(std::string name, std::size_t size);
bool same_set(const SetRef& a, const SetRef& b);

using Index = std::uint32_t;
using IndexPair = std::pair<Index, Index>;

/// Relation between two finite sets, stored as a sorted set of index pairs.
class FiniteRelation {
 public:
  FiniteRelation() = default;
  FiniteRelation(SetRef source, SetRef target, std::vector<IndexPair> pairs);

  static FiniteRelation diagonal(const SetRef& set);
  static FiniteRelation graph(const SetRef& source, const SetRef& target,
                              const std::vector<Index>& map);
  static FiniteRelation full(const SetRef& source, const SetRef& target);

  const SetRef& source() const { return source_; }
  const SetRef& target() const { return target_; }
  const std::vector<IndexPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  bool contains(Index x, Index y) const;
  /// Targets related to x, ascending.
  std::span<const Index> image(Index x) const;

  FiniteRelation transpose() const;
  bool is_function() const;
  bool is_bijection_graph() const;
  std::uint64_t hash() const;

  bool operator==(const FiniteRelation& other) const;

 private:
  SetRef source_;
  SetRef target_;
  std::vector<IndexPair> pairs_;
  std::vector<Index> cols_;
  std::vector<std::size_t> offsets_;
};

}  // namespace floerkit
