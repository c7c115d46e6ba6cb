#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "floerkit/config.hpp"
#include "floerkit/relation.hpp"

namespace floerkit {

/// {(x,z) : ∃y, (x,y) ∈ L₁₂, (y,z) ∈ L₂₃}
FiniteRelation geometric_compose(const FiniteRelation& l12, const FiniteRelation& l23);

struct EmbeddingWitness {
  Index x, y, y_other, z;
};

struct EmbeddingCheck {
  bool embedded = true;
  std::optional<EmbeddingWitness> witness;
  std::size_t triples = 0;  // matching (x,y,z)
};

/// Embedded iff every composite pair has a unique intermediate.
EmbeddingCheck is_embedded(const FiniteRelation& l12, const FiniteRelation& l23);

struct RelationChain {
  SetRef source;
  SetRef target;
  std::vector<FiniteRelation> steps;

  static RelationChain identity(const SetRef& set) { return {set, set, {}}; }
  static RelationChain from_steps(std::vector<FiniteRelation> steps);
  void validate() const;
  RelationChain transpose() const;
  std::uint64_t hash() const;
  bool operator==(const RelationChain& other) const;
};

RelationChain chain_concat(const RelationChain& a, const RelationChain& b);

enum class ChainMoveKind { Compose, Factor };

struct ChainMove {
  ChainMoveKind kind;
  std::size_t position;
};

/// Factorizations recorded whenever a composition is performed.
class FactorizationRegistry {
 public:
  void record(const FiniteRelation& composite, const FiniteRelation& first, const FiniteRelation& second);
  std::vector<std::pair<FiniteRelation, FiniteRelation>> lookup(const FiniteRelation& composite) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::multimap<std::uint64_t, std::tuple<FiniteRelation, FiniteRelation, FiniteRelation>> entries_;
};

/// Bounded search over embedded compositions and recorded factorizations.
std::optional<std::vector<ChainMove>> chain_equivalent(const RelationChain& c1, const RelationChain& c2,
                                                       int depth, FactorizationRegistry* registry = nullptr);

RelationChain apply_chain_move(const RelationChain& c, const ChainMove& m,
                               const FactorizationRegistry& registry, std::size_t choice = 0);

/// rels[k] runs from node k to node k+1 (mod n).
struct CyclicChain {
  std::vector<FiniteRelation> rels;

  static CyclicChain from_closed(const RelationChain& chain);
  /// The identity cyclic chain of a set: one diagonal.
  static CyclicChain identity(const SetRef& set);
  void validate() const;
  std::size_t length() const { return rels.size(); }
  CyclicChain rotate(std::size_t k) const;
  bool operator==(const CyclicChain& other) const { return rels == other.rels; }
};

struct GeneratorSet {
  CyclicChain chain;
  std::vector<Index> flat;

  std::size_t arity() const { return chain.length(); }
  std::size_t size() const { return arity() == 0 ? 0 : flat.size() / arity(); }
  std::span<const Index> tuple(std::size_t i) const { return {flat.data() + i * arity(), arity()}; }
  std::optional<std::size_t> find(std::span<const Index> t) const;
};

GeneratorSet generator_set(const CyclicChain& c, const RunConfig& cfg = {});

/// Rotation bijection: tuple t of c ↦ tuple (t_k, …, t_{k−1}) of c.rotate(k).
std::vector<std::size_t> rotation_bijection(const GeneratorSet& before, const GeneratorSet& after,
                                            std::size_t k);

/// Contracts relations i and i+1; the node between them is dropped.
CyclicChain contract(const CyclicChain& c, std::size_t i);

struct CompositionBijection {
  std::size_t position;
  std::size_t dropped_node;
  CyclicChain contracted;
  GeneratorSet before;
  GeneratorSet after;
  std::vector<std::size_t> forward;  // before index → after index
};

CompositionBijection composition_bijection(const CyclicChain& c, std::size_t i,
                                           const RunConfig& cfg = {});

}  // namespace floerkit
