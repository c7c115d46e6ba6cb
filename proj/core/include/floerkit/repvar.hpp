#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "floerkit/automorphism.hpp"
#include "floerkit/bordism.hpp"
#include "floerkit/config.hpp"
#include "floerkit/group.hpp"
#include "floerkit/relation.hpp"

namespace floerkit {

/// Lexicographically minimal tuple in the simultaneous-conjugation orbit.
std::vector<Element> canonicalize(const FiniteGroup& g, std::span<const Element> tuple);
bool surface_relator_holds(const FiniteGroup& g, std::span<const Element> tuple);

/// Hom(π₁Σ_g, G)/G as a sorted list of canonical tuples.
class RepVariety {
 public:
  RepVariety(std::shared_ptr<const FiniteGroup> group, BordObject object,
             std::vector<Element> flat_points);

  const FiniteGroup& group() const { return *group_; }
  const BordObject& object() const { return object_; }
  int genus() const { return object_.is_empty ? 0 : object_.genus; }
  std::size_t arity() const { return std::size_t(2 * genus()); }
  std::size_t size() const { return size_; }
  std::span<const Element> point(std::size_t i) const {
    return {flat_.data() + i * arity(), arity()};
  }
  std::optional<Index> index_of(std::span<const Element> canonical_tuple) const;
  const SetRef& set() const { return set_; }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  BordObject object_;
  std::vector<Element> flat_;
  std::size_t size_;
  SetRef set_;
};

std::string variety_name(const FiniteGroup& g, const BordObject& obj);

RepVariety repvariety(std::shared_ptr<const FiniteGroup> g, const BordObject& obj,
                      const RunConfig& cfg = {});

/// Group plus caches of varieties and simple-cobordism relations.
class RepContext {
 public:
  explicit RepContext(FiniteGroup g, RunConfig cfg = {});

  const FiniteGroup& group() const { return *group_; }
  const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }
  const RunConfig& config() const { return cfg_; }

  std::shared_ptr<const RepVariety> variety(const BordObject& obj);
  std::shared_ptr<const RepVariety> variety(int genus) { return variety(BordObject::surface(genus)); }

  /// Graph of [ρ] ↦ [ρ∘φ⁻¹].
  FiniteRelation cyl(const SurfaceAutomorphism& phi);
  /// Pairs ([σ∘ψ⁻¹], [(σ(a_i),σ(b_i))_{i≥2}]) over σ with σ(a₁) = e.
  FiniteRelation attach2(const SurfaceAutomorphism& psi);
  /// Pairs ([ρ], [(ρψ(a_i), ρψ(b_i))_{i≥2}]) over points with ρ(ψ(a₁)) = e.
  FiniteRelation attach2_direct(const SurfaceAutomorphism& psi);
  FiniteRelation simple(const SimpleCobordism& s);

 private:
  std::shared_ptr<const FiniteGroup> group_;
  RunConfig cfg_;
  std::mutex mu_;
  std::map<std::pair<bool, int>, std::shared_ptr<const RepVariety>> varieties_;
  std::map<std::string, FiniteRelation> relations_;
};

FiniteRelation relation_of_cyl(RepContext& ctx, const SurfaceAutomorphism& phi);
FiniteRelation relation_of_attach2(RepContext& ctx, const AttachingCircle& alpha);
FiniteRelation relation_of_simple(RepContext& ctx, const SimpleCobordism& s);

}  // namespace floerkit
