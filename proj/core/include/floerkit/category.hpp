#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace floerkit {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

/// Finite category with a dense composition table; compose(f, g) is "f then g".
class FinCategory {
 public:
  FinCategory() = default;
  /// composition is row-major |Mor|×|Mor| with −1 where undefined.
  FinCategory(std::size_t objects, std::vector<ObjId> source, std::vector<ObjId> target,
              std::vector<MorId> identities, std::vector<std::int32_t> composition,
              std::vector<std::string> object_names = {}, std::vector<std::string> morphism_names = {});

  std::size_t object_count() const { return objects_; }
  std::size_t morphism_count() const { return source_.size(); }
  ObjId source(MorId f) const { return source_[f]; }
  ObjId target(MorId f) const { return target_[f]; }
  MorId identity(ObjId x) const { return identities_[x]; }
  bool composable(MorId f, MorId g) const { return target_[f] == source_[g]; }
  MorId compose(MorId f, MorId g) const;
  const std::vector<MorId>& hom(ObjId x, ObjId y) const { return homs_[x * objects_ + y]; }
  std::optional<MorId> inverse(MorId f) const;
  const std::string& object_name(ObjId x) const { return object_names_[x]; }
  const std::string& morphism_name(MorId f) const { return morphism_names_[f]; }
  const std::vector<std::int32_t>& table() const { return composition_; }

  /// First violated axiom with indices, or null.
  static nlohmann::json violation(std::size_t objects, const std::vector<ObjId>& source,
                                  const std::vector<ObjId>& target, const std::vector<MorId>& identities,
                                  const std::vector<std::int32_t>& composition);

  bool operator==(const FinCategory& other) const;

 private:
  std::size_t objects_ = 0;
  std::vector<ObjId> source_, target_;
  std::vector<MorId> identities_;
  std::vector<std::int32_t> composition_;
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::string> object_names_, morphism_names_;
};

using CategoryRef = std::shared_ptr<const FinCategory>;

struct FinFunctor {
  CategoryRef source;
  CategoryRef target;
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;

  void validate() const;
  bool operator==(const FinFunctor& other) const;
};

FinFunctor identity_functor(const CategoryRef& c);
/// F then G.
FinFunctor functor_compose(const FinFunctor& f, const FinFunctor& g);

/// Components η(x): F(x) → G(x) with F(k)∘η(y) = η(x)∘G(k).
struct NatTransformation {
  FinFunctor from;
  FinFunctor to;
  std::vector<MorId> components;

  void validate() const;
  bool is_isomorphism() const;
  bool operator==(const NatTransformation& other) const;
};

NatTransformation nat_identity(const FinFunctor& f);
NatTransformation nat_vertical_compose(const NatTransformation& eta, const NatTransformation& zeta);
/// x ↦ η₁₂(F₀₁(x)) ∘ G₁₂(η₀₁(x)); the alternative formula is computed and compared.
NatTransformation nat_horizontal_compose(const NatTransformation& eta01, const NatTransformation& eta12);

/// At most `limit` functors, in lexicographic order of their tables.
std::vector<FinFunctor> enumerate_functors(const CategoryRef& c, const CategoryRef& d, std::size_t limit,
                                           std::uint64_t node_budget = 1'000'000);
std::vector<NatTransformation> enumerate_transformations(const FinFunctor& f, const FinFunctor& g,
                                                         std::size_t limit);

struct FunctorCategory {
  CategoryRef category;
  std::vector<FinFunctor> functors;
  std::vector<NatTransformation> transformations;
};

/// Full subcategory of Fun(C, D) on the given functors.
FunctorCategory functor_category(const std::vector<FinFunctor>& functors, std::size_t max_morphisms = 4000);

/// Subcategory of finite sets and maps: objects of size 1..3, closed under composition.
CategoryRef random_finset_category(std::uint64_t seed, std::size_t max_objects, std::size_t max_morphisms);

}  // namespace floerkit
