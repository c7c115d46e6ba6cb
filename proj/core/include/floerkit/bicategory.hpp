#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floerkit/category.hpp"
#include "floerkit/relation.hpp"

namespace floerkit {

using Mor1 = std::uint32_t;
using Mor2 = std::uint32_t;

/// Table-driven bicategory data; −1 marks undefined compositions.
/// Horizontal composition is "f then g" on 1-morphisms.
struct BicategoryData {
  std::size_t objects = 0;
  std::vector<ObjId> source1, target1;
  std::vector<Mor1> source2, target2;
  std::vector<Mor2> identity2;            // per 1-morphism
  std::vector<Mor1> units;                // designated weak unit per object
  std::vector<std::int32_t> vertical;     // |2|×|2|
  std::vector<std::int32_t> horizontal1;  // |1|×|1|
  std::vector<std::int32_t> horizontal2;  // |2|×|2|; empty when not available
  std::vector<Mor2> left_unitors;         // 1_x∘f ⇒ f, optional
  std::vector<Mor2> right_unitors;        // f∘1_y ⇒ f, optional
  std::vector<std::string> object_names, names1, names2;
};

class FinBicategory {
 public:
  /// Checks table shapes; the axioms are checked by validate().
  explicit FinBicategory(BicategoryData data);

  const BicategoryData& data() const { return d_; }
  std::size_t object_count() const { return d_.objects; }
  std::size_t count1() const { return d_.source1.size(); }
  std::size_t count2() const { return d_.source2.size(); }
  bool has_horizontal2() const { return !d_.horizontal2.empty(); }

  std::optional<Mor2> vertical(Mor2 a, Mor2 b) const;
  std::optional<Mor1> horizontal(Mor1 f, Mor1 g) const;
  std::optional<Mor2> horizontal2(Mor2 a, Mor2 b) const;
  std::optional<Mor2> vertical_inverse(Mor2 a) const;
  const std::vector<Mor2>& cells_from(Mor1 f) const { return out2_[f]; }
  const std::vector<Mor1>& hom(ObjId x, ObjId y) const { return hom1_[x * d_.objects + y]; }

  /// First violated axiom with indices, or null.
  nlohmann::json violation() const;
  void validate() const;

 private:
  BicategoryData d_;
  std::vector<std::vector<Mor2>> out2_;
  std::vector<std::vector<Mor1>> hom1_;
};

/// Class index per 1-morphism under "related by an invertible 2-cell".
std::vector<std::uint32_t> isomorphism_classes(const FinBicategory& c);

struct QuotientCategory {
  CategoryRef category;
  std::vector<MorId> class_of;        // 1-morphism → quotient morphism
  std::vector<Mor1> representatives;  // quotient morphism → 1-morphism
};

/// Raises IllFormedQuotient with a witness when composition does not descend to classes.
QuotientCategory quotient_by_2isos(const FinBicategory& c);

struct YonedaImage {
  ObjId base;
  std::vector<CategoryRef> categories;          // Mor(x₀, x)
  std::vector<std::vector<Mor1>> objects_of;    // category object → 1-morphism
  std::vector<std::vector<Mor2>> morphisms_of;  // category morphism → 2-morphism
  std::vector<FinFunctor> functors;             // per 1-morphism f: h ↦ h∘f
  std::vector<NatTransformation> transformations;  // per 2-morphism β: h ↦ id_h∘β
};

YonedaImage yoneda(const FinBicategory& c, ObjId x0);

/// Locally discrete bicategory: only identity 2-morphisms.
FinBicategory discrete_bicategory(const FinCategory& c);

struct FunctorBicategory {
  FinBicategory bicategory;
  std::vector<CategoryRef> categories;
  std::vector<FinFunctor> functors;
  std::vector<NatTransformation> transformations;
};

/// Categories, up to `per_hom` enumerated functors per pair closed under composition,
/// and all natural transformations between them.
FunctorBicategory functor_bicategory(const std::vector<CategoryRef>& categories, std::size_t per_hom,
                                     std::size_t max_cells = 4000);

struct RelationBicategory {
  FinBicategory bicategory;
  std::vector<SetRef> objects;
  std::vector<FiniteRelation> relations;
};

/// Relations generated by `generators` and the diagonals under geometric composition;
/// 2-morphisms are inclusions.
RelationBicategory relation_bicategory(const std::vector<SetRef>& objects,
                                       const std::vector<FiniteRelation>& generators,
                                       std::size_t max_relations = 512);

/// Sets and maps with conjugacies (α₁, α₂), α₂⁻¹∘f∘α₁ = g, as 2-morphisms on one set
/// {0,…,n−1}. No horizontal composition of 2-morphisms exists.
FinBicategory conjugacy_bicategory(std::size_t n);

}  // namespace floerkit
