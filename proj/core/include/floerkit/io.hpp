#pragma once

#include <string>

#include <json.hpp>

#include "floerkit/bicategory.hpp"
#include "floerkit/bordism.hpp"
#include "floerkit/fieldfun.hpp"
#include "floerkit/quilt.hpp"
#include "floerkit/repvar.hpp"

namespace floerkit {

/// Parsing raises ParseError with the offending JSON path in the witness.
nlohmann::json read_json_file(const std::string& path);

/// {"name", "order", "mul"} or {"builtin": name}.
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

/// List of [generator_index, exponent], generator indices 1..2g.
Word word_from_json(const nlohmann::json& j, int genus);
nlohmann::json word_to_json(const Word& w);

/// {"genus", "images", "inverse_images", "name"?}, or {"genus", "name"} resolved by name.
SurfaceAutomorphism automorphism_from_json(const nlohmann::json& j);
nlohmann::json automorphism_to_json(const SurfaceAutomorphism& a);

/// {"kind", "genus", "auto"}; "auto" is inline or a name such as "S1*Ta1".
SimpleCobordism step_from_json(const nlohmann::json& j);
nlohmann::json step_to_json(const SimpleCobordism& s);
/// A list of steps, or {"steps": [...]}; an empty list needs {"object": ...}.
CobordismChain chain_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const CobordismChain& c);

nlohmann::json set_to_json(const SetRef& s);
SetRef set_from_json(const nlohmann::json& j);
/// {"source", "target", "pairs"}
FiniteRelation relation_from_json(const nlohmann::json& j);
nlohmann::json relation_to_json(const FiniteRelation& r);
nlohmann::json variety_to_json(const RepVariety& v);
nlohmann::json generators_to_json(const GeneratorSet& g);

/// {"name", "generators", "relators"}; relator letters ±k, k in 1..generators.
Presentation presentation_from_json(const nlohmann::json& j);
nlohmann::json presentation_to_json(const Presentation& p);

/// {"objects": [names], "source", "target", "identities", "composition": [[...]], "morphisms"?: [names]}
FinCategory category_from_json(const nlohmann::json& j);
nlohmann::json category_to_json(const FinCategory& c);
/// Table fields of BicategoryData; square tables as nested lists, −1 where undefined.
BicategoryData bicategory_from_json(const nlohmann::json& j);
nlohmann::json bicategory_to_json(const BicategoryData& d);
nlohmann::json functor_to_json(const FinFunctor& f);

/// {"group"?, "ends", "outgoing", "seams", "circle_seams", "patch_labels", "seam_labels"}.
/// Seam-ends are "+k" (head) and "-k" (tail).
QuiltDiagram quilt_from_json(const nlohmann::json& j);
nlohmann::json quilt_to_json(const QuiltDiagram& q);

}  // namespace floerkit
