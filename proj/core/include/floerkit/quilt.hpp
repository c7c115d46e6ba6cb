#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floerkit/config.hpp"
#include "floerkit/relcat.hpp"

namespace floerkit {

/// One end of an interval seam: `head` is its +∞ limit, the tail its −∞ limit.
struct SeamEnd {
  std::uint32_t seam = 0;
  bool head = false;
  auto operator<=>(const SeamEnd&) const = default;
};

/// Oriented interval seam; forward runs tail to head.
struct Dart {
  std::uint32_t seam = 0;
  bool forward = true;
  std::size_t index() const { return 2 * std::size_t(seam) + (forward ? 0 : 1); }
  Dart reverse() const { return {seam, !forward}; }
  bool operator==(const Dart&) const = default;
};

struct QuiltEnd {
  std::vector<SeamEnd> rotation;       // counterclockwise
  std::optional<std::uint32_t> patch;  // only for ends without seams
};

/// `minus` lies to the right of the circle, `plus` to its left.
struct CircleSeam {
  std::uint32_t minus = 0;
  std::uint32_t plus = 0;
};

/// Rotation system: ends are vertices, interval seams are edges.
struct QuiltSurface {
  std::vector<QuiltEnd> ends;
  std::uint32_t outgoing = 0;
  std::size_t seams = 0;
  std::vector<CircleSeam> circles;
  std::vector<std::uint32_t> face_patches;  // per traced face; empty means one patch per face
};

struct SurfaceAnalysis {
  std::vector<std::vector<Dart>> faces;
  std::vector<std::uint32_t> dart_patch;  // patch to the left of each dart
  std::vector<std::uint32_t> dart_end;    // end each dart leaves
  std::size_t patches = 0;
  long euler = 0;
  int genus = 0;

  std::uint32_t left(Dart d) const { return dart_patch[d.index()]; }
  std::uint32_t right(Dart d) const { return dart_patch[d.reverse().index()]; }
};

/// Structural problems, empty when the surface is well formed.
std::vector<nlohmann::json> surface_problems(const QuiltSurface& s);
/// Faces are traced from darts in index order. Raises InvalidDiagram.
SurfaceAnalysis analyze(const QuiltSurface& s);

struct PatchLabel {
  std::string name;
  SetRef set;  // null in generic mode

  static PatchLabel of(const SetRef& s) { return {s->name, s}; }
  bool operator==(const PatchLabel& o) const;
};

/// Label of the forward orientation; the reverse carries the transpose.
struct SeamLabel {
  std::string name;
  std::string source;
  std::string target;
  std::optional<FiniteRelation> relation;

  static SeamLabel of(const FiniteRelation& r, std::string name = "Y");
  static SeamLabel generic(std::string name, std::string source, std::string target);
  SeamLabel transpose() const;
  bool operator==(const SeamLabel& o) const;
};

/// Labels for interval seams come first, then circle seams.
struct QuiltDiagram {
  QuiltSurface surface;
  std::vector<PatchLabel> patches;
  std::vector<SeamLabel> seams;

  bool relation_mode() const;
  const SeamLabel& circle_label(std::size_t c) const { return seams[surface.seams + c]; }
  SeamLabel dart_label(Dart d) const;
};

struct QuiltReport {
  bool valid = false;
  std::vector<nlohmann::json> problems;
  std::size_t faces = 0;
  std::size_t patches = 0;
  std::optional<long> euler;
  std::optional<int> genus;

  nlohmann::json to_json() const;
};

QuiltReport quilt_validate(const QuiltDiagram& q);

/// Corner patches read at an end: incoming ends counterclockwise from the base
/// seam-end, the outgoing end clockwise. Node k is the source of the k-th label.
std::vector<std::uint32_t> end_nodes(const QuiltDiagram& q, std::uint32_t end);
std::vector<SeamLabel> end_labels(const QuiltDiagram& q, std::uint32_t end);
CyclicChain end_cyclic_morphism(const QuiltDiagram& q, std::uint32_t end);

/// Smallest r with out-label k of q₁ equal to in-label k+r at e. Raises CyclicMismatch.
std::size_t glue_rotation(const QuiltDiagram& q1, const QuiltDiagram& q2, std::uint32_t e);
/// Glues the outgoing end of q₁ into the incoming end e of q₂. Ends of q₁ come first.
QuiltDiagram quilt_glue(const QuiltDiagram& q1, const QuiltDiagram& q2, std::uint32_t e);

QuiltDiagram shrink_strip(const QuiltDiagram& q, std::uint32_t patch, bool require_embedded = true);

struct ShrinkResult {
  QuiltDiagram diagram;
  /// node_origin[e][k]: node of end e before shrinking that becomes node k.
  std::vector<std::vector<std::uint32_t>> node_origin;
};

/// As shrink_strip; the dropped node at each end is the strip patch.
ShrinkResult shrink_strip_traced(const QuiltDiagram& q, std::uint32_t patch, bool require_embedded = true);

using Tuple = std::vector<Index>;

/// Validated diagram with its constraints prepared for repeated evaluation.
class QuiltEvaluator {
 public:
  explicit QuiltEvaluator(const QuiltDiagram& q, RunConfig cfg = {});
  /// Outgoing tuples of all patch assignments extending the inputs, sorted.
  std::vector<Tuple> operator()(const std::map<std::uint32_t, Tuple>& inputs) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Outgoing tuples of all patch assignments extending the inputs, sorted.
std::vector<Tuple> quilt_evaluate(const QuiltDiagram& q, const std::map<std::uint32_t, Tuple>& inputs,
                                  const RunConfig& cfg = {});

struct QuiltIsomorphism {
  std::vector<std::uint32_t> ends;
  std::vector<std::uint32_t> patches;
  std::vector<Dart> seams;  // image of each forward interval seam
  std::vector<std::pair<std::uint32_t, bool>> circles;
};

std::optional<QuiltIsomorphism> quilt_isomorphism(const QuiltDiagram& a, const QuiltDiagram& b);

/// Rebuilds a diagram from dart adjacency data and renumbers patches by first appearance.
QuiltDiagram assemble_diagram(std::vector<QuiltEnd> ends, std::uint32_t outgoing, std::vector<SeamLabel> seam_labels,
                              const std::vector<std::uint32_t>& dart_patch, std::vector<CircleSeam> circles,
                              std::vector<SeamLabel> circle_labels, const std::vector<PatchLabel>& patch_labels);

// fixtures; incoming ends come before the outgoing end

/// One patch, one outgoing end and no seams.
QuiltDiagram sphere_diagram(const PatchLabel& p);
/// Cylinder with parallel seams; in-chain and out-chain both read as `labels`.
QuiltDiagram identity_diagram(const std::vector<SeamLabel>& labels);
QuiltDiagram identity_diagram(const PatchLabel& p);
/// No incoming ends; outgoing cyclic morphism (Y, Yᵀ).
QuiltDiagram cap_diagram(const SeamLabel& y);
/// Bent seam through a socket end: ends 0 and 2 read (Y, Yᵀ), end 1 reads (Yᵀ, Y).
QuiltDiagram cup_diagram(const SeamLabel& y);
/// α: f ⇒ g at end 0, β: g ⇒ h at end 1.
QuiltDiagram vertical_diagram(const SeamLabel& f, const SeamLabel& g, const SeamLabel& h);
/// α: f ⇒ g at end 0 beside β: f₂ ⇒ g₂ at end 1.
QuiltDiagram horizontal_diagram(const SeamLabel& f, const SeamLabel& g, const SeamLabel& f2, const SeamLabel& g2);
/// Isolated ends in the inner and outer patch, circles Y₁ and Y₂ between.
QuiltDiagram concentric_diagram(const SeamLabel& y1, const SeamLabel& y2);

/// kind: identity | cap | cup | vertical | horizontal | concentric | sphere.
QuiltDiagram string_diagram(const std::string& kind, const std::vector<SeamLabel>& labels);

std::string export_dot(const QuiltDiagram& q);

}  // namespace floerkit
