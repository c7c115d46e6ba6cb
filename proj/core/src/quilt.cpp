#include "floerkit/quilt.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <set>

#include "floerkit/error.hpp"
#include "floerkit/parallel.hpp"

namespace floerkit {

using nlohmann::json;

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t(0);

std::size_t he_index(SeamEnd h) { return 2 * std::size_t(h.seam) + (h.head ? 1 : 0); }
Dart leave(SeamEnd h) { return {h.seam, !h.head}; }
SeamEnd leave_he(Dart d) { return {d.seam, !d.forward}; }
SeamEnd arrive_he(Dart d) { return {d.seam, d.forward}; }

json he_json(SeamEnd h) { return {{"seam", h.seam}, {"side", h.head ? "head" : "tail"}}; }

struct Located {
  std::uint32_t end = kNone;
  std::uint32_t pos = 0;
};

struct Traced {
  std::vector<Located> where;  // per half-edge
  std::vector<std::vector<Dart>> faces;
  std::vector<std::uint32_t> dart_face;
  std::vector<std::uint32_t> dart_end;
};

std::vector<json> structural_problems(const QuiltSurface& s, std::vector<Located>* where_out) {
  std::vector<json> problems;
  if (s.outgoing >= s.ends.size())
    problems.push_back({{"check", "outgoing end exists"}, {"outgoing", s.outgoing}, {"ends", s.ends.size()}});
  std::vector<Located> where(2 * s.seams);
  for (std::uint32_t e = 0; e < s.ends.size(); ++e) {
    const auto& end = s.ends[e];
    for (std::uint32_t i = 0; i < end.rotation.size(); ++i) {
      const SeamEnd h = end.rotation[i];
      if (h.seam >= s.seams) {
        problems.push_back({{"check", "seam-end names a seam"}, {"end", e}, {"position", i}, {"seam_end", he_json(h)}});
        continue;
      }
      auto& w = where[he_index(h)];
      if (w.end != kNone) {
        problems.push_back({{"check", "seam-end attached once"}, {"seam_end", he_json(h)}, {"ends", {w.end, e}}});
        continue;
      }
      w = {e, i};
    }
    if (end.rotation.empty() && !end.patch)
      problems.push_back({{"check", "end without seams lies in a patch"}, {"end", e}});
    if (!end.rotation.empty() && end.patch)
      problems.push_back({{"check", "patch given only for ends without seams"}, {"end", e}});
  }
  for (std::uint32_t sm = 0; sm < s.seams; ++sm)
    for (bool head : {false, true})
      if (where[he_index({sm, head})].end == kNone)
        problems.push_back({{"check", "seam-end attached once"}, {"seam_end", he_json({sm, head})}, {"ends", json::array()}});
  if (where_out) *where_out = std::move(where);
  return problems;
}

Traced trace(const QuiltSurface& s, std::vector<Located> where) {
  Traced t;
  t.where = std::move(where);
  t.dart_face.assign(2 * s.seams, kNone);
  t.dart_end.assign(2 * s.seams, kNone);
  for (std::uint32_t sm = 0; sm < s.seams; ++sm)
    for (bool fwd : {true, false}) {
      Dart d{sm, fwd};
      t.dart_end[d.index()] = t.where[he_index(leave_he(d))].end;
    }
  for (std::size_t start = 0; start < 2 * s.seams; ++start) {
    if (t.dart_face[start] != kNone) continue;
    const auto id = std::uint32_t(t.faces.size());
    std::vector<Dart> face;
    Dart d{std::uint32_t(start / 2), start % 2 == 0};
    while (t.dart_face[d.index()] == kNone) {
      t.dart_face[d.index()] = id;
      face.push_back(d);
      const Located at = t.where[he_index(arrive_he(d))];
      const auto& rot = s.ends[at.end].rotation;
      d = leave(rot[(at.pos + rot.size() - 1) % rot.size()]);
    }
    t.faces.push_back(std::move(face));
  }
  return t;
}

std::vector<json> full_check(const QuiltSurface& s, SurfaceAnalysis* out) {
  std::vector<Located> where;
  auto problems = structural_problems(s, &where);
  if (!problems.empty()) return problems;
  Traced t = trace(s, std::move(where));
  const std::size_t nf = t.faces.size();
  std::vector<std::uint32_t> face_patch(nf);
  if (s.face_patches.empty()) {
    std::iota(face_patch.begin(), face_patch.end(), 0u);
  } else if (s.face_patches.size() != nf) {
    problems.push_back({{"check", "one patch per traced face"}, {"faces", nf}, {"given", s.face_patches.size()}});
    return problems;
  } else {
    face_patch = s.face_patches;
  }
  std::uint32_t count = 0;
  auto see = [&](std::uint32_t p) { count = std::max(count, p + 1); };
  for (auto p : face_patch) see(p);
  for (const auto& c : s.circles) see(c.minus), see(c.plus);
  for (const auto& e : s.ends)
    if (e.patch) see(*e.patch);
  std::vector<long> boundaries(count, 0);
  for (auto p : face_patch) ++boundaries[p];
  for (const auto& c : s.circles) ++boundaries[c.minus], ++boundaries[c.plus];
  for (const auto& e : s.ends)
    if (e.patch) ++boundaries[*e.patch];
  for (std::uint32_t p = 0; p < count; ++p)
    if (boundaries[p] == 0) problems.push_back({{"check", "every patch id is used"}, {"patch", p}});

  const std::size_t v = s.ends.size();
  std::vector<std::size_t> parent(v + count);
  std::iota(parent.begin(), parent.end(), std::size_t(0));
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (std::size_t f = 0; f < nf; ++f)
    for (Dart d : t.faces[f]) unite(t.dart_end[d.index()], v + face_patch[f]);
  for (const auto& c : s.circles) unite(v + c.minus, v + c.plus);
  for (std::uint32_t e = 0; e < v; ++e)
    if (s.ends[e].patch) unite(e, v + *s.ends[e].patch);
  std::set<std::size_t> roots;
  for (std::size_t x = 0; x < v + count; ++x) roots.insert(find(x));
  if (roots.size() > 1) problems.push_back({{"check", "surface is connected"}, {"components", roots.size()}});

  long euler = long(v) - long(s.seams);
  for (auto b : boundaries) euler += 2 - b;
  if (euler > 2 || euler % 2 != 0)
    problems.push_back({{"check", "Euler characteristic of a closed oriented surface"}, {"euler", euler}});
  if (out) {
    out->faces = t.faces;
    out->dart_patch.assign(2 * s.seams, 0);
    for (std::size_t d = 0; d < 2 * s.seams; ++d) out->dart_patch[d] = face_patch[t.dart_face[d]];
    out->dart_end = t.dart_end;
    out->patches = count;
    out->euler = euler;
    out->genus = int((2 - euler) / 2);
  }
  return problems;
}

bool same_object(const std::string& a_name, const SetRef& a, const std::string& b_name, const SetRef& b) {
  if (a && b) return same_set(a, b);
  return a_name == b_name;
}

SetRef label_source_set(const SeamLabel& l) { return l.relation ? l.relation->source() : nullptr; }
SetRef label_target_set(const SeamLabel& l) { return l.relation ? l.relation->target() : nullptr; }

bool composable(const SeamLabel& a, const SeamLabel& b) {
  return same_object(a.target, label_target_set(a), b.source, label_source_set(b));
}

PatchLabel source_patch(const SeamLabel& l) {
  return l.relation ? PatchLabel::of(l.relation->source()) : PatchLabel{l.source, nullptr};
}
PatchLabel target_patch(const SeamLabel& l) {
  return l.relation ? PatchLabel::of(l.relation->target()) : PatchLabel{l.target, nullptr};
}

SeamLabel identity_label(const PatchLabel& p) {
  if (p.set) return SeamLabel::of(FiniteRelation::diagonal(p.set), "1");
  return SeamLabel::generic("1_" + p.name, p.name, p.name);
}

SeamLabel compose_labels(const SeamLabel& a, const SeamLabel& b, bool require_embedded, const json& where) {
  SeamLabel out{"(" + a.name + ";" + b.name + ")", a.source, b.target, std::nullopt};
  if (a.relation && b.relation) {
    if (require_embedded) {
      auto check = is_embedded(*a.relation, *b.relation);
      if (!check.embedded) {
        json w = where;
        w["x"] = check.witness->x;
        w["y"] = check.witness->y;
        w["y_other"] = check.witness->y_other;
        w["z"] = check.witness->z;
        raise(ErrorKind::NotEmbedded, "composition of the two seam labels is not embedded", w);
      }
    }
    out.relation = geometric_compose(*a.relation, *b.relation);
  }
  return out;
}

void check_end(const QuiltDiagram& q, std::uint32_t e) {
  if (e >= q.surface.ends.size())
    raise(ErrorKind::InvalidEnd, "end " + std::to_string(e) + " does not exist", {{"end", e}});
}

}  // namespace

std::vector<json> surface_problems(const QuiltSurface& s) { return full_check(s, nullptr); }

SurfaceAnalysis analyze(const QuiltSurface& s) {
  SurfaceAnalysis a;
  auto problems = full_check(s, &a);
  if (!problems.empty())
    raise(ErrorKind::InvalidDiagram, "quilt surface violates: " + problems[0]["check"].get<std::string>(), problems[0]);
  return a;
}

bool PatchLabel::operator==(const PatchLabel& o) const { return same_object(name, set, o.name, o.set); }

SeamLabel SeamLabel::of(const FiniteRelation& r, std::string name) {
  return {std::move(name), r.source()->name, r.target()->name, r};
}

SeamLabel SeamLabel::generic(std::string name, std::string source, std::string target) {
  return {std::move(name), std::move(source), std::move(target), std::nullopt};
}

SeamLabel SeamLabel::transpose() const {
  SeamLabel t{name, target, source, std::nullopt};
  if (t.name.size() >= 2 && t.name.ends_with("^T")) t.name.resize(t.name.size() - 2);
  else t.name += "^T";
  if (relation) t.relation = relation->transpose();
  return t;
}

bool SeamLabel::operator==(const SeamLabel& o) const {
  if (relation && o.relation) return *relation == *o.relation;
  return name == o.name && source == o.source && target == o.target;
}

bool QuiltDiagram::relation_mode() const {
  for (const auto& p : patches)
    if (!p.set) return false;
  for (const auto& s : seams)
    if (!s.relation) return false;
  return true;
}

SeamLabel QuiltDiagram::dart_label(Dart d) const {
  return d.forward ? seams[d.seam] : seams[d.seam].transpose();
}

json QuiltReport::to_json() const {
  json j{{"valid", valid}, {"problems", problems}, {"faces", faces}, {"patches", patches}};
  j["euler"] = euler ? json(*euler) : json(nullptr);
  j["genus"] = genus ? json(*genus) : json(nullptr);
  return j;
}

QuiltReport quilt_validate(const QuiltDiagram& q) {
  QuiltReport r;
  SurfaceAnalysis a;
  r.problems = full_check(q.surface, &a);
  if (r.problems.empty()) {
    r.faces = a.faces.size();
    r.patches = a.patches;
    r.euler = a.euler;
    r.genus = a.genus;
    if (q.patches.size() != a.patches)
      r.problems.push_back({{"check", "one label per patch"}, {"patches", a.patches}, {"labels", q.patches.size()}});
    const std::size_t ns = q.surface.seams + q.surface.circles.size();
    if (q.seams.size() != ns)
      r.problems.push_back({{"check", "one label per seam"}, {"seams", ns}, {"labels", q.seams.size()}});
    if (r.problems.empty()) {
      auto check = [&](const SeamLabel& l, std::uint32_t minus, std::uint32_t plus, json where) {
        const auto& pm = q.patches[minus];
        const auto& pp = q.patches[plus];
        if (!same_object(l.source, label_source_set(l), pm.name, pm.set) ||
            !same_object(l.target, label_target_set(l), pp.name, pp.set)) {
          where["check"] = "seam label runs from the right patch to the left patch";
          where["minus"] = minus;
          where["plus"] = plus;
          where["label"] = l.name;
          r.problems.push_back(where);
        }
      };
      for (std::uint32_t s = 0; s < q.surface.seams; ++s) {
        Dart d{s, true};
        check(q.seams[s], a.right(d), a.left(d), {{"seam", s}});
      }
      for (std::uint32_t c = 0; c < q.surface.circles.size(); ++c)
        check(q.circle_label(c), q.surface.circles[c].minus, q.surface.circles[c].plus, {{"circle", c}});
    }
  }
  r.valid = r.problems.empty();
  return r;
}

namespace {

struct EndReading {
  std::vector<std::uint32_t> nodes;
  std::vector<SeamLabel> labels;
};

EndReading read_end(const QuiltDiagram& q, const SurfaceAnalysis& a, std::uint32_t e) {
  const auto& end = q.surface.ends[e];
  EndReading r;
  const std::size_t n = end.rotation.size();
  if (n == 0) {
    r.nodes = {*end.patch};
    r.labels = {identity_label(q.patches[*end.patch])};
    return r;
  }
  auto corner = [&](std::size_t k) { return a.left(leave(end.rotation[k % n])); };
  if (e == q.surface.outgoing) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = (n - k) % n;
      r.nodes.push_back(corner(i));
      r.labels.push_back(q.dart_label(leave(end.rotation[i]).reverse()));
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      r.nodes.push_back(corner(k + n - 1));
      r.labels.push_back(q.dart_label(leave(end.rotation[k])));
    }
  }
  return r;
}

}  // namespace

std::vector<std::uint32_t> end_nodes(const QuiltDiagram& q, std::uint32_t end) {
  check_end(q, end);
  return read_end(q, analyze(q.surface), end).nodes;
}

std::vector<SeamLabel> end_labels(const QuiltDiagram& q, std::uint32_t end) {
  check_end(q, end);
  return read_end(q, analyze(q.surface), end).labels;
}

CyclicChain end_cyclic_morphism(const QuiltDiagram& q, std::uint32_t end) {
  check_end(q, end);
  if (!q.relation_mode()) raise(ErrorKind::InvalidDiagram, "generic labels carry no relations");
  CyclicChain c;
  for (auto& l : end_labels(q, end)) c.rels.push_back(*l.relation);
  return c;
}

QuiltDiagram assemble_diagram(std::vector<QuiltEnd> ends, std::uint32_t outgoing, std::vector<SeamLabel> seam_labels,
                              const std::vector<std::uint32_t>& dart_patch, std::vector<CircleSeam> circles,
                              std::vector<SeamLabel> circle_labels, const std::vector<PatchLabel>& patch_labels) {
  QuiltDiagram q;
  q.surface.ends = std::move(ends);
  q.surface.outgoing = outgoing;
  q.surface.seams = seam_labels.size();
  std::vector<Located> where;
  auto problems = structural_problems(q.surface, &where);
  if (!problems.empty())
    raise(ErrorKind::InvalidDiagram, "quilt surface violates: " + problems[0]["check"].get<std::string>(), problems[0]);
  Traced t = trace(q.surface, std::move(where));
  std::vector<std::uint32_t> renumber(patch_labels.size(), kNone);
  std::uint32_t next = 0;
  auto id = [&](std::uint32_t old) {
    if (renumber[old] == kNone) {
      renumber[old] = next++;
      q.patches.push_back(patch_labels[old]);
    }
    return renumber[old];
  };
  for (const auto& face : t.faces) {
    const std::uint32_t old = dart_patch[face[0].index()];
    for (Dart d : face)
      if (dart_patch[d.index()] != old)
        raise(ErrorKind::InvalidDiagram, "a traced face meets two patches",
              {{"seam", d.seam}, {"patches", {old, dart_patch[d.index()]}}});
    q.surface.face_patches.push_back(id(old));
  }
  for (auto& c : circles) c = {id(c.minus), id(c.plus)};
  for (auto& e : q.surface.ends)
    if (e.patch) e.patch = id(*e.patch);
  q.surface.circles = std::move(circles);
  q.seams = std::move(seam_labels);
  for (auto& l : circle_labels) q.seams.push_back(std::move(l));
  return q;
}

std::size_t glue_rotation(const QuiltDiagram& q1, const QuiltDiagram& q2, std::uint32_t e) {
  check_end(q2, e);
  if (e == q2.surface.outgoing) raise(ErrorKind::InvalidEnd, "gluing needs an incoming end", {{"end", e}});
  const auto r1 = read_end(q1, analyze(q1.surface), q1.surface.outgoing);
  const auto r2 = read_end(q2, analyze(q2.surface), e);
  const std::size_t n = r1.labels.size();
  if (n != r2.labels.size() ||
      q1.surface.ends[q1.surface.outgoing].rotation.size() != q2.surface.ends[e].rotation.size())
    raise(ErrorKind::CyclicMismatch, "ends have different numbers of seams",
          {{"position", std::min(n, r2.labels.size())}, {"outgoing_length", n}, {"incoming_length", r2.labels.size()}});
  auto agrees = [&](std::size_t k, std::size_t r) {
    const std::size_t j = (k + r) % n;
    return r1.labels[k] == r2.labels[j] && q1.patches[r1.nodes[k]] == q2.patches[r2.nodes[j]];
  };
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t k = 0;
    while (k < n && agrees(k, r)) ++k;
    if (k == n) return r;
  }
  std::size_t k = 0;
  while (agrees(k, 0)) ++k;
  raise(ErrorKind::CyclicMismatch, "cyclic 1-morphisms disagree under every rotation",
        {{"position", k}, {"outgoing_label", r1.labels[k].name}, {"incoming_label", r2.labels[k].name}});
}

QuiltDiagram quilt_glue(const QuiltDiagram& q1, const QuiltDiagram& q2, std::uint32_t e) {
  const std::size_t r = glue_rotation(q1, q2, e);
  const auto a1 = analyze(q1.surface), a2 = analyze(q2.surface);
  const auto o = q1.surface.outgoing;
  const auto r1 = read_end(q1, a1, o), r2 = read_end(q2, a2, e);
  const std::size_t n = r1.nodes.size();
  const std::uint32_t s1 = std::uint32_t(q1.surface.seams), s2 = std::uint32_t(q2.surface.seams);
  const std::uint32_t p1 = std::uint32_t(a1.patches), p2 = std::uint32_t(a2.patches);

  // patches of both sides share one id space, merged along the glued corners
  std::vector<std::uint32_t> parent(p1 + p2);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    const auto x = find(r1.nodes[k]), y = find(p1 + r2.nodes[(k + r) % n]);
    parent[std::max(x, y)] = std::min(x, y);
  }
  std::vector<PatchLabel> labels(q1.patches);
  labels.insert(labels.end(), q2.patches.begin(), q2.patches.end());

  // seam pieces: q₁ seams then q₂ seams; half-edges at o and e are joined
  auto global = [&](bool second, SeamEnd h) { return SeamEnd{h.seam + (second ? s1 : 0), h.head}; };
  std::map<SeamEnd, SeamEnd> joined;
  const auto& rot_o = q1.surface.ends[o].rotation;
  const auto& rot_e = q2.surface.ends[e].rotation;
  for (std::size_t k = 0; k < rot_o.size(); ++k) {
    const SeamEnd x = global(false, rot_o[(n - k) % n]), y = global(true, rot_e[(k + r) % n]);
    joined[x] = y;
    joined[y] = x;
  }
  auto piece_label = [&](std::uint32_t piece) {
    return piece < s1 ? q1.seams[piece] : q2.seams[piece - s1];
  };
  auto piece_left = [&](Dart d) {
    return d.seam < s1 ? find(a1.left(d)) : find(p1 + a2.left(Dart{d.seam - s1, d.forward}));
  };
  auto entry = [](Dart d) { return leave_he(d); };
  auto exit = [](Dart d) { return arrive_he(d); };

  std::vector<SeamLabel> seam_labels, circle_labels;
  std::vector<std::uint32_t> dart_patch;
  std::vector<CircleSeam> circles;
  std::map<SeamEnd, SeamEnd> rename;  // surviving half-edge to merged seam-end
  std::vector<bool> seen(s1 + s2, false);
  for (std::uint32_t piece = 0; piece < s1 + s2; ++piece) {
    if (seen[piece]) continue;
    Dart start{piece, true};
    bool cycle = false;
    for (;;) {
      auto it = joined.find(entry(start));
      if (it == joined.end()) break;
      const SeamEnd prev = it->second;
      start = Dart{prev.seam, prev.head};  // leaves through `prev`
      if (start.seam == piece) {
        cycle = true;
        start = Dart{piece, true};
        break;
      }
    }
    std::vector<Dart> walk;
    Dart d = start;
    for (;;) {
      walk.push_back(d);
      seen[d.seam] = true;
      auto it = joined.find(exit(d));
      if (it == joined.end()) break;
      const SeamEnd next = it->second;
      d = leave(next);
      if (cycle && d == start) break;
    }
    const Dart first = walk.front();
    const SeamLabel label = first.forward ? piece_label(first.seam) : piece_label(first.seam).transpose();
    if (cycle) {
      circles.push_back({piece_left(first.reverse()), piece_left(first)});
      circle_labels.push_back(label);
    } else {
      const auto id = std::uint32_t(seam_labels.size());
      rename[entry(walk.front())] = SeamEnd{id, false};
      rename[exit(walk.back())] = SeamEnd{id, true};
      seam_labels.push_back(label);
      dart_patch.push_back(piece_left(first));
      dart_patch.push_back(piece_left(first.reverse()));
    }
  }
  for (const auto& c : q1.surface.circles) circles.push_back({find(c.minus), find(c.plus)});
  for (std::size_t c = 0; c < q1.surface.circles.size(); ++c) circle_labels.push_back(q1.circle_label(c));
  for (const auto& c : q2.surface.circles) circles.push_back({find(p1 + c.minus), find(p1 + c.plus)});
  for (std::size_t c = 0; c < q2.surface.circles.size(); ++c) circle_labels.push_back(q2.circle_label(c));
  // circles from closed-up pieces come first; keep the inherited ones first instead
  const std::size_t fresh = circles.size() - q1.surface.circles.size() - q2.surface.circles.size();
  std::rotate(circles.begin(), circles.begin() + fresh, circles.end());
  std::rotate(circle_labels.begin(), circle_labels.begin() + fresh, circle_labels.end());

  std::vector<QuiltEnd> ends;
  std::uint32_t outgoing = 0;
  for (int side = 0; side < 2; ++side) {
    const auto& q = side == 0 ? q1 : q2;
    for (std::uint32_t x = 0; x < q.surface.ends.size(); ++x) {
      if ((side == 0 && x == o) || (side == 1 && x == e)) continue;
      if (side == 1 && x == q2.surface.outgoing) outgoing = std::uint32_t(ends.size());
      QuiltEnd out;
      for (SeamEnd h : q.surface.ends[x].rotation) out.rotation.push_back(rename.at(global(side == 1, h)));
      if (q.surface.ends[x].patch) out.patch = find(*q.surface.ends[x].patch + (side == 1 ? p1 : 0));
      ends.push_back(std::move(out));
    }
  }
  return assemble_diagram(std::move(ends), outgoing, std::move(seam_labels), dart_patch, std::move(circles),
                          std::move(circle_labels), labels);
}

QuiltDiagram shrink_strip(const QuiltDiagram& q, std::uint32_t patch, bool require_embedded) {
  return shrink_strip_traced(q, patch, require_embedded).diagram;
}

namespace {

std::vector<std::uint32_t> identity_origin(std::size_t n) {
  std::vector<std::uint32_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::uint32_t(k);
  return out;
}

}  // namespace

ShrinkResult shrink_strip_traced(const QuiltDiagram& q, std::uint32_t patch, bool require_embedded) {
  const auto a = analyze(q.surface);
  if (patch >= a.patches) raise(ErrorKind::NotAStrip, "patch does not exist", {{"patch", patch}});
  std::vector<std::size_t> faces;
  for (std::size_t f = 0; f < a.faces.size(); ++f)
    if (a.left(a.faces[f][0]) == patch) faces.push_back(f);
  std::vector<std::pair<std::uint32_t, SeamLabel>> sides;  // circle, label into the patch
  for (std::uint32_t c = 0; c < q.surface.circles.size(); ++c) {
    const auto& cs = q.surface.circles[c];
    if (cs.plus == patch) sides.emplace_back(c, q.circle_label(c));
    if (cs.minus == patch) sides.emplace_back(c, q.circle_label(c).transpose());
  }
  std::size_t isolated = 0;
  for (const auto& e : q.surface.ends)
    if (e.patch == patch) ++isolated;
  const json shape{{"patch", patch}, {"faces", faces.size()}, {"circle_sides", sides.size()}, {"isolated_ends", isolated},
                   {"face_length", faces.size() == 1 ? a.faces[faces[0]].size() : 0}};

  std::vector<PatchLabel> labels = q.patches;
  if (faces.size() == 1 && sides.empty() && isolated == 0 && a.faces[faces[0]].size() == 2 &&
      a.faces[faces[0]][0].seam != a.faces[faces[0]][1].seam) {
    const Dart d1 = a.faces[faces[0]][0], d2 = a.faces[faces[0]][1];
    const SeamLabel merged =
        compose_labels(q.dart_label(d1), q.dart_label(d2).transpose(), require_embedded,
                       {{"patch", patch}, {"seams", {d1.seam, d2.seam}}});
    const std::uint32_t lo = std::min(d1.seam, d2.seam), hi = std::max(d1.seam, d2.seam);
    auto renum = [&](std::uint32_t s) { return s < hi ? s : s - 1; };
    std::vector<SeamLabel> seam_labels;
    std::vector<std::uint32_t> dart_patch;
    for (std::uint32_t s = 0; s < q.surface.seams; ++s) {
      if (s == hi) continue;
      if (s == lo) {
        seam_labels.push_back(merged);
        dart_patch.push_back(a.left(d2.reverse()));
        dart_patch.push_back(a.left(d1.reverse()));
      } else {
        seam_labels.push_back(q.seams[s]);
        dart_patch.push_back(a.left(Dart{s, true}));
        dart_patch.push_back(a.left(Dart{s, false}));
      }
    }
    const SeamEnd t_tail{lo, false}, t_head{lo, true};
    std::vector<QuiltEnd> ends;
    std::vector<std::vector<std::uint32_t>> origin;
    for (std::uint32_t e = 0; e < q.surface.ends.size(); ++e) {
      const auto& rot = q.surface.ends[e].rotation;
      const std::size_t n = rot.size();
      QuiltEnd out{{}, q.surface.ends[e].patch};
      std::vector<std::size_t> kept;
      for (std::size_t k = 0; k < n; ++k) {
        const SeamEnd h = rot[k];
        if (h == arrive_he(d2) || h == leave_he(d2)) continue;
        kept.push_back(k);
        if (h == leave_he(d1)) out.rotation.push_back(t_tail);
        else if (h == arrive_he(d1)) out.rotation.push_back(t_head);
        else out.rotation.push_back({renum(h.seam), h.head});
      }
      // new corner m spans old corners kept[m] .. kept[m+1]-1; the strip's corner drops out
      const std::size_t m = kept.size();
      std::vector<std::size_t> corner(m);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t stop = i + 1 < m ? kept[i + 1] : kept[0] + n;
        std::size_t found = n;
        for (std::size_t k = kept[i]; k < stop; ++k)
          if (a.left(leave(rot[k % n])) != patch || stop - kept[i] == 1) found = k % n;
        corner[i] = found;
      }
      const bool out_end = e == q.surface.outgoing;
      auto node_of_corner = [&](std::size_t c, std::size_t len) { return out_end ? (len - c) % len : (c + 1) % len; };
      auto corner_of_node = [&](std::size_t k, std::size_t len) { return out_end ? (len - k) % len : (k + len - 1) % len; };
      std::vector<std::uint32_t> map(m);
      for (std::size_t k = 0; k < m; ++k) map[k] = std::uint32_t(node_of_corner(corner[corner_of_node(k, m)], n));
      origin.push_back(m == n ? identity_origin(std::max<std::size_t>(n, 1)) : map);
      ends.push_back(std::move(out));
    }
    std::vector<SeamLabel> circle_labels(q.seams.begin() + std::ptrdiff_t(q.surface.seams), q.seams.end());
    return {assemble_diagram(std::move(ends), q.surface.outgoing, std::move(seam_labels), dart_patch,
                             q.surface.circles, std::move(circle_labels), labels),
            std::move(origin)};
  }
  if (faces.empty() && isolated == 0 && sides.size() == 2 && sides[0].first != sides[1].first) {
    const auto [c1, in1] = sides[0];
    const auto [c2, in2] = sides[1];
    auto other = [&](std::uint32_t c) {
      const auto& cs = q.surface.circles[c];
      return cs.plus == patch ? cs.minus : cs.plus;
    };
    const SeamLabel merged =
        compose_labels(in1, in2.transpose(), require_embedded, {{"patch", patch}, {"circles", {c1, c2}}});
    std::vector<CircleSeam> circles;
    std::vector<SeamLabel> circle_labels;
    for (std::uint32_t c = 0; c < q.surface.circles.size(); ++c) {
      if (c == c2) continue;
      if (c == c1) {
        circles.push_back({other(c1), other(c2)});
        circle_labels.push_back(merged);
      } else {
        circles.push_back(q.surface.circles[c]);
        circle_labels.push_back(q.circle_label(c));
      }
    }
    std::vector<SeamLabel> seam_labels(q.seams.begin(), q.seams.begin() + std::ptrdiff_t(q.surface.seams));
    std::vector<std::uint32_t> dart_patch(a.dart_patch);
    std::vector<std::vector<std::uint32_t>> origin;
    for (const auto& e : q.surface.ends) origin.push_back(identity_origin(std::max<std::size_t>(e.rotation.size(), 1)));
    return {assemble_diagram(q.surface.ends, q.surface.outgoing, std::move(seam_labels), dart_patch, std::move(circles),
                             std::move(circle_labels), labels),
            std::move(origin)};
  }
  raise(ErrorKind::NotAStrip, "patch is neither a strip between two seams nor an annulus between two circles", shape);
}

namespace {

struct Constraint {
  std::uint32_t a, b;  // (x_a, x_b) ∈ rel
  FiniteRelation rel, tr;
};

}  // namespace

struct QuiltEvaluator::Impl {
  QuiltDiagram q;
  RunConfig cfg;
  std::size_t np = 0;
  std::vector<Constraint> cons;
  std::vector<std::vector<std::size_t>> touching;
  std::vector<EndReading> readings;
};

QuiltEvaluator::QuiltEvaluator(const QuiltDiagram& q, RunConfig cfg) {
  auto report = quilt_validate(q);
  if (!report.valid)
    raise(ErrorKind::InvalidDiagram, "diagram is not valid: " + report.problems[0]["check"].get<std::string>(),
          report.problems[0]);
  if (!q.relation_mode()) raise(ErrorKind::InvalidDiagram, "evaluation needs relation labels");
  auto impl = std::make_shared<Impl>();
  impl->q = q;
  impl->cfg = std::move(cfg);
  const auto a = analyze(q.surface);
  impl->np = a.patches;
  auto& cons = impl->cons;
  for (std::uint32_t s = 0; s < q.surface.seams; ++s) {
    const Dart d{s, true};
    cons.push_back({a.right(d), a.left(d), *q.seams[s].relation, q.seams[s].relation->transpose()});
  }
  for (std::uint32_t c = 0; c < q.surface.circles.size(); ++c)
    cons.push_back({q.surface.circles[c].minus, q.surface.circles[c].plus, *q.circle_label(c).relation,
                    q.circle_label(c).relation->transpose()});
  impl->touching.resize(impl->np);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    impl->touching[cons[i].a].push_back(i);
    if (cons[i].b != cons[i].a) impl->touching[cons[i].b].push_back(i);
  }
  for (std::uint32_t e = 0; e < q.surface.ends.size(); ++e) impl->readings.push_back(read_end(q, a, e));
  impl_ = std::move(impl);
}

std::vector<Tuple> QuiltEvaluator::operator()(const std::map<std::uint32_t, Tuple>& inputs) const {
  const auto& q = impl_->q;
  const auto& cfg = impl_->cfg;
  const auto& cons = impl_->cons;
  const auto& touching = impl_->touching;
  const std::size_t np = impl_->np;

  std::vector<std::optional<Index>> pinned(np);
  bool conflict = false;
  for (const auto& [e, t] : inputs) {
    check_end(q, e);
    if (e == q.surface.outgoing) raise(ErrorKind::InvalidEnd, "the outgoing end takes no input", {{"end", e}});
  }
  for (std::uint32_t e = 0; e < q.surface.ends.size(); ++e) {
    if (e == q.surface.outgoing) continue;
    auto it = inputs.find(e);
    if (it == inputs.end()) raise(ErrorKind::InputNotGenerator, "missing input at end " + std::to_string(e), {{"end", e}});
    const auto& r = impl_->readings[e];
    const Tuple& t = it->second;
    const std::size_t n = r.nodes.size();
    bool ok = t.size() == n;
    for (std::size_t k = 0; ok && k < n; ++k) ok = t[k] < q.patches[r.nodes[k]].set->size;
    for (std::size_t k = 0; ok && k < n; ++k) ok = r.labels[k].relation->contains(t[k], t[(k + 1) % n]);
    if (!ok)
      raise(ErrorKind::InputNotGenerator, "input at end " + std::to_string(e) + " is not a generator",
            {{"end", e}, {"input", t}});
    for (std::size_t k = 0; k < n; ++k) {
      auto& slot = pinned[r.nodes[k]];
      if (slot && *slot != t[k]) conflict = true;
      slot = t[k];
    }
  }
  if (conflict) return {};

  const auto& out_nodes = impl_->readings[q.surface.outgoing].nodes;
  std::vector<std::uint32_t> order;
  std::vector<bool> placed(np, false);
  for (auto p : out_nodes)
    if (!placed[p]) placed[p] = true, order.push_back(p);
  const std::size_t m = order.size();
  while (order.size() < np) {
    std::uint32_t best = kNone;
    long best_score = -1;
    for (std::uint32_t p = 0; p < np; ++p) {
      if (placed[p]) continue;
      long score = pinned[p] ? 1000000 : 0;
      for (auto i : touching[p])
        if (placed[cons[i].a] || placed[cons[i].b]) ++score;
      if (score > best_score) best = p, best_score = score;
    }
    placed[best] = true;
    order.push_back(best);
  }
  std::vector<std::size_t> position(np);
  for (std::size_t i = 0; i < np; ++i) position[order[i]] = i;
  std::atomic<std::uint64_t> nodes{0};
  auto candidates = [&](std::size_t depth, const std::vector<Index>& x) {
    const std::uint32_t p = order[depth];
    std::vector<Index> cand;
    if (pinned[p]) {
      cand = {*pinned[p]};
    } else {
      bool from_neighbor = false;
      for (auto i : touching[p]) {
        const auto& c = cons[i];
        if (c.a == p && c.b != p && position[c.b] < depth) {
          auto img = c.tr.image(x[c.b]);
          cand.assign(img.begin(), img.end());
          from_neighbor = true;
          break;
        }
        if (c.b == p && c.a != p && position[c.a] < depth) {
          auto img = c.rel.image(x[c.a]);
          cand.assign(img.begin(), img.end());
          from_neighbor = true;
          break;
        }
      }
      if (!from_neighbor) {
        cand.resize(q.patches[p].set->size);
        std::iota(cand.begin(), cand.end(), Index(0));
      }
    }
    std::vector<Index> out;
    for (Index v : cand) {
      bool ok = true;
      for (auto i : touching[p]) {
        const auto& c = cons[i];
        const Index xa = c.a == p ? v : x[c.a];
        const Index xb = c.b == p ? v : x[c.b];
        if ((c.a == p || position[c.a] < depth) && (c.b == p || position[c.b] < depth) && !c.rel.contains(xa, xb)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(v);
    }
    if ((nodes += out.size() + 1) > cfg.budget)
      raise(ErrorKind::ResourceLimit, "quilt evaluation exceeded the node budget", {{"budget", cfg.budget}});
    return out;
  };
  std::function<bool(std::size_t, std::vector<Index>&)> extend = [&](std::size_t depth, std::vector<Index>& x) {
    if (depth == np) return true;
    for (Index v : candidates(depth, x)) {
      x[order[depth]] = v;
      if (extend(depth + 1, x)) return true;
    }
    return false;
  };
  std::function<void(std::size_t, std::vector<Index>&, std::vector<Tuple>&)> collect =
      [&](std::size_t depth, std::vector<Index>& x, std::vector<Tuple>& out) {
        if (depth == m) {
          std::vector<Index> y = x;
          if (extend(depth, y)) {
            Tuple t;
            for (auto p : out_nodes) t.push_back(x[p]);
            out.push_back(std::move(t));
          }
          return;
        }
        for (Index v : candidates(depth, x)) {
          x[order[depth]] = v;
          collect(depth + 1, x, out);
        }
      };
  std::vector<Index> x0(np, 0);
  const auto first = candidates(0, x0);
  auto parts = parallel_map(first.size(), cfg.workers, [&](std::size_t i) {
    std::vector<Index> x(np, 0);
    x[order[0]] = first[i];
    std::vector<Tuple> out;
    collect(1, x, out);
    return out;
  });
  std::vector<Tuple> result;
  for (auto& part : parts) result.insert(result.end(), part.begin(), part.end());
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<Tuple> quilt_evaluate(const QuiltDiagram& q, const std::map<std::uint32_t, Tuple>& inputs,
                                  const RunConfig& cfg) {
  return QuiltEvaluator(q, cfg)(inputs);
}

namespace {

struct IsoState {
  std::vector<std::int64_t> he;  // half-edge of a → half-edge of b
  std::vector<bool> he_used;
  std::vector<std::int64_t> ends, patches, circles;
  std::vector<bool> ends_used, patches_used, circles_used;
  std::vector<bool> flipped;  // per circle of a
};

class IsoSearch {
 public:
  IsoSearch(const QuiltDiagram& a, const QuiltDiagram& b)
      : a_(a), b_(b), sa_(analyze(a.surface)), sb_(analyze(b.surface)) {
    structural_problems(a.surface, &wa_);
    structural_problems(b.surface, &wb_);
  }

  std::optional<QuiltIsomorphism> run() {
    const auto& s = a_.surface;
    const auto& t = b_.surface;
    if (s.ends.size() != t.ends.size() || s.seams != t.seams || s.circles.size() != t.circles.size() ||
        sa_.patches != sb_.patches)
      return std::nullopt;
    IsoState st;
    st.he.assign(2 * s.seams, -1);
    st.he_used.assign(2 * t.seams, false);
    st.ends.assign(s.ends.size(), -1);
    st.ends_used.assign(t.ends.size(), false);
    st.patches.assign(sa_.patches, -1);
    st.patches_used.assign(sb_.patches, false);
    st.circles.assign(s.circles.size(), -1);
    st.circles_used.assign(t.circles.size(), false);
    st.flipped.assign(s.circles.size(), false);
    if (!components(st, 0)) return std::nullopt;
    QuiltIsomorphism iso;
    for (auto x : result_.ends) iso.ends.push_back(std::uint32_t(x));
    for (auto x : result_.patches) iso.patches.push_back(std::uint32_t(x));
    for (std::uint32_t sm = 0; sm < s.seams; ++sm) {
      const auto h = std::size_t(result_.he[he_index({sm, false})]);
      iso.seams.push_back(Dart{std::uint32_t(h / 2), h % 2 == 0});
    }
    for (std::size_t c = 0; c < s.circles.size(); ++c)
      iso.circles.emplace_back(std::uint32_t(result_.circles[c]), result_.flipped[c]);
    return iso;
  }

 private:
  static bool bind(std::vector<std::int64_t>& map, std::vector<bool>& used, std::size_t x, std::size_t y) {
    if (map[x] >= 0) return map[x] == std::int64_t(y);
    if (used[y]) return false;
    map[x] = std::int64_t(y);
    used[y] = true;
    return true;
  }

  bool bind_end(IsoState& st, std::uint32_t x, std::uint32_t y) const {
    if ((x == a_.surface.outgoing) != (y == b_.surface.outgoing)) return false;
    if (a_.surface.ends[x].rotation.size() != b_.surface.ends[y].rotation.size()) return false;
    return bind(st.ends, st.ends_used, x, y);
  }

  bool bind_patch(IsoState& st, std::uint32_t x, std::uint32_t y) const {
    if (!(a_.patches[x] == b_.patches[y])) return false;
    return bind(st.patches, st.patches_used, x, y);
  }

  static SeamEnd he_of(std::size_t i) { return {std::uint32_t(i / 2), i % 2 == 1}; }

  bool propagate(IsoState& st, std::size_t x0, std::size_t y0) const {
    std::vector<std::pair<std::size_t, std::size_t>> queue{{x0, y0}};
    while (!queue.empty()) {
      auto [x, y] = queue.back();
      queue.pop_back();
      if (st.he[x] >= 0) {
        if (st.he[x] != std::int64_t(y)) return false;
        continue;
      }
      if (st.he_used[y]) return false;
      st.he[x] = std::int64_t(y);
      st.he_used[y] = true;
      const SeamEnd hx = he_of(x), hy = he_of(y);
      const Located lx = wa_[x], ly = wb_[y];
      if (!bind_end(st, lx.end, ly.end)) return false;
      const auto& rx = a_.surface.ends[lx.end].rotation;
      const auto& ry = b_.surface.ends[ly.end].rotation;
      if (!bind_patch(st, sa_.left(leave(hx)), sb_.left(leave(hy)))) return false;
      const SeamLabel la = a_.dart_label(leave(hx)), lb = b_.dart_label(leave(hy));
      if (!(la == lb)) return false;
      queue.emplace_back(he_index(rx[(lx.pos + 1) % rx.size()]), he_index(ry[(ly.pos + 1) % ry.size()]));
      queue.emplace_back(x ^ 1, y ^ 1);
    }
    return true;
  }

  bool components(IsoState& st, std::size_t from) {
    std::size_t x = from;
    while (x < st.he.size() && st.he[x] >= 0) ++x;
    if (x == st.he.size()) return circles(st, 0);
    for (std::size_t y = 0; y < st.he_used.size(); ++y) {
      if (st.he_used[y]) continue;
      IsoState next = st;
      if (propagate(next, x, y) && components(next, x + 1)) return true;
    }
    return false;
  }

  bool circles(IsoState& st, std::size_t c) {
    const auto& cs = a_.surface.circles;
    if (c == cs.size()) return isolated(st, 0);
    const auto& ct = b_.surface.circles;
    for (std::size_t d = 0; d < ct.size(); ++d) {
      if (st.circles_used[d]) continue;
      for (bool flip : {false, true}) {
        const SeamLabel lb = flip ? b_.circle_label(d).transpose() : b_.circle_label(d);
        if (!(a_.circle_label(c) == lb)) continue;
        IsoState next = st;
        next.circles[c] = std::int64_t(d);
        next.circles_used[d] = true;
        next.flipped[c] = flip;
        const auto m = flip ? ct[d].plus : ct[d].minus, p = flip ? ct[d].minus : ct[d].plus;
        if (bind_patch(next, cs[c].minus, m) && bind_patch(next, cs[c].plus, p) && circles(next, c + 1)) return true;
      }
    }
    return false;
  }

  bool isolated(IsoState& st, std::uint32_t e) {
    const auto& es = a_.surface.ends;
    while (e < es.size() && !es[e].patch) ++e;
    if (e == es.size()) {
      result_ = st;
      return true;
    }
    const auto& et = b_.surface.ends;
    for (std::uint32_t f = 0; f < et.size(); ++f) {
      if (st.ends_used[f] || !et[f].patch) continue;
      IsoState next = st;
      if (bind_end(next, e, f) && bind_patch(next, *es[e].patch, *et[f].patch) && isolated(next, e + 1)) return true;
    }
    return false;
  }

  const QuiltDiagram& a_;
  const QuiltDiagram& b_;
  SurfaceAnalysis sa_, sb_;
  std::vector<Located> wa_, wb_;
  IsoState result_;
};

void require_composable(const SeamLabel& a, const SeamLabel& b, std::size_t position) {
  if (!composable(a, b))
    raise(ErrorKind::LabelMismatch, "labels " + a.name + " and " + b.name + " are not composable",
          {{"position", position}, {"target", a.target}, {"source", b.source}});
}

void require_parallel(const SeamLabel& a, const SeamLabel& b) {
  if (!same_object(a.source, label_source_set(a), b.source, label_source_set(b)) ||
      !same_object(a.target, label_target_set(a), b.target, label_target_set(b)))
    raise(ErrorKind::LabelMismatch, "labels " + a.name + " and " + b.name + " are not parallel",
          {{"first", a.name}, {"second", b.name}});
}

QuiltEnd rot(std::initializer_list<SeamEnd> l) { return QuiltEnd{l, std::nullopt}; }
QuiltEnd isolated_in(std::uint32_t p) { return QuiltEnd{{}, p}; }
SeamEnd T(std::uint32_t s) { return {s, false}; }
SeamEnd H(std::uint32_t s) { return {s, true}; }

}  // namespace

std::optional<QuiltIsomorphism> quilt_isomorphism(const QuiltDiagram& a, const QuiltDiagram& b) {
  return IsoSearch(a, b).run();
}

QuiltDiagram sphere_diagram(const PatchLabel& p) {
  return assemble_diagram({isolated_in(0)}, 0, {}, {}, {}, {}, {p});
}

QuiltDiagram identity_diagram(const PatchLabel& p) {
  return assemble_diagram({isolated_in(0), isolated_in(0)}, 1, {}, {}, {}, {}, {p});
}

QuiltDiagram identity_diagram(const std::vector<SeamLabel>& labels) {
  const std::size_t n = labels.size();
  if (n == 0) raise(ErrorKind::LabelMismatch, "identity diagram needs at least one seam label");
  for (std::size_t k = 0; k < n; ++k) require_composable(labels[k], labels[(k + 1) % n], k);
  QuiltEnd in, out;
  for (std::uint32_t k = 0; k < n; ++k) in.rotation.push_back(T(k));
  out.rotation.push_back(H(0));
  for (std::uint32_t k = std::uint32_t(n) - 1; k >= 1; --k) out.rotation.push_back(H(k));
  std::vector<std::uint32_t> dart_patch;
  std::vector<PatchLabel> patches;
  for (std::uint32_t k = 0; k < n; ++k) {
    dart_patch.push_back(std::uint32_t((k + 1) % n));
    dart_patch.push_back(k);
    patches.push_back(source_patch(labels[k]));
  }
  return assemble_diagram({in, out}, 1, labels, dart_patch, {}, {}, patches);
}

QuiltDiagram cap_diagram(const SeamLabel& y) {
  return assemble_diagram({rot({H(0), T(0)})}, 0, {y}, {1, 0}, {}, {}, {source_patch(y), target_patch(y)});
}

QuiltDiagram cup_diagram(const SeamLabel& y) {
  return assemble_diagram({rot({T(0), T(2)}), rot({H(0), T(1)}), rot({H(1), H(2)})}, 2, {y, y, y.transpose()},
                          {1, 0, 1, 0, 0, 1}, {}, {}, {source_patch(y), target_patch(y)});
}

QuiltDiagram vertical_diagram(const SeamLabel& f, const SeamLabel& g, const SeamLabel& h) {
  require_parallel(f, g);
  require_parallel(f, h);
  return assemble_diagram({rot({H(0), T(1)}), rot({H(1), T(2)}), rot({T(0), H(2)})}, 2, {f, g, h},
                          {1, 0, 1, 0, 1, 0}, {}, {}, {source_patch(f), target_patch(f)});
}

QuiltDiagram horizontal_diagram(const SeamLabel& f, const SeamLabel& g, const SeamLabel& f2, const SeamLabel& g2) {
  require_parallel(f, g);
  require_parallel(f2, g2);
  require_composable(f2, f, 0);
  return assemble_diagram({rot({H(0), T(1)}), rot({H(2), T(3)}), rot({T(0), H(1), H(3), T(2)})}, 2, {f, g, f2, g2},
                          {0, 1, 0, 1, 1, 2, 1, 2}, {}, {}, {target_patch(f), source_patch(f), source_patch(f2)});
}

QuiltDiagram concentric_diagram(const SeamLabel& y1, const SeamLabel& y2) {
  require_composable(y1, y2, 0);
  return assemble_diagram({isolated_in(0), isolated_in(2)}, 1, {}, {}, {{0, 1}, {1, 2}}, {y1, y2},
                          {source_patch(y1), target_patch(y1), target_patch(y2)});
}

QuiltDiagram string_diagram(const std::string& kind, const std::vector<SeamLabel>& labels) {
  auto need = [&](std::size_t n) {
    if (labels.size() != n)
      raise(ErrorKind::LabelMismatch, kind + " diagram takes " + std::to_string(n) + " labels",
            {{"kind", kind}, {"given", labels.size()}});
  };
  if (kind == "identity") return identity_diagram(labels);
  if (kind == "cap") return need(1), cap_diagram(labels[0]);
  if (kind == "cup") return need(1), cup_diagram(labels[0]);
  if (kind == "vertical") return need(3), vertical_diagram(labels[0], labels[1], labels[2]);
  if (kind == "horizontal") return need(4), horizontal_diagram(labels[0], labels[1], labels[2], labels[3]);
  if (kind == "concentric") return need(2), concentric_diagram(labels[0], labels[1]);
  if (kind == "sphere") return need(1), sphere_diagram(source_patch(labels[0]));
  raise(ErrorKind::LabelMismatch, "unknown string diagram kind " + kind, {{"kind", kind}});
}

std::string export_dot(const QuiltDiagram& q) {
  const auto a = analyze(q.surface);
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::string dot = "digraph quilt {\n";
  for (std::uint32_t p = 0; p < a.patches; ++p) {
    dot += "  subgraph cluster_p" + std::to_string(p) + " {\n";
    dot += "    label=" + quote("P" + std::to_string(p) + ": " + q.patches[p].name) + ";\n";
    dot += "    p" + std::to_string(p) + " [shape=point];\n  }\n";
  }
  for (std::uint32_t e = 0; e < q.surface.ends.size(); ++e) {
    const bool out = e == q.surface.outgoing;
    dot += "  e" + std::to_string(e) + " [label=" + quote("e" + std::to_string(e) + (out ? " out" : " in")) +
           (out ? ", shape=doublecircle" : ", shape=circle") + "];\n";
    if (q.surface.ends[e].patch)
      dot += "  e" + std::to_string(e) + " -> p" + std::to_string(*q.surface.ends[e].patch) + " [style=dotted];\n";
  }
  for (std::uint32_t s = 0; s < q.surface.seams; ++s) {
    const Dart d{s, true};
    const auto tail = a.dart_end[d.index()], head = a.dart_end[d.reverse().index()];
    dot += "  e" + std::to_string(tail) + " -> e" + std::to_string(head) + " [label=" +
           quote("s" + std::to_string(s) + ": " + q.seams[s].name) + ", taillabel=" + quote("P" + std::to_string(a.right(d))) +
           ", headlabel=" + quote("P" + std::to_string(a.left(d))) + "];\n";
  }
  for (std::uint32_t c = 0; c < q.surface.circles.size(); ++c)
    dot += "  p" + std::to_string(q.surface.circles[c].minus) + " -> p" + std::to_string(q.surface.circles[c].plus) +
           " [style=dashed, label=" + quote("c" + std::to_string(c) + ": " + q.circle_label(c).name) + "];\n";
  dot += "}\n";
  return dot;
}

}  // namespace floerkit
