#include "floerkit/io.hpp"

#include <fstream>

#include "floerkit/error.hpp"

namespace floerkit {

using nlohmann::json;

namespace {

template <class F>
auto parsing(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    raise(ErrorKind::ParseError, std::string("malformed ") + what + ": " + e.what(), {{"input", what}});
  }
}

void require(bool ok, const std::string& message, json witness = nullptr) {
  if (!ok) raise(ErrorKind::ParseError, message, std::move(witness));
}

template <class T>
json table_to_json(const std::vector<T>& flat, std::size_t n) {
  json out = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(flat[i * n + k]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::int32_t> table_from_json(const json& j, std::size_t n, const char* what) {
  std::vector<std::int32_t> out;
  if (j.is_null()) return out;
  require(j.size() == n, std::string(what) + " must be square of side " + std::to_string(n),
          {{"table", what}, {"rows", j.size()}});
  for (const auto& row : j) {
    require(row.size() == n, std::string(what) + " has a short row", {{"table", what}});
    for (const auto& v : row) out.push_back(v.get<std::int32_t>());
  }
  return out;
}

template <class T>
std::vector<T> list_or_empty(const json& j, const char* key) {
  return j.contains(key) ? j.at(key).get<std::vector<T>>() : std::vector<T>{};
}

BordObject object_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "empty") return BordObject::empty();
  if (j.is_number_integer()) return BordObject::surface(j.get<int>());
  return BordObject::surface(j.at("genus").get<int>());
}

json object_to_json(const BordObject& o) {
  if (o.is_empty) return "empty";
  return {{"genus", o.genus}};
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open " + path, {{"path", path}});
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(ErrorKind::ParseError, path + ": " + e.what(), {{"path", path}});
  }
}

FiniteGroup group_from_json(const json& j) {
  return parsing("group", [&] {
    if (j.is_string()) return builtin_group(j.get<std::string>());
    if (j.contains("builtin")) return builtin_group(j.at("builtin").get<std::string>());
    auto table = j.at("mul").get<std::vector<std::vector<int>>>();
    if (j.contains("order"))
      require(j.at("order").get<std::size_t>() == table.size(), "group order disagrees with the table",
              {{"order", j.at("order")}, {"rows", table.size()}});
    return FiniteGroup::from_table(table, j.value("name", std::string{}));
  });
}

json group_to_json(const FiniteGroup& g) {
  return {{"name", g.name()}, {"order", g.order()}, {"mul", g.table()}};
}

Word word_from_json(const json& j, int genus) {
  return parsing("word", [&] {
    std::vector<std::pair<int, int>> ge;
    for (const auto& p : j) {
      require(p.is_array() && p.size() == 2, "word letters are [generator_index, exponent] pairs", {{"letter", p}});
      ge.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    return make_word(genus, ge);
  });
}

json word_to_json(const Word& w) {
  json out = json::array();
  for (auto [g, e] : word_pairs(w)) {
    if (!out.empty() && out.back()[0] == g && (out.back()[1].get<int>() > 0) == (e > 0))
      out.back()[1] = out.back()[1].get<int>() + e;
    else
      out.push_back({g, e});
  }
  return out;
}

SurfaceAutomorphism automorphism_from_json(const json& j) {
  return parsing("automorphism", [&] {
    const int genus = j.at("genus").get<int>();
    const std::string name = j.value("name", std::string{});
    if (!j.contains("images")) return autos::by_name(genus, name);
    std::vector<Word> images, inverses;
    for (const auto& w : j.at("images")) images.push_back(word_from_json(w, genus));
    for (const auto& w : j.at("inverse_images")) inverses.push_back(word_from_json(w, genus));
    return SurfaceAutomorphism(genus, std::move(images), std::move(inverses), name);
  });
}

json automorphism_to_json(const SurfaceAutomorphism& a) {
  json images = json::array(), inverses = json::array();
  for (const auto& w : a.images()) images.push_back(word_to_json(w));
  for (const auto& w : a.inverse_images()) inverses.push_back(word_to_json(w));
  json out{{"genus", a.genus()}, {"images", images}, {"inverse_images", inverses}};
  if (!a.name().empty()) out["name"] = a.name();
  return out;
}

SimpleCobordism step_from_json(const json& j) {
  return parsing("step", [&] {
    const StepKind kind = step_kind_from_string(j.at("kind").get<std::string>());
    if (kind == StepKind::Cap3) return SimpleCobordism::cap3();
    if (kind == StepKind::Cap0) return SimpleCobordism::cap0();
    const json& a = j.at("auto");
    SurfaceAutomorphism phi = a.is_string() ? autos::by_name(j.at("genus").get<int>(), a.get<std::string>())
                                            : automorphism_from_json(a);
    if (j.contains("genus"))
      require(j.at("genus").get<int>() == phi.genus(), "step genus disagrees with its automorphism",
              {{"genus", j.at("genus")}, {"auto_genus", phi.genus()}});
    switch (kind) {
      case StepKind::Cyl: return SimpleCobordism::cyl(std::move(phi));
      case StepKind::Attach2: return SimpleCobordism::attach2(std::move(phi));
      default: return SimpleCobordism::attach1(std::move(phi));
    }
  });
}

json step_to_json(const SimpleCobordism& s) {
  json out{{"kind", to_string(s.kind)}, {"genus", s.genus()}};
  if (s.automorphism) out["auto"] = automorphism_to_json(*s.automorphism);
  return out;
}

CobordismChain chain_from_json(const json& j) {
  return parsing("chain", [&] {
    const json& steps = j.is_array() ? j : j.at("steps");
    if (steps.empty()) {
      require(j.is_object() && j.contains("object"), "an empty chain needs an \"object\"");
      return CobordismChain::identity(object_from_json(j.at("object")));
    }
    std::vector<SimpleCobordism> out;
    for (const auto& s : steps) out.push_back(step_from_json(s));
    return CobordismChain::from_steps(std::move(out));
  });
}

json chain_to_json(const CobordismChain& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(step_to_json(s));
  if (c.steps.empty()) return {{"object", object_to_json(c.source)}, {"steps", steps}};
  return steps;
}

json set_to_json(const SetRef& s) { return {{"name", s->name}, {"size", s->size}}; }

SetRef set_from_json(const json& j) {
  return parsing("set", [&] { return make_set(j.at("name").get<std::string>(), j.at("size").get<std::size_t>()); });
}

FiniteRelation relation_from_json(const json& j) {
  return parsing("relation", [&] {
    auto pairs = j.at("pairs").get<std::vector<IndexPair>>();
    return FiniteRelation(set_from_json(j.at("source")), set_from_json(j.at("target")), std::move(pairs));
  });
}

json relation_to_json(const FiniteRelation& r) {
  return {{"source", set_to_json(r.source())}, {"target", set_to_json(r.target())}, {"pairs", r.pairs()}};
}

json variety_to_json(const RepVariety& v) {
  json points = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto p = v.point(i);
    points.push_back(std::vector<Element>(p.begin(), p.end()));
  }
  return {{"group", v.group().name()}, {"object", object_to_json(v.object())}, {"set", set_to_json(v.set())},
          {"size", v.size()}, {"points", points}};
}

json generators_to_json(const GeneratorSet& g) {
  json tuples = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto t = g.tuple(i);
    tuples.push_back(std::vector<Index>(t.begin(), t.end()));
  }
  json nodes = json::array();
  for (const auto& r : g.chain.rels) nodes.push_back(set_to_json(r.source()));
  return {{"nodes", nodes}, {"count", g.size()}, {"tuples", tuples}};
}

Presentation presentation_from_json(const json& j) {
  return parsing("presentation", [&] {
    Presentation p{j.value("name", std::string{}), j.at("generators").get<int>(),
                   list_or_empty<std::vector<int>>(j, "relators")};
    p.validate();
    return p;
  });
}

json presentation_to_json(const Presentation& p) {
  return {{"name", p.name}, {"generators", p.generators}, {"relators", p.relators}};
}

FinCategory category_from_json(const json& j) {
  return parsing("category", [&] {
    std::vector<std::string> objects;
    if (j.at("objects").is_number_integer())
      for (int i = 0; i < j.at("objects").get<int>(); ++i) objects.push_back("x" + std::to_string(i));
    else
      objects = j.at("objects").get<std::vector<std::string>>();
    auto source = j.at("source").get<std::vector<ObjId>>();
    auto target = j.at("target").get<std::vector<ObjId>>();
    auto identities = j.at("identities").get<std::vector<MorId>>();
    auto table = table_from_json(j.at("composition"), source.size(), "composition");
    const std::size_t n = objects.size();
    return FinCategory(n, std::move(source), std::move(target), std::move(identities), std::move(table),
                       std::move(objects), list_or_empty<std::string>(j, "morphisms"));
  });
}

json category_to_json(const FinCategory& c) {
  json objects = json::array(), morphisms = json::array(), source = json::array(), target = json::array(),
       identities = json::array();
  for (ObjId x = 0; x < c.object_count(); ++x) {
    objects.push_back(c.object_name(x));
    identities.push_back(c.identity(x));
  }
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    morphisms.push_back(c.morphism_name(f));
    source.push_back(c.source(f));
    target.push_back(c.target(f));
  }
  return {{"objects", objects},       {"morphisms", morphisms}, {"source", source}, {"target", target},
          {"identities", identities}, {"composition", table_to_json(c.table(), c.morphism_count())}};
}

BicategoryData bicategory_from_json(const json& j) {
  return parsing("bicategory", [&] {
    BicategoryData d;
    if (j.at("objects").is_number_integer()) {
      d.objects = j.at("objects").get<std::size_t>();
    } else {
      d.object_names = j.at("objects").get<std::vector<std::string>>();
      d.objects = d.object_names.size();
    }
    d.source1 = j.at("source1").get<std::vector<ObjId>>();
    d.target1 = j.at("target1").get<std::vector<ObjId>>();
    d.source2 = j.at("source2").get<std::vector<Mor1>>();
    d.target2 = j.at("target2").get<std::vector<Mor1>>();
    d.identity2 = j.at("identity2").get<std::vector<Mor2>>();
    d.units = j.at("units").get<std::vector<Mor1>>();
    d.vertical = table_from_json(j.at("vertical"), d.source2.size(), "vertical");
    d.horizontal1 = table_from_json(j.at("horizontal1"), d.source1.size(), "horizontal1");
    d.horizontal2 = table_from_json(j.value("horizontal2", json()), d.source2.size(), "horizontal2");
    d.left_unitors = list_or_empty<Mor2>(j, "left_unitors");
    d.right_unitors = list_or_empty<Mor2>(j, "right_unitors");
    d.names1 = list_or_empty<std::string>(j, "names1");
    d.names2 = list_or_empty<std::string>(j, "names2");
    return d;
  });
}

json bicategory_to_json(const BicategoryData& d) {
  json out{{"source1", d.source1},
           {"target1", d.target1},
           {"source2", d.source2},
           {"target2", d.target2},
           {"identity2", d.identity2},
           {"units", d.units},
           {"vertical", table_to_json(d.vertical, d.source2.size())},
           {"horizontal1", table_to_json(d.horizontal1, d.source1.size())}};
  if (d.object_names.empty())
    out["objects"] = d.objects;
  else
    out["objects"] = d.object_names;
  if (!d.horizontal2.empty()) out["horizontal2"] = table_to_json(d.horizontal2, d.source2.size());
  if (!d.left_unitors.empty()) out["left_unitors"] = d.left_unitors;
  if (!d.right_unitors.empty()) out["right_unitors"] = d.right_unitors;
  if (!d.names1.empty()) out["names1"] = d.names1;
  if (!d.names2.empty()) out["names2"] = d.names2;
  return out;
}

json functor_to_json(const FinFunctor& f) { return {{"objects", f.objects}, {"morphisms", f.morphisms}}; }

namespace {

SeamEnd seam_end_from_json(const json& j) {
  const auto s = j.get<std::string>();
  require(s.size() >= 2 && (s[0] == '+' || s[0] == '-'), "seam-ends are written +k or -k", {{"seam_end", s}});
  std::size_t used = 0;
  unsigned long k = 0;
  try {
    k = std::stoul(s.substr(1), &used);
  } catch (...) {
    used = 0;
  }
  require(used == s.size() - 1, "seam-ends are written +k or -k", {{"seam_end", s}});
  return {std::uint32_t(k), s[0] == '+'};
}

std::string seam_end_to_string(SeamEnd h) { return (h.head ? "+" : "-") + std::to_string(h.seam); }

struct LabelContext {
  std::unique_ptr<RepContext> rep;

  PatchLabel patch(const json& j) {
    if (j.is_string()) return {j.get<std::string>(), nullptr};
    if (j.contains("generic")) return {j.at("generic").get<std::string>(), nullptr};
    if (j.contains("set")) return PatchLabel::of(set_from_json(j.at("set")));
    require(rep != nullptr, "patch labels by genus need a \"group\"");
    return PatchLabel::of(rep->variety(object_from_json(j.contains("genus") ? j.at("genus") : j.at("object")))->set());
  }

  SeamLabel seam(const json& j) {
    if (j.contains("generic")) {
      const json& g = j.at("generic");
      return SeamLabel::generic(g.at("name").get<std::string>(), g.at("source").get<std::string>(),
                                g.at("target").get<std::string>());
    }
    const std::string name = j.value("name", std::string("Y"));
    if (j.contains("relation")) return SeamLabel::of(relation_from_json(j.at("relation")), name);
    require(rep != nullptr, "seam labels by step need a \"group\"");
    const auto s = step_from_json(j.at("step"));
    return SeamLabel::of(rep->simple(s), j.value("name", s.describe()));
  }
};

json patch_label_to_json(const PatchLabel& p) {
  if (!p.set) return {{"generic", p.name}};
  return {{"set", set_to_json(p.set)}};
}

json seam_label_to_json(const SeamLabel& l) {
  if (!l.relation) return {{"generic", {{"name", l.name}, {"source", l.source}, {"target", l.target}}}};
  return {{"name", l.name}, {"relation", relation_to_json(*l.relation)}};
}

}  // namespace

QuiltDiagram quilt_from_json(const json& j) {
  return parsing("quilt diagram", [&] {
    LabelContext labels;
    if (j.contains("group")) labels.rep = std::make_unique<RepContext>(group_from_json(j.at("group")));

    std::vector<QuiltEnd> ends;
    for (const auto& e : j.at("ends")) {
      QuiltEnd end;
      const json& rot = e.is_array() ? e : e.at("rotation");
      for (const auto& h : rot) end.rotation.push_back(seam_end_from_json(h));
      if (e.is_object() && e.contains("patch")) end.patch = e.at("patch").get<std::uint32_t>();
      ends.push_back(std::move(end));
    }
    const json& patch_labels = j.at("patch_labels");
    const json& seam_labels = j.at("seam_labels");
    std::vector<PatchLabel> patches;
    for (std::size_t p = 0; p < patch_labels.size(); ++p) {
      const auto key = std::to_string(p);
      require(patch_labels.contains(key), "patch labels must be keyed 0..n-1", {{"missing", key}});
      patches.push_back(labels.patch(patch_labels.at(key)));
    }
    auto patch_id = [&](const json& v) {
      const auto p = v.get<std::uint32_t>();
      require(p < patches.size(), "unlabelled patch", {{"patch", p}});
      return p;
    };
    for (auto& e : ends)
      if (e.patch) e.patch = patch_id(*e.patch);

    const json seams = j.value("seams", json::array());
    std::vector<SeamLabel> seam_list;
    std::vector<std::uint32_t> dart_patch;
    for (std::size_t s = 0; s < seams.size(); ++s) {
      const auto key = std::to_string(s);
      require(seam_labels.contains(key), "every interval seam needs a label", {{"seam", s}});
      seam_list.push_back(labels.seam(seam_labels.at(key)));
      dart_patch.push_back(patch_id(seams[s].at("left")));
      dart_patch.push_back(patch_id(seams[s].at("right")));
    }
    std::vector<CircleSeam> circles;
    std::vector<SeamLabel> circle_labels;
    const json circle_json = j.value("circle_seams", json::array());
    for (std::size_t c = 0; c < circle_json.size(); ++c) {
      const auto key = "c" + std::to_string(c);
      require(seam_labels.contains(key), "every circle seam needs a label", {{"circle", c}});
      circles.push_back({patch_id(circle_json[c].at("minus")), patch_id(circle_json[c].at("plus"))});
      circle_labels.push_back(labels.seam(seam_labels.at(key)));
    }
    return assemble_diagram(std::move(ends), j.at("outgoing").get<std::uint32_t>(), std::move(seam_list), dart_patch,
                            std::move(circles), std::move(circle_labels), patches);
  });
}

json quilt_to_json(const QuiltDiagram& q) {
  const auto a = analyze(q.surface);
  json ends = json::array();
  for (const auto& e : q.surface.ends) {
    json rot = json::array();
    for (auto h : e.rotation) rot.push_back(seam_end_to_string(h));
    if (e.patch)
      ends.push_back({{"rotation", rot}, {"patch", *e.patch}});
    else
      ends.push_back(rot);
  }
  json seams = json::array();
  for (std::uint32_t s = 0; s < q.surface.seams; ++s) {
    const Dart d{s, true};
    seams.push_back({{"left", a.left(d)}, {"right", a.right(d)}});
  }
  json circles = json::array();
  for (const auto& c : q.surface.circles) circles.push_back({{"minus", c.minus}, {"plus", c.plus}});
  json patch_labels = json::object(), seam_labels = json::object();
  for (std::size_t p = 0; p < q.patches.size(); ++p) patch_labels[std::to_string(p)] = patch_label_to_json(q.patches[p]);
  for (std::size_t s = 0; s < q.surface.seams; ++s) seam_labels[std::to_string(s)] = seam_label_to_json(q.seams[s]);
  for (std::size_t c = 0; c < q.surface.circles.size(); ++c)
    seam_labels["c" + std::to_string(c)] = seam_label_to_json(q.circle_label(c));
  return {{"ends", ends},       {"outgoing", q.surface.outgoing}, {"seams", seams},
          {"circle_seams", circles}, {"patch_labels", patch_labels}, {"seam_labels", seam_labels}};
}

}  // namespace floerkit
