#include "cli.hpp"

#include <filesystem>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "floerkit/error.hpp"
#include "floerkit/io.hpp"

namespace floerkit::cli {

using nlohmann::json;

namespace {

FiniteGroup load_group(const std::string& arg) {
  if (std::filesystem::exists(arg)) return group_from_json(read_json_file(arg));
  return builtin_group(arg);
}

QuiltDiagram load_quilt(const std::string& path) { return quilt_from_json(read_json_file(path)); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

struct Options {
  RunConfig cfg = RunConfig::from_env();
  unsigned threads = 0;

  std::string group, chain, to, presentation, diagram, into, inputs, step, kind, autoname, category, bicategory;
  std::vector<std::string> files;
  int genus = -1;
  bool empty = false;
  bool cyclic = false;
  bool unchecked = false;
  std::uint32_t end = 0;
  std::uint32_t patch = 0;
  std::uint32_t base = 0;
};

using Handler = std::function<int(Options&, std::ostream&)>;

int group_check(Options& o, std::ostream& out) {
  const auto g = load_group(o.group);
  json classes = json::array();
  for (const auto& c : g.classes()) classes.push_back(c.size());
  emit(out, {{"valid", true}, {"name", g.name()}, {"order", g.order()}, {"abelian", g.is_abelian()},
             {"class_sizes", classes}});
  return 0;
}

BordObject object_option(const Options& o) {
  if (o.empty) return BordObject::empty();
  if (o.genus < 0) raise(ErrorKind::ParseError, "--genus or --empty is required");
  return BordObject::surface(o.genus);
}

int repvar(Options& o, std::ostream& out) {
  auto g = std::make_shared<const FiniteGroup>(load_group(o.group));
  emit(out, variety_to_json(repvariety(g, object_option(o), o.cfg)));
  return 0;
}

SimpleCobordism step_option(const Options& o) {
  if (!o.step.empty()) return step_from_json(read_json_file(o.step));
  if (o.kind.empty()) raise(ErrorKind::ParseError, "--step or --kind is required");
  json j{{"kind", o.kind}, {"genus", o.genus}, {"auto", o.autoname.empty() ? "id" : o.autoname}};
  return step_from_json(j);
}

int lagrangian(Options& o, std::ostream& out) {
  RepContext ctx(load_group(o.group), o.cfg);
  const auto s = step_option(o);
  emit(out, {{"step", s.describe()}, {"relation", relation_to_json(ctx.simple(s))}});
  return 0;
}

std::pair<FiniteRelation, FiniteRelation> two_relations(const Options& o) {
  if (o.files.size() != 2) raise(ErrorKind::ParseError, "expected two relation files", {{"given", o.files.size()}});
  return {relation_from_json(read_json_file(o.files[0])), relation_from_json(read_json_file(o.files[1]))};
}

json embedding_json(const EmbeddingCheck& e) {
  json j{{"embedded", e.embedded}, {"triples", e.triples}};
  if (e.witness) j["witness"] = {{"x", e.witness->x}, {"y", e.witness->y}, {"y_other", e.witness->y_other}, {"z", e.witness->z}};
  return j;
}

int compose(Options& o, std::ostream& out) {
  auto [a, b] = two_relations(o);
  auto j = embedding_json(is_embedded(a, b));
  j["relation"] = relation_to_json(geometric_compose(a, b));
  emit(out, j);
  return 0;
}

int embedded(Options& o, std::ostream& out) {
  auto [a, b] = two_relations(o);
  const auto e = is_embedded(a, b);
  emit(out, embedding_json(e));
  return e.embedded ? 0 : 1;
}

int generators(Options& o, std::ostream& out) {
  if (!o.cyclic) raise(ErrorKind::ParseError, "only --cyclic generator sets are supported");
  CyclicChain c;
  for (const auto& f : o.files) c.rels.push_back(relation_from_json(read_json_file(f)));
  c.validate();
  emit(out, generators_to_json(generator_set(c, o.cfg)));
  return 0;
}

int invariant(Options& o, std::ostream& out) {
  PartialFunctorSpec spec(load_group(o.group), o.cfg);
  const auto chain = chain_from_json(read_json_file(o.chain));
  const auto inv = closed_invariant(spec, chain);
  emit(out, {{"group", spec.group().name()}, {"chain", chain.describe()}, {"count", inv.count()}});
  return 0;
}

int verify_cerf(Options& o, std::ostream& out) {
  if (o.genus < 1) raise(ErrorKind::ParseError, "--genus must be at least 1");
  PartialFunctorSpec spec(load_group(o.group), o.cfg);
  const auto report = verify_cerf_compatibility(spec, o.genus);
  emit(out, report.to_json());
  return report.all_pass() ? 0 : 1;
}

int oracle(Options& o, std::ostream& out) {
  const auto g = load_group(o.group);
  const auto p = presentation_from_json(read_json_file(o.presentation));
  emit(out, {{"group", g.name()}, {"presentation", p.name}, {"count", presentation_oracle(g, p, o.cfg)}});
  return 0;
}

json object_json(const BordObject& b) { return b.to_string(); }

int bordism_validate(Options& o, std::ostream& out) {
  const auto c = chain_from_json(read_json_file(o.chain));
  c.validate();
  emit(out, {{"valid", true}, {"source", object_json(c.source)}, {"target", object_json(c.target)},
             {"steps", c.steps.size()}, {"chain", c.describe()}});
  return 0;
}

int bordism_neighbors(Options& o, std::ostream& out) {
  const auto c = chain_from_json(read_json_file(o.chain));
  json arr = json::array();
  for (const auto& n : cerf_neighbors(c))
    arr.push_back({{"move", n.move.describe()}, {"chain", n.chain.describe()}, {"steps", chain_to_json(n.chain)}});
  emit(out, arr);
  return 0;
}

int bordism_connect(Options& o, std::ostream& out) {
  const auto a = chain_from_json(read_json_file(o.chain));
  const auto b = chain_from_json(read_json_file(o.to));
  const auto path = cerf_connected(a, b, o.cfg.depth, o.cfg);
  if (!path) {
    emit(out, {{"connected", false}, {"depth", o.cfg.depth}});
    return 1;
  }
  json moves = json::array();
  for (const auto& m : *path) moves.push_back(m.describe());
  emit(out, {{"connected", true}, {"depth", o.cfg.depth}, {"moves", moves}});
  return 0;
}

int quilt_validate_cmd(Options& o, std::ostream& out) {
  const auto report = quilt_validate(load_quilt(o.diagram));
  emit(out, report.to_json());
  return report.valid ? 0 : 1;
}

int quilt_glue_cmd(Options& o, std::ostream& out) {
  emit(out, quilt_to_json(quilt_glue(load_quilt(o.diagram), load_quilt(o.into), o.end)));
  return 0;
}

int quilt_shrink_cmd(Options& o, std::ostream& out) {
  emit(out, quilt_to_json(shrink_strip(load_quilt(o.diagram), o.patch, !o.unchecked)));
  return 0;
}

int quilt_eval_cmd(Options& o, std::ostream& out) {
  const auto q = load_quilt(o.diagram);
  std::map<std::uint32_t, Tuple> inputs;
  if (!o.inputs.empty()) {
    const auto j = read_json_file(o.inputs);
    for (const auto& [k, v] : j.items()) {
      try {
        inputs[std::uint32_t(std::stoul(k))] = v.get<Tuple>();
      } catch (const std::exception&) {
        raise(ErrorKind::ParseError, "inputs map end indices to tuples", {{"key", k}});
      }
    }
  }
  const auto outputs = quilt_evaluate(q, inputs, o.cfg);
  emit(out, {{"count", outputs.size()}, {"outputs", outputs}});
  return 0;
}

int quilt_dot_cmd(Options& o, std::ostream& out) {
  out << export_dot(load_quilt(o.diagram));
  return 0;
}

int cat_validate(Options& o, std::ostream& out) {
  if (!o.bicategory.empty()) {
    const auto v = FinBicategory(bicategory_from_json(read_json_file(o.bicategory))).violation();
    emit(out, v.is_null() ? json{{"valid", true}} : json{{"valid", false}, {"violation", v}});
    return v.is_null() ? 0 : 1;
  }
  if (o.category.empty()) raise(ErrorKind::ParseError, "--category or --bicategory is required");
  const auto j = read_json_file(o.category);
  try {
    const auto c = category_from_json(j);
    emit(out, {{"valid", true}, {"objects", c.object_count()}, {"morphisms", c.morphism_count()}});
    return 0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidCategory) throw;
    emit(out, {{"valid", false}, {"violation", e.witness()}});
    return 1;
  }
}

FinBicategory load_bicategory(const Options& o) {
  return FinBicategory(bicategory_from_json(read_json_file(o.bicategory)));
}

int cat_yoneda(Options& o, std::ostream& out) {
  const auto b = load_bicategory(o);
  b.validate();
  const auto y = yoneda(b, o.base);
  json categories = json::array(), functors = json::array(), transformations = json::array();
  for (const auto& c : y.categories) categories.push_back(category_to_json(*c));
  for (std::size_t f = 0; f < y.functors.size(); ++f) {
    y.functors[f].validate();
    functors.push_back(functor_to_json(y.functors[f]));
  }
  for (const auto& t : y.transformations) {
    t.validate();
    transformations.push_back(t.components);
  }
  emit(out, {{"base", o.base},
             {"categories", categories},
             {"objects_of", y.objects_of},
             {"morphisms_of", y.morphisms_of},
             {"functors", functors},
             {"transformations", transformations},
             {"valid", true}});
  return 0;
}

int cat_quotient(Options& o, std::ostream& out) {
  const auto q = quotient_by_2isos(load_bicategory(o));
  emit(out, {{"category", category_to_json(*q.category)},
             {"class_of", q.class_of},
             {"representatives", q.representatives}});
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set-level field theories, cobordism chains and quilt diagrams", "floerkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "worker threads (overrides FLOERKIT_THREADS)");
  app.add_option("--budget", o.cfg.budget, "maximum tuple evaluations per enumeration");
  app.add_option("--depth", o.cfg.depth, "search depth");

  std::map<CLI::App*, Handler> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    handlers[s] = std::move(h);
    return s;
  };
  auto group_opt = [&](CLI::App* s) { s->add_option("--group", o.group, "group file or builtin name")->required(); };

  auto* s = sub("group-check", "validate a group table", group_check);
  group_opt(s);
  s = sub("repvar", "enumerate a representation variety", repvar);
  group_opt(s);
  s->add_option("--genus", o.genus);
  s->add_flag("--empty", o.empty, "the empty surface");
  s = sub("lagrangian", "relation of a simple cobordism", lagrangian);
  group_opt(s);
  s->add_option("--step", o.step, "step file");
  s->add_option("--kind", o.kind, "cyl | attach2 | attach1 | cap3 | cap0");
  s->add_option("--genus", o.genus);
  s->add_option("--auto", o.autoname, "automorphism name, e.g. S1*Ta1");
  s = sub("compose", "geometric composition of two relations", compose);
  s->add_option("files", o.files, "relation files")->required();
  s = sub("embedded", "embeddedness of a composition", embedded);
  s->add_option("files", o.files, "relation files")->required();
  s = sub("generators", "generator set of a cyclic chain", generators);
  s->add_flag("--cyclic", o.cyclic, "read the relations as a cyclic chain");
  s->add_option("files", o.files, "relation files")->required();
  s = sub("invariant", "closed invariant of a chain", invariant);
  group_opt(s);
  s->add_option("--chain", o.chain)->required();
  s = sub("verify-cerf", "Cerf-compatibility certificates", verify_cerf);
  group_opt(s);
  s->add_option("--genus", o.genus)->required();
  s = sub("oracle", "Burnside count of a presentation", oracle);
  group_opt(s);
  s->add_option("--presentation", o.presentation)->required();
  s = sub("bordism-validate", "validate a cobordism chain", bordism_validate);
  s->add_option("--chain", o.chain)->required();
  s = sub("bordism-neighbors", "Cerf-move neighbors of a chain", bordism_neighbors);
  s->add_option("--chain", o.chain)->required();
  s = sub("bordism-connect", "bounded search for a Cerf-move path", bordism_connect);
  s->add_option("--chain", o.chain)->required();
  s->add_option("--to", o.to)->required();
  s = sub("quilt-validate", "validate a quilt diagram", quilt_validate_cmd);
  s->add_option("--diagram", o.diagram)->required();
  s = sub("quilt-glue", "glue the outgoing end of --diagram into an end of --into", quilt_glue_cmd);
  s->add_option("--diagram", o.diagram)->required();
  s->add_option("--into", o.into)->required();
  s->add_option("--end", o.end)->required();
  s = sub("quilt-shrink", "shrink a strip or annulus patch", quilt_shrink_cmd);
  s->add_option("--diagram", o.diagram)->required();
  s->add_option("--patch", o.patch)->required();
  s->add_flag("--unchecked", o.unchecked, "skip the embeddedness check");
  s = sub("quilt-eval", "evaluate a relation-labelled diagram", quilt_eval_cmd);
  s->add_option("--diagram", o.diagram)->required();
  s->add_option("--inputs", o.inputs, "JSON object from end index to tuple");
  s = sub("quilt-export-dot", "DOT rendering of a diagram", quilt_dot_cmd);
  s->add_option("--diagram", o.diagram)->required();
  s = sub("cat-validate", "validate a finite category or bicategory", cat_validate);
  s->add_option("--category", o.category);
  s->add_option("--bicategory", o.bicategory);
  s = sub("cat-yoneda", "Yoneda 2-functor at a base object", cat_yoneda);
  s->add_option("--bicategory", o.bicategory)->required();
  s->add_option("--base", o.base);
  s = sub("cat-quotient", "quotient by invertible 2-morphisms", cat_quotient);
  s->add_option("--bicategory", o.bicategory)->required();

  if (args.empty()) {
    err << app.help();
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }
  if (o.threads > 0) o.cfg.workers = o.threads;
  auto* chosen = app.get_subcommands().front();
  try {
    o.cfg.validate();
    return handlers.at(chosen)(o, out);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) {
      err << chosen->get_name() << ": " << e.what() << "\n";
      return 2;
    }
    emit(out, e.to_json());
    return 1;
  }
}

}  // namespace floerkit::cli
