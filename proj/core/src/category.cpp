#include "floerkit/category.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <map>
#include <random>

#include "floerkit/error.hpp"

namespace floerkit {

using nlohmann::json;

json FinCategory::violation(std::size_t objects, const std::vector<ObjId>& source,
                            const std::vector<ObjId>& target, const std::vector<MorId>& identities,
                            const std::vector<std::int32_t>& composition) {
  const std::size_t m = source.size();
  if (target.size() != m || identities.size() != objects || composition.size() != m * m)
    return {{"axiom", "shape"}, {"morphisms", m}, {"objects", objects}};
  for (std::size_t f = 0; f < m; ++f)
    if (source[f] >= objects || target[f] >= objects) return {{"axiom", "endpoint range"}, {"f", f}};
  for (std::size_t x = 0; x < objects; ++x) {
    const MorId i = identities[x];
    if (i >= m || source[i] != x || target[i] != x) return {{"axiom", "identity endpoints"}, {"object", x}};
  }
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      const std::int32_t h = composition[f * m + g];
      if ((target[f] == source[g]) != (h >= 0))
        return {{"axiom", "composition domain"}, {"f", f}, {"g", g}};
      if (h >= 0 && (std::size_t(h) >= m || source[std::size_t(h)] != source[f] ||
                     target[std::size_t(h)] != target[g]))
        return {{"axiom", "composition endpoints"}, {"f", f}, {"g", g}};
    }
  for (std::size_t f = 0; f < m; ++f) {
    if (composition[identities[source[f]] * m + f] != std::int32_t(f))
      return {{"axiom", "left identity"}, {"f", f}};
    if (composition[f * m + identities[target[f]]] != std::int32_t(f))
      return {{"axiom", "right identity"}, {"f", f}};
  }
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g) {
      const std::int32_t fg = composition[f * m + g];
      if (fg < 0) continue;
      for (std::size_t h = 0; h < m; ++h) {
        const std::int32_t gh = composition[g * m + h];
        if (gh < 0) continue;
        if (composition[std::size_t(fg) * m + h] != composition[f * m + std::size_t(gh)])
          return {{"axiom", "associativity"}, {"f", f}, {"g", g}, {"h", h}};
      }
    }
  return nullptr;
}

FinCategory::FinCategory(std::size_t objects, std::vector<ObjId> source, std::vector<ObjId> target,
                         std::vector<MorId> identities, std::vector<std::int32_t> composition,
                         std::vector<std::string> object_names, std::vector<std::string> morphism_names)
    : objects_(objects),
      source_(std::move(source)),
      target_(std::move(target)),
      identities_(std::move(identities)),
      composition_(std::move(composition)),
      object_names_(std::move(object_names)),
      morphism_names_(std::move(morphism_names)) {
  auto v = violation(objects_, source_, target_, identities_, composition_);
  if (!v.is_null()) raise(ErrorKind::InvalidCategory, "category axiom violated: " + v["axiom"].get<std::string>(), v);
  homs_.assign(objects_ * objects_, {});
  for (MorId f = 0; f < source_.size(); ++f) homs_[source_[f] * objects_ + target_[f]].push_back(f);
  if (object_names_.empty())
    for (std::size_t x = 0; x < objects_; ++x) object_names_.push_back("x" + std::to_string(x));
  if (morphism_names_.empty())
    for (std::size_t f = 0; f < source_.size(); ++f) morphism_names_.push_back("f" + std::to_string(f));
  if (object_names_.size() != objects_ || morphism_names_.size() != source_.size())
    raise(ErrorKind::InvalidCategory, "name list has the wrong length");
}

MorId FinCategory::compose(MorId f, MorId g) const {
  const std::int32_t h = composition_[f * source_.size() + g];
  if (h < 0)
    raise(ErrorKind::CategoryMismatch, "morphisms " + std::to_string(f) + " and " + std::to_string(g) +
                                           " are not composable");
  return MorId(h);
}

std::optional<MorId> FinCategory::inverse(MorId f) const {
  for (MorId g : hom(target_[f], source_[f]))
    if (compose(f, g) == identities_[source_[f]] && compose(g, f) == identities_[target_[f]]) return g;
  return std::nullopt;
}

bool FinCategory::operator==(const FinCategory& other) const {
  return objects_ == other.objects_ && source_ == other.source_ && target_ == other.target_ &&
         identities_ == other.identities_ && composition_ == other.composition_;
}

namespace {

bool same_category(const CategoryRef& a, const CategoryRef& b) { return a == b || (a && b && *a == *b); }

}  // namespace

void FinFunctor::validate() const {
  if (!source || !target) raise(ErrorKind::InvalidCategory, "functor without categories");
  if (objects.size() != source->object_count() || morphisms.size() != source->morphism_count())
    raise(ErrorKind::InvalidCategory, "functor table has the wrong size");
  for (ObjId x = 0; x < objects.size(); ++x) {
    if (objects[x] >= target->object_count()) raise(ErrorKind::InvalidCategory, "object image out of range", {{"object", x}});
    if (morphisms[source->identity(x)] != target->identity(objects[x]))
      raise(ErrorKind::InvalidCategory, "functor does not preserve identities", {{"object", x}});
  }
  for (MorId f = 0; f < morphisms.size(); ++f) {
    const MorId ff = morphisms[f];
    if (ff >= target->morphism_count() || target->source(ff) != objects[source->source(f)] ||
        target->target(ff) != objects[source->target(f)])
      raise(ErrorKind::InvalidCategory, "functor does not preserve endpoints", {{"morphism", f}});
  }
  const std::size_t m = source->morphism_count();
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g)
      if (source->composable(f, g) &&
          morphisms[source->compose(f, g)] != target->compose(morphisms[f], morphisms[g]))
        raise(ErrorKind::InvalidCategory, "functor does not preserve composition", {{"f", f}, {"g", g}});
}

bool FinFunctor::operator==(const FinFunctor& other) const {
  return objects == other.objects && morphisms == other.morphisms && same_category(source, other.source) &&
         same_category(target, other.target);
}

FinFunctor identity_functor(const CategoryRef& c) {
  FinFunctor f{c, c, {}, {}};
  for (ObjId x = 0; x < c->object_count(); ++x) f.objects.push_back(x);
  for (MorId m = 0; m < c->morphism_count(); ++m) f.morphisms.push_back(m);
  return f;
}

FinFunctor functor_compose(const FinFunctor& f, const FinFunctor& g) {
  if (!same_category(f.target, g.source)) raise(ErrorKind::CategoryMismatch, "functors do not compose");
  FinFunctor h{f.source, g.target, {}, {}};
  for (ObjId x : f.objects) h.objects.push_back(g.objects[x]);
  for (MorId m : f.morphisms) h.morphisms.push_back(g.morphisms[m]);
  return h;
}

void NatTransformation::validate() const {
  if (!same_category(from.source, to.source) || !same_category(from.target, to.target))
    raise(ErrorKind::CategoryMismatch, "transformation between functors of different types");
  const auto& c = *from.source;
  const auto& d = *from.target;
  if (components.size() != c.object_count()) raise(ErrorKind::InvalidCategory, "wrong number of components");
  for (ObjId x = 0; x < c.object_count(); ++x) {
    const MorId e = components[x];
    if (e >= d.morphism_count() || d.source(e) != from.objects[x] || d.target(e) != to.objects[x])
      raise(ErrorKind::InvalidCategory, "component has wrong endpoints", {{"object", x}});
  }
  for (MorId k = 0; k < c.morphism_count(); ++k) {
    const ObjId x = c.source(k), y = c.target(k);
    if (d.compose(from.morphisms[k], components[y]) != d.compose(components[x], to.morphisms[k]))
      raise(ErrorKind::InvalidCategory, "naturality square fails", {{"morphism", k}});
  }
}

bool NatTransformation::is_isomorphism() const {
  for (MorId e : components)
    if (!from.target->inverse(e)) return false;
  return true;
}

bool NatTransformation::operator==(const NatTransformation& other) const {
  return components == other.components && from == other.from && to == other.to;
}

NatTransformation nat_identity(const FinFunctor& f) {
  NatTransformation n{f, f, {}};
  for (ObjId y : f.objects) n.components.push_back(f.target->identity(y));
  return n;
}

NatTransformation nat_vertical_compose(const NatTransformation& eta, const NatTransformation& zeta) {
  if (!(eta.to == zeta.from)) raise(ErrorKind::MiddleMismatch, "transformations do not share the middle functor");
  NatTransformation out{eta.from, zeta.to, {}};
  const auto& d = *eta.from.target;
  for (ObjId x = 0; x < eta.components.size(); ++x)
    out.components.push_back(d.compose(eta.components[x], zeta.components[x]));
  out.validate();
  return out;
}

NatTransformation nat_horizontal_compose(const NatTransformation& eta01, const NatTransformation& eta12) {
  if (!same_category(eta01.from.target, eta12.from.source))
    raise(ErrorKind::CategoryMismatch, "transformations live over different categories");
  const auto& c2 = *eta12.from.target;
  NatTransformation out{functor_compose(eta01.from, eta12.from), functor_compose(eta01.to, eta12.to), {}};
  for (ObjId x = 0; x < eta01.components.size(); ++x) {
    const MorId first = c2.compose(eta12.components[eta01.from.objects[x]], eta12.to.morphisms[eta01.components[x]]);
    const MorId second = c2.compose(eta12.from.morphisms[eta01.components[x]], eta12.components[eta01.to.objects[x]]);
    if (first != second)
      raise(ErrorKind::InvalidCategory, "horizontal composition formulas disagree", {{"object", x}});
    out.components.push_back(first);
  }
  out.validate();
  return out;
}

std::vector<FinFunctor> enumerate_functors(const CategoryRef& c, const CategoryRef& d, std::size_t limit,
                                           std::uint64_t node_budget) {
  std::vector<FinFunctor> out;
  const std::size_t n = c->object_count(), m = c->morphism_count();
  // triples (f, g, f∘g) checked once their largest index is assigned
  std::vector<std::vector<std::array<MorId, 3>>> checks(m);
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g)
      if (c->composable(f, g)) {
        const MorId h = c->compose(f, g);
        checks[std::max({f, g, h})].push_back({f, g, h});
      }
  std::vector<ObjId> obj(n);
  std::vector<MorId> mor(m);
  std::uint64_t nodes = 0;
  bool stop = false;

  auto assign_morphisms = [&](auto&& self, MorId k) -> void {
    if (stop) return;
    if (++nodes > node_budget) {
      stop = true;
      return;
    }
    if (k == m) {
      out.push_back(FinFunctor{c, d, obj, mor});
      if (out.size() >= limit) stop = true;
      return;
    }
    const ObjId x = c->source(k), y = c->target(k);
    auto try_value = [&](MorId v) {
      mor[k] = v;
      for (const auto& t : checks[k])
        if (mor[t[2]] != d->compose(mor[t[0]], mor[t[1]])) return;
      self(self, k + 1);
    };
    if (k == c->identity(x) && x == y)
      try_value(d->identity(obj[x]));
    else
      for (MorId v : d->hom(obj[x], obj[y])) {
        try_value(v);
        if (stop) return;
      }
  };
  auto assign_objects = [&](auto&& self, ObjId x) -> void {
    if (stop) return;
    if (x == n) {
      assign_morphisms(assign_morphisms, 0);
      return;
    }
    for (ObjId y = 0; y < d->object_count() && !stop; ++y) {
      obj[x] = y;
      self(self, x + 1);
    }
  };
  if (limit > 0) assign_objects(assign_objects, 0);
  return out;
}

std::vector<NatTransformation> enumerate_transformations(const FinFunctor& f, const FinFunctor& g,
                                                         std::size_t limit) {
  if (!same_category(f.source, g.source) || !same_category(f.target, g.target))
    raise(ErrorKind::CategoryMismatch, "functors are not parallel");
  const auto& c = *f.source;
  const auto& d = *f.target;
  std::vector<NatTransformation> out;
  std::vector<MorId> comp(c.object_count());
  // naturality for k: x→y checked when max(x, y) is assigned
  std::vector<std::vector<MorId>> checks(c.object_count());
  for (MorId k = 0; k < c.morphism_count(); ++k) checks[std::max(c.source(k), c.target(k))].push_back(k);
  auto rec = [&](auto&& self, ObjId x) -> void {
    if (out.size() >= limit) return;
    if (x == c.object_count()) {
      out.push_back(NatTransformation{f, g, comp});
      return;
    }
    for (MorId e : d.hom(f.objects[x], g.objects[x])) {
      comp[x] = e;
      bool ok = true;
      for (MorId k : checks[x])
        if (d.compose(f.morphisms[k], comp[c.target(k)]) != d.compose(comp[c.source(k)], g.morphisms[k])) {
          ok = false;
          break;
        }
      if (ok) self(self, x + 1);
      if (out.size() >= limit) return;
    }
  };
  rec(rec, 0);
  return out;
}

FunctorCategory functor_category(const std::vector<FinFunctor>& functors, std::size_t max_morphisms) {
  FunctorCategory fc;
  for (const auto& f : functors)
    if (std::find(fc.functors.begin(), fc.functors.end(), f) == fc.functors.end()) fc.functors.push_back(f);
  const std::size_t n = fc.functors.size();
  std::vector<ObjId> src, tgt;
  std::vector<std::vector<MorId>> homs(n * n);
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      auto ts = enumerate_transformations(fc.functors[a], fc.functors[b], max_morphisms + 1);
      for (auto& t : ts) {
        homs[a * n + b].push_back(MorId(fc.transformations.size()));
        fc.transformations.push_back(std::move(t));
        src.push_back(a);
        tgt.push_back(b);
      }
      if (fc.transformations.size() > max_morphisms)
        raise(ErrorKind::ResourceLimit, "functor category too large", {{"max_morphisms", max_morphisms}});
    }
  const std::size_t m = fc.transformations.size();
  std::vector<MorId> ids;
  for (ObjId a = 0; a < n; ++a) {
    auto id = nat_identity(fc.functors[a]);
    for (MorId t : homs[a * n + a])
      if (fc.transformations[t] == id) ids.push_back(t);
  }
  std::map<std::tuple<ObjId, ObjId, std::vector<MorId>>, MorId> index;
  for (MorId u = 0; u < m; ++u) index.emplace(std::tuple{src[u], tgt[u], fc.transformations[u].components}, u);
  std::vector<std::int32_t> table(m * m, -1);
  for (MorId s = 0; s < m; ++s)
    for (ObjId b = 0; b < n; ++b)
      for (MorId t : homs[tgt[s] * n + b]) {
        auto v = nat_vertical_compose(fc.transformations[s], fc.transformations[t]);
        if (auto it = index.find(std::tuple{src[s], b, v.components}); it != index.end())
          table[s * m + t] = std::int32_t(it->second);
      }
  fc.category = std::make_shared<const FinCategory>(n, src, tgt, ids, table);
  return fc;
}

CategoryRef random_finset_category(std::uint64_t seed, std::size_t max_objects, std::size_t max_morphisms) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t k = uniform(1, std::max<std::size_t>(1, max_objects));
  std::vector<std::size_t> sizes(k);
  for (auto& s : sizes) s = uniform(1, 3);
  struct Map {
    ObjId src, tgt;
    std::vector<std::uint8_t> img;
    bool operator<(const Map& o) const { return std::tie(src, tgt, img) < std::tie(o.src, o.tgt, o.img); }
  };
  std::vector<Map> gens;
  for (std::size_t i = uniform(1, 2 * k + 2); i > 0; --i) {
    Map m{ObjId(uniform(0, k - 1)), ObjId(uniform(0, k - 1)), {}};
    for (std::size_t j = 0; j < sizes[m.src]; ++j) m.img.push_back(std::uint8_t(uniform(0, sizes[m.tgt] - 1)));
    gens.push_back(m);
  }
  auto close = [&](std::size_t used) {
    std::vector<Map> maps;
    std::map<Map, MorId> index;
    auto add = [&](const Map& m) {
      if (index.count(m)) return;
      index.emplace(m, MorId(maps.size()));
      maps.push_back(m);
    };
    for (ObjId x = 0; x < k; ++x) {
      Map id{x, x, {}};
      for (std::size_t j = 0; j < sizes[x]; ++j) id.img.push_back(std::uint8_t(j));
      add(id);
    }
    for (std::size_t i = 0; i < used; ++i) add(gens[i]);
    for (std::size_t done = 0; done < maps.size() && maps.size() <= max_morphisms; ++done)
      for (std::size_t a = 0; a <= done && maps.size() <= max_morphisms; ++a)
        for (auto [f, g] : {std::pair{a, done}, std::pair{done, a}}) {
          const Map mf = maps[f], mg = maps[g];
          if (mf.tgt != mg.src) continue;
          Map h{mf.src, mg.tgt, {}};
          for (auto v : mf.img) h.img.push_back(mg.img[v]);
          add(h);
        }
    return maps;
  };
  std::size_t used = gens.size();
  auto maps = close(used);
  while (maps.size() > max_morphisms) maps = close(--used);

  std::map<Map, MorId> index;
  for (MorId i = 0; i < maps.size(); ++i) index.emplace(maps[i], i);
  const std::size_t m = maps.size();
  std::vector<ObjId> src, tgt;
  std::vector<MorId> ids(k);
  std::vector<std::string> onames, mnames;
  for (ObjId x = 0; x < k; ++x) {
    ids[x] = x;
    onames.push_back("S" + std::to_string(x) + "[" + std::to_string(sizes[x]) + "]");
  }
  std::vector<std::int32_t> table(m * m, -1);
  for (MorId f = 0; f < m; ++f) {
    src.push_back(maps[f].src);
    tgt.push_back(maps[f].tgt);
    std::string name = "f" + std::to_string(f) + ":";
    for (auto v : maps[f].img) name += std::to_string(v);
    mnames.push_back(name);
    for (MorId g = 0; g < m; ++g) {
      if (maps[f].tgt != maps[g].src) continue;
      Map h{maps[f].src, maps[g].tgt, {}};
      for (auto v : maps[f].img) h.img.push_back(maps[g].img[v]);
      table[f * m + g] = std::int32_t(index.at(h));
    }
  }
  return std::make_shared<const FinCategory>(k, src, tgt, ids, table, onames, mnames);
}

}  // namespace floerkit
