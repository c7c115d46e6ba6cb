#include "floerkit/bicategory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "floerkit/error.hpp"
#include "floerkit/relcat.hpp"

namespace floerkit {

using nlohmann::json;

namespace {

void shape_error(const std::string& what) { raise(ErrorKind::InvalidCategory, "bicategory shape: " + what); }

std::optional<Mor2> cell(const std::vector<std::int32_t>& t, std::size_t n, std::size_t a, std::size_t b) {
  const std::int32_t v = t[a * n + b];
  if (v < 0) return std::nullopt;
  return Mor2(v);
}

}  // namespace

FinBicategory::FinBicategory(BicategoryData data) : d_(std::move(data)) {
  const std::size_t n1 = d_.source1.size(), n2 = d_.source2.size();
  if (d_.target1.size() != n1 || d_.target2.size() != n2) shape_error("source/target lengths differ");
  if (d_.identity2.size() != n1) shape_error("one identity 2-morphism per 1-morphism");
  if (d_.units.size() != d_.objects) shape_error("one weak unit per object");
  if (d_.vertical.size() != n2 * n2) shape_error("vertical table size");
  if (d_.horizontal1.size() != n1 * n1) shape_error("horizontal 1-morphism table size");
  if (!d_.horizontal2.empty() && d_.horizontal2.size() != n2 * n2) shape_error("horizontal 2-morphism table size");
  if (!d_.left_unitors.empty() && d_.left_unitors.size() != n1) shape_error("left unitor count");
  if (!d_.right_unitors.empty() && d_.right_unitors.size() != n1) shape_error("right unitor count");
  for (std::size_t f = 0; f < n1; ++f)
    if (d_.source1[f] >= d_.objects || d_.target1[f] >= d_.objects || d_.identity2[f] >= n2)
      shape_error("1-morphism " + std::to_string(f) + " out of range");
  for (std::size_t a = 0; a < n2; ++a)
    if (d_.source2[a] >= n1 || d_.target2[a] >= n1) shape_error("2-morphism " + std::to_string(a) + " out of range");
  for (Mor1 u : d_.units)
    if (u >= n1) shape_error("unit out of range");
  for (auto* t : {&d_.vertical, &d_.horizontal2})
    for (auto v : *t)
      if (v >= std::int32_t(n2)) shape_error("2-morphism table entry out of range");
  for (auto v : d_.horizontal1)
    if (v >= std::int32_t(n1)) shape_error("1-morphism table entry out of range");
  if (d_.object_names.empty())
    for (std::size_t x = 0; x < d_.objects; ++x) d_.object_names.push_back("x" + std::to_string(x));
  if (d_.names1.empty())
    for (std::size_t f = 0; f < n1; ++f) d_.names1.push_back("f" + std::to_string(f));
  if (d_.names2.empty())
    for (std::size_t a = 0; a < n2; ++a) d_.names2.push_back("a" + std::to_string(a));
  out2_.assign(n1, {});
  for (Mor2 a = 0; a < n2; ++a) out2_[d_.source2[a]].push_back(a);
  hom1_.assign(d_.objects * d_.objects, {});
  for (Mor1 f = 0; f < n1; ++f) hom1_[d_.source1[f] * d_.objects + d_.target1[f]].push_back(f);
}

std::optional<Mor2> FinBicategory::vertical(Mor2 a, Mor2 b) const { return cell(d_.vertical, count2(), a, b); }

std::optional<Mor1> FinBicategory::horizontal(Mor1 f, Mor1 g) const {
  return cell(d_.horizontal1, count1(), f, g);
}

std::optional<Mor2> FinBicategory::horizontal2(Mor2 a, Mor2 b) const {
  if (d_.horizontal2.empty()) return std::nullopt;
  return cell(d_.horizontal2, count2(), a, b);
}

std::optional<Mor2> FinBicategory::vertical_inverse(Mor2 a) const {
  const Mor1 f = d_.source2[a], g = d_.target2[a];
  for (Mor2 b : out2_[g])
    if (d_.target2[b] == f && vertical(a, b) == d_.identity2[f] && vertical(b, a) == d_.identity2[g]) return b;
  return std::nullopt;
}

json FinBicategory::violation() const {
  const std::size_t n1 = count1(), n2 = count2();
  const auto& s1 = d_.source1;
  const auto& t1 = d_.target1;
  const auto& s2 = d_.source2;
  const auto& t2 = d_.target2;
  auto iso = [&](Mor1 f, Mor1 g) {
    for (Mor2 a : out2_[f])
      if (t2[a] == g && vertical_inverse(a)) return true;
    return false;
  };

  for (Mor2 a = 0; a < n2; ++a)
    if (s1[s2[a]] != s1[t2[a]] || t1[s2[a]] != t1[t2[a]]) return {{"axiom", "2-morphism between non-parallel 1-morphisms"}, {"a", a}};
  for (Mor1 f = 0; f < n1; ++f)
    if (s2[d_.identity2[f]] != f || t2[d_.identity2[f]] != f) return {{"axiom", "identity 2-morphism endpoints"}, {"f", f}};

  for (Mor2 a = 0; a < n2; ++a)
    for (Mor2 b = 0; b < n2; ++b) {
      auto v = vertical(a, b);
      if ((t2[a] == s2[b]) != v.has_value()) return {{"axiom", "vertical composition domain"}, {"a", a}, {"b", b}};
      if (v && (s2[*v] != s2[a] || t2[*v] != t2[b])) return {{"axiom", "vertical composition endpoints"}, {"a", a}, {"b", b}};
    }
  for (Mor2 a = 0; a < n2; ++a)
    if (vertical(d_.identity2[s2[a]], a) != a || vertical(a, d_.identity2[t2[a]]) != a)
      return {{"axiom", "vertical unit"}, {"a", a}};
  for (Mor2 a = 0; a < n2; ++a)
    for (Mor2 b : out2_[t2[a]])
      for (Mor2 c : out2_[t2[b]])
        if (vertical(*vertical(a, b), c) != vertical(a, *vertical(b, c)))
          return {{"axiom", "vertical associativity"}, {"a", a}, {"b", b}, {"c", c}};

  for (Mor1 f = 0; f < n1; ++f)
    for (Mor1 g = 0; g < n1; ++g) {
      auto h = horizontal(f, g);
      if ((t1[f] == s1[g]) != h.has_value()) return {{"axiom", "horizontal composition domain"}, {"f", f}, {"g", g}};
      if (h && (s1[*h] != s1[f] || t1[*h] != t1[g])) return {{"axiom", "horizontal composition endpoints"}, {"f", f}, {"g", g}};
    }
  for (ObjId x = 0; x < d_.objects; ++x)
    if (s1[d_.units[x]] != x || t1[d_.units[x]] != x) return {{"axiom", "weak unit endpoints"}, {"object", x}};
  for (Mor1 f = 0; f < n1; ++f) {
    const Mor1 lf = *horizontal(d_.units[s1[f]], f), rf = *horizontal(f, d_.units[t1[f]]);
    if (!d_.left_unitors.empty()) {
      const Mor2 u = d_.left_unitors[f];
      if (s2[u] != lf || t2[u] != f || !vertical_inverse(u)) return {{"axiom", "left unitor"}, {"f", f}};
    } else if (lf != f && !iso(lf, f)) {
      return {{"axiom", "left unit up to 2-isomorphism"}, {"f", f}};
    }
    if (!d_.right_unitors.empty()) {
      const Mor2 u = d_.right_unitors[f];
      if (s2[u] != rf || t2[u] != f || !vertical_inverse(u)) return {{"axiom", "right unitor"}, {"f", f}};
    } else if (rf != f && !iso(rf, f)) {
      return {{"axiom", "right unit up to 2-isomorphism"}, {"f", f}};
    }
  }
  for (Mor1 f = 0; f < n1; ++f)
    for (ObjId y = 0; y < d_.objects; ++y)
      for (Mor1 g : hom(t1[f], y))
        for (ObjId z = 0; z < d_.objects; ++z)
          for (Mor1 h : hom(y, z)) {
            const Mor1 l = *horizontal(*horizontal(f, g), h), r = *horizontal(f, *horizontal(g, h));
            if (l != r && !iso(l, r))
              return {{"axiom", "horizontal associativity up to 2-isomorphism"}, {"f", f}, {"g", g}, {"h", h}};
          }

  if (!has_horizontal2()) return {{"axiom", "horizontal composition of 2-morphisms missing"}};
  for (Mor2 a = 0; a < n2; ++a)
    for (Mor2 b = 0; b < n2; ++b) {
      auto h = horizontal2(a, b);
      if ((t1[s2[a]] == s1[s2[b]]) != h.has_value()) return {{"axiom", "horizontal 2-composition domain"}, {"a", a}, {"b", b}};
      if (h && (s2[*h] != *horizontal(s2[a], s2[b]) || t2[*h] != *horizontal(t2[a], t2[b])))
        return {{"axiom", "horizontal 2-composition endpoints"}, {"a", a}, {"b", b}};
    }
  for (Mor1 f = 0; f < n1; ++f)
    for (ObjId z = 0; z < d_.objects; ++z)
      for (Mor1 g : hom(t1[f], z))
        if (horizontal2(d_.identity2[f], d_.identity2[g]) != d_.identity2[*horizontal(f, g)])
          return {{"axiom", "horizontal composition of identities"}, {"f", f}, {"g", g}};
  for (Mor2 a = 0; a < n2; ++a)
    for (Mor2 b : out2_[t2[a]]) {
      const Mor2 ab = *vertical(a, b);
      for (ObjId z = 0; z < d_.objects; ++z)
        for (Mor1 g : hom(t1[s2[a]], z))
          for (Mor2 c : out2_[g])
            for (Mor2 e : out2_[t2[c]]) {
              const Mor2 lhs = *horizontal2(ab, *vertical(c, e));
              const Mor2 rhs = *vertical(*horizontal2(a, c), *horizontal2(b, e));
              if (lhs != rhs) return {{"axiom", "interchange law"}, {"a", a}, {"b", b}, {"c", c}, {"d", e}};
            }
    }
  return nullptr;
}

void FinBicategory::validate() const {
  auto v = violation();
  if (!v.is_null()) raise(ErrorKind::InvalidCategory, "bicategory axiom violated: " + v["axiom"].get<std::string>(), v);
}

std::vector<std::uint32_t> isomorphism_classes(const FinBicategory& c) {
  const std::size_t n1 = c.count1();
  std::vector<std::uint32_t> parent(n1);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mor2 a = 0; a < c.count2(); ++a) {
    const Mor1 f = c.data().source2[a], g = c.data().target2[a];
    if (f == g || find(f) == find(g) || !c.vertical_inverse(a)) continue;
    const auto rf = find(f), rg = find(g);
    parent[std::max(rf, rg)] = std::min(rf, rg);
  }
  std::vector<std::uint32_t> out(n1);
  std::map<std::uint32_t, std::uint32_t> label;
  for (Mor1 f = 0; f < n1; ++f) {
    auto [it, fresh] = label.emplace(find(f), std::uint32_t(label.size()));
    out[f] = it->second;
  }
  return out;
}

QuotientCategory quotient_by_2isos(const FinBicategory& c) {
  const auto& d = c.data();
  const std::size_t n1 = c.count1();
  auto cls = isomorphism_classes(c);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<Mor1, Mor1>> seen;
  for (Mor1 f = 0; f < n1; ++f)
    for (Mor1 g = 0; g < n1; ++g) {
      auto h = c.horizontal(f, g);
      if (!h) continue;
      auto [it, fresh] = seen.emplace(std::pair{cls[f], cls[g]}, std::pair{f, g});
      if (fresh) continue;
      const auto [f0, g0] = it->second;
      const Mor1 h0 = *c.horizontal(f0, g0);
      if (cls[h0] != cls[*h])
        raise(ErrorKind::IllFormedQuotient, "horizontal composition does not descend to 2-isomorphism classes",
              {{"f", d.names1[f0]}, {"g", d.names1[g0]}, {"f_other", d.names1[f]}, {"g_other", d.names1[g]},
               {"composite", d.names1[h0]}, {"composite_other", d.names1[*h]},
               {"indices", {f0, g0, f, g}}});
    }
  QuotientCategory q;
  q.class_of.assign(cls.begin(), cls.end());
  const std::size_t m = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  q.representatives.assign(m, 0);
  for (Mor1 f = n1; f-- > 0;) q.representatives[cls[f]] = f;
  std::vector<ObjId> src, tgt;
  std::vector<std::string> names;
  for (Mor1 r : q.representatives) {
    src.push_back(d.source1[r]);
    tgt.push_back(d.target1[r]);
    names.push_back("[" + d.names1[r] + "]");
  }
  std::vector<MorId> ids;
  for (Mor1 u : d.units) ids.push_back(cls[u]);
  std::vector<std::int32_t> table(m * m, -1);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t s = 0; s < m; ++s)
      if (auto h = c.horizontal(q.representatives[p], q.representatives[s])) table[p * m + s] = std::int32_t(cls[*h]);
  q.category = std::make_shared<const FinCategory>(d.objects, src, tgt, ids, table, d.object_names, names);
  return q;
}

YonedaImage yoneda(const FinBicategory& c, ObjId x0) {
  if (x0 >= c.object_count())
    raise(ErrorKind::InvalidObject, "object " + std::to_string(x0) + " is not in the bicategory");
  c.validate();
  const auto& d = c.data();
  const std::size_t n = c.object_count();
  YonedaImage y;
  y.base = x0;
  std::vector<std::int32_t> local1(c.count1(), -1), local2(c.count2(), -1);
  for (ObjId x = 0; x < n; ++x) {
    const auto& objs = c.hom(x0, x);
    std::vector<Mor2> mors;
    for (Mor1 h : objs)
      for (Mor2 a : c.cells_from(h)) mors.push_back(a);
    std::sort(mors.begin(), mors.end());
    for (std::size_t i = 0; i < objs.size(); ++i) local1[objs[i]] = std::int32_t(i);
    for (std::size_t i = 0; i < mors.size(); ++i) local2[mors[i]] = std::int32_t(i);
    std::vector<ObjId> src, tgt;
    std::vector<std::string> onames, mnames;
    for (Mor1 h : objs) onames.push_back(d.names1[h]);
    for (Mor2 a : mors) {
      src.push_back(ObjId(local1[d.source2[a]]));
      tgt.push_back(ObjId(local1[d.target2[a]]));
      mnames.push_back(d.names2[a]);
    }
    std::vector<MorId> ids;
    for (Mor1 h : objs) ids.push_back(MorId(local2[d.identity2[h]]));
    const std::size_t m = mors.size();
    std::vector<std::int32_t> table(m * m, -1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (auto v = c.vertical(mors[i], mors[j])) table[i * m + j] = local2[*v];
    y.categories.push_back(std::make_shared<const FinCategory>(objs.size(), src, tgt, ids, table, onames, mnames));
    y.objects_of.push_back(objs);
    y.morphisms_of.push_back(std::move(mors));
  }
  for (Mor1 f = 0; f < c.count1(); ++f) {
    const ObjId x = d.source1[f], z = d.target1[f];
    FinFunctor F{y.categories[x], y.categories[z], {}, {}};
    for (Mor1 h : y.objects_of[x]) F.objects.push_back(ObjId(local1[*c.horizontal(h, f)]));
    for (Mor2 b : y.morphisms_of[x]) F.morphisms.push_back(MorId(local2[*c.horizontal2(b, d.identity2[f])]));
    F.validate();
    y.functors.push_back(std::move(F));
  }
  for (Mor2 a = 0; a < c.count2(); ++a) {
    const ObjId x = d.source1[d.source2[a]];
    NatTransformation t{y.functors[d.source2[a]], y.functors[d.target2[a]], {}};
    for (Mor1 h : y.objects_of[x]) t.components.push_back(MorId(local2[*c.horizontal2(d.identity2[h], a)]));
    t.validate();
    y.transformations.push_back(std::move(t));
  }
  return y;
}

FinBicategory discrete_bicategory(const FinCategory& c) {
  BicategoryData d;
  d.objects = c.object_count();
  const std::size_t m = c.morphism_count();
  for (MorId f = 0; f < m; ++f) {
    d.source1.push_back(c.source(f));
    d.target1.push_back(c.target(f));
    d.source2.push_back(f);
    d.target2.push_back(f);
    d.identity2.push_back(f);
    d.names1.push_back(c.morphism_name(f));
    d.names2.push_back("id(" + c.morphism_name(f) + ")");
  }
  for (ObjId x = 0; x < d.objects; ++x) {
    d.units.push_back(c.identity(x));
    d.object_names.push_back(c.object_name(x));
  }
  d.vertical.assign(m * m, -1);
  for (MorId f = 0; f < m; ++f) d.vertical[f * m + f] = std::int32_t(f);
  d.horizontal1 = c.table();
  d.horizontal2 = c.table();
  d.left_unitors = d.identity2;
  d.right_unitors = d.identity2;
  return FinBicategory(std::move(d));
}

FunctorBicategory functor_bicategory(const std::vector<CategoryRef>& categories, std::size_t per_hom,
                                     std::size_t max_cells) {
  const std::size_t n = categories.size();
  auto index_of = [&](const CategoryRef& c) {
    for (std::size_t i = 0; i < n; ++i)
      if (categories[i] == c) return ObjId(i);
    raise(ErrorKind::CategoryMismatch, "functor leaves the given categories");
  };
  FunctorBicategory fb{FinBicategory(BicategoryData{}), categories, {}, {}};
  auto& fs = fb.functors;
  auto find_functor = [&](const FinFunctor& f) -> std::optional<Mor1> {
    for (Mor1 i = 0; i < fs.size(); ++i)
      if (fs[i].source == f.source && fs[i].target == f.target && fs[i].objects == f.objects &&
          fs[i].morphisms == f.morphisms)
        return i;
    return std::nullopt;
  };
  auto add_functor = [&](const FinFunctor& f) {
    if (find_functor(f)) return;
    if (fs.size() >= max_cells) raise(ErrorKind::ResourceLimit, "too many functors", {{"max_cells", max_cells}});
    fs.push_back(f);
  };
  for (std::size_t i = 0; i < n; ++i) add_functor(identity_functor(categories[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& f : enumerate_functors(categories[i], categories[j], per_hom)) add_functor(f);
  for (std::size_t done = 0; done < fs.size(); ++done)
    for (std::size_t a = 0; a <= done; ++a)
      for (auto [p, q] : {std::pair{a, done}, std::pair{done, a}})
        if (fs[p].target == fs[q].source) add_functor(functor_compose(fs[p], fs[q]));

  const std::size_t n1 = fs.size();
  BicategoryData d;
  d.objects = n;
  for (std::size_t i = 0; i < n; ++i) d.object_names.push_back("C" + std::to_string(i));
  for (Mor1 f = 0; f < n1; ++f) {
    d.source1.push_back(index_of(fs[f].source));
    d.target1.push_back(index_of(fs[f].target));
    d.names1.push_back("F" + std::to_string(f));
  }
  std::map<std::tuple<Mor1, Mor1, std::vector<MorId>>, Mor2> cell_index;
  auto& ts = fb.transformations;
  for (Mor1 a = 0; a < n1; ++a)
    for (Mor1 b = 0; b < n1; ++b) {
      if (d.source1[a] != d.source1[b] || d.target1[a] != d.target1[b]) continue;
      for (auto& t : enumerate_transformations(fs[a], fs[b], max_cells + 1)) {
        cell_index.emplace(std::tuple{a, b, t.components}, Mor2(ts.size()));
        d.source2.push_back(a);
        d.target2.push_back(b);
        d.names2.push_back("T" + std::to_string(ts.size()));
        ts.push_back(std::move(t));
        if (ts.size() > max_cells) raise(ErrorKind::ResourceLimit, "too many transformations", {{"max_cells", max_cells}});
      }
    }
  const std::size_t n2 = ts.size();
  auto lookup = [&](const NatTransformation& t) {
    return cell_index.at(std::tuple{*find_functor(t.from), *find_functor(t.to), t.components});
  };
  for (Mor1 f = 0; f < n1; ++f) d.identity2.push_back(lookup(nat_identity(fs[f])));
  for (ObjId x = 0; x < n; ++x) d.units.push_back(*find_functor(identity_functor(categories[x])));
  d.horizontal1.assign(n1 * n1, -1);
  for (Mor1 f = 0; f < n1; ++f)
    for (Mor1 g = 0; g < n1; ++g)
      if (d.target1[f] == d.source1[g]) d.horizontal1[f * n1 + g] = std::int32_t(*find_functor(functor_compose(fs[f], fs[g])));
  d.vertical.assign(n2 * n2, -1);
  d.horizontal2.assign(n2 * n2, -1);
  for (Mor2 a = 0; a < n2; ++a)
    for (Mor2 b = 0; b < n2; ++b) {
      if (d.target2[a] == d.source2[b]) d.vertical[a * n2 + b] = std::int32_t(lookup(nat_vertical_compose(ts[a], ts[b])));
      if (d.target1[d.source2[a]] == d.source1[d.source2[b]])
        d.horizontal2[a * n2 + b] = std::int32_t(lookup(nat_horizontal_compose(ts[a], ts[b])));
    }
  d.left_unitors = d.identity2;
  d.right_unitors = d.identity2;
  fb.bicategory = FinBicategory(std::move(d));
  return fb;
}

RelationBicategory relation_bicategory(const std::vector<SetRef>& objects,
                                       const std::vector<FiniteRelation>& generators, std::size_t max_relations) {
  auto object_of = [&](const SetRef& s) {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (same_set(objects[i], s)) return ObjId(i);
    raise(ErrorKind::EndpointMismatch, "relation endpoint " + s->name + " is not an object");
  };
  std::vector<FiniteRelation> rels;
  std::unordered_multimap<std::uint64_t, Mor1> index;
  auto find = [&](const FiniteRelation& r) -> std::optional<Mor1> {
    auto [lo, hi] = index.equal_range(r.hash());
    for (auto it = lo; it != hi; ++it)
      if (rels[it->second] == r) return it->second;
    return std::nullopt;
  };
  auto add = [&](const FiniteRelation& r) {
    object_of(r.source());
    object_of(r.target());
    if (find(r)) return;
    if (rels.size() >= max_relations)
      raise(ErrorKind::ResourceLimit, "relation closure too large", {{"max_relations", max_relations}});
    index.emplace(r.hash(), Mor1(rels.size()));
    rels.push_back(r);
  };
  for (const auto& s : objects) add(FiniteRelation::diagonal(s));
  for (const auto& g : generators) add(g);
  for (std::size_t done = 0; done < rels.size(); ++done)
    for (std::size_t a = 0; a <= done; ++a)
      for (auto [p, q] : {std::pair{a, done}, std::pair{done, a}})
        if (same_set(rels[p].target(), rels[q].source())) add(geometric_compose(rels[p], rels[q]));

  const std::size_t n1 = rels.size();
  BicategoryData d;
  d.objects = objects.size();
  for (const auto& s : objects) d.object_names.push_back(s->name);
  for (Mor1 f = 0; f < n1; ++f) {
    d.source1.push_back(object_of(rels[f].source()));
    d.target1.push_back(object_of(rels[f].target()));
    d.names1.push_back("R" + std::to_string(f) + ":" + rels[f].source()->name + "->" + rels[f].target()->name);
  }
  std::map<std::pair<Mor1, Mor1>, Mor2> inclusion;
  for (Mor1 r = 0; r < n1; ++r)
    for (Mor1 s = 0; s < n1; ++s)
      if (d.source1[r] == d.source1[s] && d.target1[r] == d.target1[s] &&
          std::includes(rels[s].pairs().begin(), rels[s].pairs().end(), rels[r].pairs().begin(), rels[r].pairs().end())) {
        inclusion.emplace(std::pair{r, s}, Mor2(d.source2.size()));
        d.source2.push_back(r);
        d.target2.push_back(s);
        d.names2.push_back("R" + std::to_string(r) + "<=R" + std::to_string(s));
      }
  const std::size_t n2 = d.source2.size();
  for (Mor1 f = 0; f < n1; ++f) d.identity2.push_back(inclusion.at({f, f}));
  for (ObjId x = 0; x < objects.size(); ++x) d.units.push_back(*find(FiniteRelation::diagonal(objects[x])));
  d.horizontal1.assign(n1 * n1, -1);
  for (Mor1 f = 0; f < n1; ++f)
    for (Mor1 g = 0; g < n1; ++g)
      if (d.target1[f] == d.source1[g]) d.horizontal1[f * n1 + g] = std::int32_t(*find(geometric_compose(rels[f], rels[g])));
  d.vertical.assign(n2 * n2, -1);
  d.horizontal2.assign(n2 * n2, -1);
  for (Mor2 a = 0; a < n2; ++a)
    for (Mor2 b = 0; b < n2; ++b) {
      if (d.target2[a] == d.source2[b]) d.vertical[a * n2 + b] = std::int32_t(inclusion.at({d.source2[a], d.target2[b]}));
      if (d.target1[d.source2[a]] == d.source1[d.source2[b]]) {
        const Mor1 lo = Mor1(d.horizontal1[d.source2[a] * n1 + d.source2[b]]);
        const Mor1 hi = Mor1(d.horizontal1[d.target2[a] * n1 + d.target2[b]]);
        d.horizontal2[a * n2 + b] = std::int32_t(inclusion.at({lo, hi}));
      }
    }
  d.left_unitors = d.identity2;
  d.right_unitors = d.identity2;
  return RelationBicategory{FinBicategory(std::move(d)), objects, std::move(rels)};
}

FinBicategory conjugacy_bicategory(std::size_t n) {
  if (n == 0 || n > 3) raise(ErrorKind::ResourceLimit, "conjugacy bicategory is built for sets of size 1 to 3");
  std::size_t maps = 1;
  for (std::size_t i = 0; i < n; ++i) maps *= n;
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> img(n);
    for (std::size_t i = n; i-- > 0; idx /= n) img[i] = idx % n;
    return img;
  };
  auto encode = [&](const std::vector<std::size_t>& img) {
    std::size_t idx = 0;
    for (auto v : img) idx = idx * n + v;
    return idx;
  };
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t(0));
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t np = perms.size();
  auto perm_index = [&](const std::vector<std::size_t>& q) {
    return std::size_t(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  auto name = [&](const std::vector<std::size_t>& img) {
    std::string s = "(";
    for (std::size_t i = 0; i < img.size(); ++i) s += (i ? "," : "") + std::to_string(img[i]);
    return s + ")";
  };

  BicategoryData d;
  d.objects = 1;
  d.object_names = {"S" + std::to_string(n)};
  for (std::size_t f = 0; f < maps; ++f) {
    d.source1.push_back(0);
    d.target1.push_back(0);
    d.names1.push_back(name(decode(f)));
  }
  // cell (f, α₁, α₂) at f·np² + i₁·np + i₂, from f to α₂⁻¹∘f∘α₁
  for (std::size_t f = 0; f < maps; ++f) {
    const auto img = decode(f);
    for (std::size_t i1 = 0; i1 < np; ++i1)
      for (std::size_t i2 = 0; i2 < np; ++i2) {
        std::vector<std::size_t> inv2(n), g(n);
        for (std::size_t k = 0; k < n; ++k) inv2[perms[i2][k]] = k;
        for (std::size_t k = 0; k < n; ++k) g[k] = inv2[img[perms[i1][k]]];
        d.source2.push_back(Mor1(f));
        d.target2.push_back(Mor1(encode(g)));
        d.names2.push_back(name(img) + "~" + name(perms[i1]) + name(perms[i2]));
      }
  }
  const std::size_t n2 = d.source2.size();
  const std::size_t id_perm = 0;
  for (std::size_t f = 0; f < maps; ++f) d.identity2.push_back(Mor2(f * np * np + id_perm * np + id_perm));
  std::vector<std::size_t> id_map(n);
  std::iota(id_map.begin(), id_map.end(), std::size_t(0));
  d.units = {Mor1(encode(id_map))};
  d.vertical.assign(n2 * n2, -1);
  for (std::size_t a = 0; a < n2; ++a) {
    const std::size_t a1 = (a / np) % np, a2 = a % np;
    const std::size_t g = d.target2[a];
    for (std::size_t b1 = 0; b1 < np; ++b1)
      for (std::size_t b2 = 0; b2 < np; ++b2) {
        std::vector<std::size_t> c1(n), c2(n);
        for (std::size_t k = 0; k < n; ++k) {
          c1[k] = perms[a1][perms[b1][k]];
          c2[k] = perms[a2][perms[b2][k]];
        }
        const std::size_t b = g * np * np + b1 * np + b2;
        const std::size_t c = d.source2[a] * np * np + perm_index(c1) * np + perm_index(c2);
        d.vertical[a * n2 + b] = std::int32_t(c);
      }
  }
  d.horizontal1.assign(maps * maps, -1);
  for (std::size_t f = 0; f < maps; ++f)
    for (std::size_t g = 0; g < maps; ++g) {
      const auto fi = decode(f), gi = decode(g);
      std::vector<std::size_t> h(n);
      for (std::size_t k = 0; k < n; ++k) h[k] = gi[fi[k]];
      d.horizontal1[f * maps + g] = std::int32_t(encode(h));
    }
  d.left_unitors = d.identity2;
  d.right_unitors = d.identity2;
  return FinBicategory(std::move(d));
}

}  // namespace floerkit
