#include <doctest.h>

#include <random>

#include "floerkit/bicategory.hpp"
#include "floerkit/error.hpp"
#include "floerkit/fieldfun.hpp"
#include "floerkit/relcat.hpp"

using namespace floerkit;

namespace {

// 0 → 1 → … → n−1 as a poset; morphism (i,j) for i ≤ j
CategoryRef chain_category(std::size_t n) {
  std::vector<ObjId> src, tgt;
  std::vector<std::vector<std::int32_t>> id(n, std::vector<std::int32_t>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      id[i][j] = std::int32_t(src.size());
      src.push_back(ObjId(i));
      tgt.push_back(ObjId(j));
    }
  const std::size_t m = src.size();
  std::vector<std::int32_t> table(m * m, -1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (tgt[a] == src[b]) table[a * m + b] = id[src[a]][tgt[b]];
  std::vector<MorId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(MorId(id[i][i]));
  return std::make_shared<const FinCategory>(n, src, tgt, ids, table);
}

FinFunctor constant(const CategoryRef& c, const CategoryRef& d, ObjId y) {
  FinFunctor f{c, d, std::vector<ObjId>(c->object_count(), y), std::vector<MorId>(c->morphism_count(), d->identity(y))};
  f.validate();
  return f;
}

bool isomorphic(const FinBicategory& c, Mor1 f, Mor1 g) {
  if (f == g) return true;
  for (Mor2 a : c.cells_from(f))
    if (c.data().target2[a] == g && c.vertical_inverse(a)) return true;
  return false;
}

// objects x, y; 1-morphisms 1ₓ, 1ᵧ, f, g: x → y; 2-cells ids, α: f ⇒ g, α⁻¹
FinBicategory invertible_cell_example() {
  BicategoryData d;
  d.objects = 2;
  d.source1 = {0, 1, 0, 0};
  d.target1 = {0, 1, 1, 1};
  d.units = {0, 1};
  d.identity2 = {0, 1, 2, 3};
  d.source2 = {0, 1, 2, 3, 2, 3};
  d.target2 = {0, 1, 2, 3, 3, 2};
  d.names1 = {"1x", "1y", "f", "g"};
  d.horizontal1.assign(16, -1);
  auto h1 = [&](int a, int b, int c) { d.horizontal1[a * 4 + b] = c; };
  h1(0, 0, 0), h1(1, 1, 1), h1(0, 2, 2), h1(0, 3, 3), h1(2, 1, 2), h1(3, 1, 3);
  d.vertical.assign(36, -1);
  auto v = [&](int a, int b, int c) { d.vertical[a * 6 + b] = c; };
  for (int a = 0; a < 4; ++a) v(a, a, a);
  v(4, 5, 2), v(5, 4, 3), v(2, 4, 4), v(4, 3, 4), v(3, 5, 5), v(5, 2, 5);
  d.horizontal2.assign(36, -1);
  auto h2 = [&](int a, int b, int c) { d.horizontal2[a * 6 + b] = c; };
  h2(0, 0, 0), h2(1, 1, 1);
  for (int a = 2; a < 6; ++a) h2(0, a, a), h2(a, 1, a);
  return FinBicategory(std::move(d));
}

}  // namespace

TEST_CASE("random finite categories satisfy the axioms and their functors validate") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CAPTURE(seed);
    auto c = random_finset_category(seed, 5, 40);
    CHECK(c->object_count() <= 5);
    CHECK(c->morphism_count() <= 40);
    auto d = random_finset_category(seed + 1000, 3, 20);
    auto fs = enumerate_functors(c, d, 6);
    for (const auto& f : fs) f.validate();
    auto id = identity_functor(c);
    for (const auto& f : fs) {
      CHECK(functor_compose(id, f) == f);
      CHECK(functor_compose(f, identity_functor(d)) == f);
    }
  }
}

TEST_CASE("category validation rejects broken tables") {
  auto c = chain_category(3);
  auto table = c->table();
  std::vector<ObjId> src, tgt;
  for (MorId f = 0; f < c->morphism_count(); ++f) src.push_back(c->source(f)), tgt.push_back(c->target(f));
  std::vector<MorId> ids{c->identity(0), c->identity(1), c->identity(2)};
  CHECK(FinCategory::violation(3, src, tgt, ids, table).is_null());
  auto bad = table;
  const std::size_t m = c->morphism_count();
  bad[ids[0] * m + c->hom(0, 1)[0]] = std::int32_t(c->hom(0, 2)[0]);
  auto v = FinCategory::violation(3, src, tgt, ids, bad);
  CHECK(!v.is_null());
  CHECK_THROWS_AS(FinCategory(3, src, tgt, ids, bad), Error);
  CHECK_THROWS_AS(c->compose(c->hom(1, 2)[0], c->hom(0, 1)[0]), Error);
}

TEST_CASE("vertical composition of transformations") {
  auto c = chain_category(2);
  auto d = chain_category(2);
  auto f0 = constant(c, d, 0), f1 = constant(c, d, 1);
  auto ts01 = enumerate_transformations(f0, f1, 10);
  REQUIRE(ts01.size() == 1);
  const auto& eta = ts01[0];
  CHECK(nat_vertical_compose(eta, nat_identity(f1)) == eta);
  CHECK(nat_vertical_compose(nat_identity(f0), eta) == eta);
  for (ObjId x = 0; x < 2; ++x) CHECK(eta.components[x] == d->hom(0, 1)[0]);
  CHECK_THROWS_AS(nat_vertical_compose(eta, eta), Error);
  try {
    nat_vertical_compose(eta, eta);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MiddleMismatch);
  }
  CHECK(!eta.is_isomorphism());
  CHECK(nat_identity(f0).is_isomorphism());
}

TEST_CASE("interchange on the 3-object chain") {
  auto c = chain_category(3);
  auto fs = enumerate_functors(c, c, 100);
  // monotone maps of {0,1,2}
  CHECK(fs.size() == 10);
  std::size_t grids = 0;
  for (const auto& f : fs)
    for (const auto& g : fs)
      for (const auto& h : fs)
        for (const auto& eta : enumerate_transformations(f, g, 4))
          for (const auto& zeta : enumerate_transformations(g, h, 4))
            for (const auto& f2 : {fs[0], fs[9]})
              for (const auto& eta2 : enumerate_transformations(f2, f2, 2)) {
                auto lhs = nat_horizontal_compose(nat_vertical_compose(eta, zeta), nat_vertical_compose(eta2, eta2));
                auto rhs = nat_vertical_compose(nat_horizontal_compose(eta, eta2), nat_horizontal_compose(zeta, eta2));
                CHECK(lhs == rhs);
                ++grids;
              }
  CHECK(grids > 100);
}

TEST_CASE("horizontal composition examples") {
  auto c = chain_category(2);
  auto d = chain_category(3);
  auto fs = enumerate_functors(c, d, 20);
  auto gs = enumerate_functors(d, c, 20);
  REQUIRE(!fs.empty());
  REQUIRE(!gs.empty());
  for (const auto& f : fs)
    for (const auto& g : gs) {
      CHECK(nat_horizontal_compose(nat_identity(f), nat_identity(g)) == nat_identity(functor_compose(f, g)));
      for (const auto& g2 : gs)
        for (const auto& eta : enumerate_transformations(g, g2, 4)) {
          auto whisker = nat_horizontal_compose(nat_identity(f), eta);
          for (ObjId x = 0; x < c->object_count(); ++x)
            CHECK(whisker.components[x] == eta.components[f.objects[x]]);
        }
    }
  try {
    nat_horizontal_compose(nat_identity(fs[0]), nat_identity(fs[0]));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CategoryMismatch);
  }
}

TEST_CASE("functor categories are categories") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = random_finset_category(seed, 2, 8);
    auto d = random_finset_category(seed + 77, 2, 8);
    auto fc = functor_category(enumerate_functors(c, d, 5));
    CHECK(fc.category->object_count() == fc.functors.size());
    CHECK(fc.category->morphism_count() == fc.transformations.size());
    for (ObjId x = 0; x < fc.category->object_count(); ++x)
      CHECK(fc.transformations[fc.category->identity(x)] == nat_identity(fc.functors[x]));
  }
}

TEST_CASE("discrete bicategory: quotient and Yoneda") {
  auto one = chain_category(1);
  auto b1 = discrete_bicategory(*one);
  b1.validate();
  auto y = yoneda(b1, 0);
  REQUIRE(y.categories.size() == 1);
  CHECK(y.categories[0]->object_count() == 1);
  CHECK(y.categories[0]->morphism_count() == 1);
  CHECK_THROWS_AS(yoneda(b1, 3), Error);

  auto c = chain_category(3);
  auto b = discrete_bicategory(*c);
  b.validate();
  auto q = quotient_by_2isos(b);
  CHECK(*q.category == *c);
  auto yc = yoneda(b, 0);
  for (ObjId x = 0; x < 3; ++x) CHECK(yc.categories[x]->object_count() == c->hom(0, x).size());
  for (ObjId x = 0; x < 3; ++x) CHECK(yc.functors[c->identity(x)] == identity_functor(yc.categories[x]));
}

TEST_CASE("one invertible 2-cell identifies its endpoints") {
  auto b = invertible_cell_example();
  b.validate();
  auto cls = isomorphism_classes(b);
  CHECK(cls[2] == cls[3]);
  CHECK(cls[0] != cls[2]);
  auto q = quotient_by_2isos(b);
  CHECK(q.category->morphism_count() == 3);
  CHECK(q.category->hom(0, 1).size() == 1);
  auto y = yoneda(b, 0);
  CHECK(y.categories[1]->object_count() == 2);
  CHECK(y.categories[1]->morphism_count() == 4);
  CHECK(y.transformations[4].is_isomorphism());
  CHECK(y.functors[b.data().units[0]] == identity_functor(y.categories[0]));
}

TEST_CASE("validator reports broken interchange") {
  auto good = invertible_cell_example();
  auto d = good.data();
  d.horizontal2[0 * 6 + 4] = 5;
  auto v = FinBicategory(d).violation();
  CHECK(!v.is_null());
  CHECK_THROWS_AS(FinBicategory(d).validate(), Error);
  auto e = good.data();
  e.horizontal2.clear();
  CHECK(FinBicategory(e).violation()["axiom"] == "horizontal composition of 2-morphisms missing");
}

TEST_CASE("functor bicategory is valid and 2-isomorphism is an equivalence") {
  std::vector<CategoryRef> cats{chain_category(2), random_finset_category(3, 2, 6)};
  auto fb = functor_bicategory(cats, 4);
  fb.bicategory.validate();
  auto y = yoneda(fb.bicategory, 0);
  CHECK(y.functors.size() == fb.bicategory.count1());
  const auto& b = fb.bicategory;
  std::mt19937 rng(5);
  std::uniform_int_distribution<Mor1> pick(0, Mor1(b.count1() - 1));
  for (int trial = 0; trial < 300; ++trial) {
    const Mor1 f = pick(rng), g = pick(rng), h = pick(rng);
    CHECK(isomorphic(b, f, f));
    CHECK(isomorphic(b, f, g) == isomorphic(b, g, f));
    if (isomorphic(b, f, g) && isomorphic(b, g, h)) CHECK(isomorphic(b, f, h));
  }
  auto q = quotient_by_2isos(b);
  CHECK(q.category->object_count() == 2);
}

TEST_CASE("conjugacy of maps does not yield a quotient category") {
  auto b = conjugacy_bicategory(3);
  CHECK(b.count1() == 27);
  CHECK(b.count2() == 27 * 36);
  CHECK(!b.violation().is_null());
  auto index = [&](const std::string& name) {
    for (Mor1 f = 0; f < b.count1(); ++f)
      if (b.data().names1[f] == name) return f;
    FAIL("missing " << name);
    return Mor1(0);
  };
  const Mor1 f12 = index("(0,0,1)"), g12 = index("(0,0,2)"), f23 = index("(0,0,1)");
  auto cls = isomorphism_classes(b);
  CHECK(cls[f12] == cls[g12]);
  const Mor1 lhs = *b.horizontal(f12, f23), rhs = *b.horizontal(g12, f23);
  CHECK(b.data().names1[lhs] == "(0,0,0)");
  CHECK(b.data().names1[rhs] == "(0,0,1)");
  CHECK(cls[lhs] != cls[rhs]);
  try {
    quotient_by_2isos(b);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllFormedQuotient);
    CHECK(e.witness().contains("composite"));
    CHECK(e.witness()["composite"] != e.witness()["composite_other"]);
  }
}

TEST_CASE("relation bicategory over Z3") {
  PartialFunctorSpec spec(cyclic_group(3));
  using SC = SimpleCobordism;
  std::vector<SetRef> objects{spec.object(BordObject::empty()), spec.object(BordObject::surface(0)),
                              spec.object(BordObject::surface(1))};
  std::vector<SC> steps{SC::cap0(), SC::cap3(), SC::attach2(autos::identity(1)), SC::attach1(autos::identity(1)),
                        SC::cyl(autos::s_move(1, 1))};
  std::vector<FiniteRelation> gens;
  for (const auto& s : steps) gens.push_back(spec.morphism(s));
  auto rb = relation_bicategory(objects, gens);
  const auto& b = rb.bicategory;
  b.validate();

  // inclusions are the only 2-cells, so the quotient is the relation category itself
  auto q = quotient_by_2isos(b);
  CHECK(q.category->morphism_count() == b.count1());
  for (Mor1 f = 0; f < b.count1(); ++f)
    for (Mor1 g = 0; g < b.count1(); ++g)
      if (auto h = b.horizontal(f, g)) {
        CHECK(q.category->compose(q.class_of[f], q.class_of[g]) == q.class_of[*h]);
        CHECK(rb.relations[*h] == geometric_compose(rb.relations[f], rb.relations[g]));
        if (is_embedded(rb.relations[f], rb.relations[g]).embedded)
          CHECK(rb.relations[*h].size() == is_embedded(rb.relations[f], rb.relations[g]).triples);
      }

  // Yoneda from the point: chains out of the empty surface
  auto y = yoneda(b, 0);
  auto chain = CobordismChain::from_steps({SC::cap0(), SC::attach1(autos::identity(1)), SC::cyl(autos::s_move(1, 1)),
                                           SC::cyl(autos::s_move(1, 1))});
  auto value = functor_eval(spec, chain);
  REQUIRE(value.composed);
  bool found = false;
  for (Mor1 h : y.objects_of[2]) found = found || rb.relations[h] == *value.composed;
  CHECK(found);
  for (Mor1 h : y.objects_of[2]) CHECK(same_set(rb.relations[h].source(), objects[0]));
}
