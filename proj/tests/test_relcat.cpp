#include <doctest.h>

#include <random>

#include "floerkit/error.hpp"
#include "floerkit/relcat.hpp"
#include "floerkit/repvar.hpp"

using namespace floerkit;

namespace {

FiniteRelation random_relation(std::mt19937& rng, const SetRef& a, const SetRef& b, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<IndexPair> pairs;
  for (Index x = 0; x < a->size; ++x)
    for (Index y = 0; y < b->size; ++y)
      if (coin(rng)) pairs.emplace_back(x, y);
  return FiniteRelation(a, b, pairs);
}

// union of two graphs: 0 ↦ {0,1}, 1 ↦ {1,0}
FiniteRelation doubled() {
  auto m = make_set("M", 2);
  return FiniteRelation(m, m, {{0, 0}, {0, 1}, {1, 1}, {1, 0}});
}

}  // namespace

TEST_CASE("geometric_compose laws") {
  std::mt19937 rng(7);
  auto a = make_set("A", 4), b = make_set("B", 5), c = make_set("C", 3), d = make_set("D", 4);
  for (int trial = 0; trial < 50; ++trial) {
    auto l1 = random_relation(rng, a, b, 0.3);
    auto l2 = random_relation(rng, b, c, 0.3);
    auto l3 = random_relation(rng, c, d, 0.3);
    CHECK(geometric_compose(geometric_compose(l1, l2), l3) ==
          geometric_compose(l1, geometric_compose(l2, l3)));
    CHECK(geometric_compose(l1, FiniteRelation::diagonal(b)) == l1);
    CHECK(geometric_compose(FiniteRelation::diagonal(a), l1) == l1);
    CHECK(geometric_compose(l1, l2).transpose() == geometric_compose(l2.transpose(), l1.transpose()));
    auto check = is_embedded(l1, l2);
    if (check.embedded) CHECK(geometric_compose(l1, l2).size() == check.triples);
    else CHECK(geometric_compose(l1, l2).size() < check.triples);
    CHECK(is_embedded(l1, FiniteRelation::diagonal(b)).embedded);
  }
  CHECK_THROWS_AS(geometric_compose(FiniteRelation::diagonal(a), FiniteRelation::diagonal(b)), Error);
}

TEST_CASE("two attachments compose to the two-circle relation") {
  RepContext ctx(symmetric_group(3));
  auto first = ctx.attach2(autos::identity(2));
  auto second = ctx.attach2(autos::identity(1));
  auto comp = geometric_compose(first, second);
  auto m2 = ctx.variety(2);
  std::vector<IndexPair> expected;
  for (Index i = 0; i < m2->size(); ++i)
    if (m2->point(i)[0] == 0 && m2->point(i)[2] == 0) expected.emplace_back(i, 0);
  CHECK(comp == FiniteRelation(m2->set(), ctx.variety(0)->set(), expected));
  // pairs (b₁,b₂) up to conjugation, as for the free group of rank 2
  CHECK(comp.size() == 11);
}

TEST_CASE("is_embedded examples") {
  RepContext ctx(symmetric_group(3));
  auto a1 = ctx.attach2(autos::identity(1)).transpose();
  auto b1 = ctx.attach2(autos::s_move(1, 1));
  CHECK(is_embedded(a1, b1).embedded);

  auto l = doubled();
  auto check = is_embedded(l, l.transpose());
  CHECK(!check.embedded);
  REQUIRE(check.witness);
  const auto& w = *check.witness;
  CHECK(w.y != w.y_other);
  CHECK(l.contains(w.x, w.y));
  CHECK(l.contains(w.x, w.y_other));
  CHECK(l.contains(w.z, w.y));
  CHECK(l.contains(w.z, w.y_other));
}

TEST_CASE("relation chains") {
  auto m = make_set("M", 3);
  auto n = make_set("N", 2);
  auto l = FiniteRelation(m, n, {{0, 0}, {1, 1}, {2, 1}});
  auto chain = RelationChain::from_steps({l, FiniteRelation::diagonal(n)});
  CHECK(chain.source == m);

  auto self = chain_equivalent(chain, chain, 3);
  REQUIRE(self);
  CHECK(self->empty());

  auto single = RelationChain::from_steps({l});
  auto path = chain_equivalent(chain, single, 3);
  REQUIRE(path);
  CHECK(path->size() == 1);
  CHECK(path->front().kind == ChainMoveKind::Compose);

  FactorizationRegistry reg;
  auto back = chain_equivalent(single, chain, 3, &reg);
  REQUIRE(back);
  REQUIRE(back->size() == 1);
  CHECK(back->front().kind == ChainMoveKind::Factor);
  CHECK(apply_chain_move(single, back->front(), reg) == chain);

  // non-embedded pairs never compose
  auto d = doubled();
  auto stuck = RelationChain::from_steps({d, d.transpose()});
  auto full = RelationChain::from_steps({FiniteRelation::full(d.source(), d.source())});
  CHECK(!chain_equivalent(stuck, full, 4));
  CHECK_THROWS_AS(apply_chain_move(stuck, {ChainMoveKind::Compose, 0}, reg), Error);

  CHECK_THROWS_AS(chain_equivalent(chain, RelationChain::identity(m), 2), Error);
  CHECK_THROWS_AS(RelationChain::from_steps({l, l}), Error);
}

TEST_CASE("Cerf-related chains have connected relation images") {
  RepContext ctx(symmetric_group(3));
  // (Cyl φ, Attach2 ψ) against Attach2(ψ after φ⁻¹)
  auto phi = autos::twist_a(2, 1);
  auto psi = autos::s_move(2, 2);
  auto lhs = RelationChain::from_steps({ctx.cyl(phi), ctx.attach2(psi), ctx.attach2(autos::identity(1))});
  auto rhs = RelationChain::from_steps(
      {ctx.attach2(automorphism_compose(psi, phi.inverse())), ctx.attach2(autos::identity(1))});
  auto path = chain_equivalent(lhs, rhs, 3);
  REQUIRE(path);
  FactorizationRegistry reg;
  chain_equivalent(lhs, rhs, 3, &reg);
  auto walk = lhs;
  for (const auto& mv : *path) {
    if (mv.kind == ChainMoveKind::Compose)
      CHECK(is_embedded(walk.steps[mv.position], walk.steps[mv.position + 1]).embedded);
    walk = apply_chain_move(walk, mv, reg);
  }
  CHECK(walk == rhs);
}

TEST_CASE("generator sets") {
  auto m = make_set("M", 5);
  auto diag = FiniteRelation::diagonal(m);
  auto gs = generator_set(CyclicChain{{diag, diag, diag}});
  CHECK(gs.size() == 5);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    auto t = gs.tuple(i);
    CHECK(t[0] == i);
    CHECK(t[1] == i);
    CHECK(t[2] == i);
  }
  CHECK(generator_set(CyclicChain::identity(m)).size() == 5);

  std::mt19937 rng(11);
  auto a = make_set("A", 4), b = make_set("B", 3), c = make_set("C", 5);
  for (int trial = 0; trial < 20; ++trial) {
    CyclicChain cyc{{random_relation(rng, a, b, 0.5), random_relation(rng, b, c, 0.5),
                     random_relation(rng, c, a, 0.5)}};
    auto before = generator_set(cyc);
    for (std::size_t i = 0; i < before.size(); ++i) {
      auto t = before.tuple(i);
      for (std::size_t k = 0; k < 3; ++k) CHECK(cyc.rels[k].contains(t[k], t[(k + 1) % 3]));
    }
    for (std::size_t k = 0; k < 3; ++k) {
      auto rotated = generator_set(cyc.rotate(k));
      auto map = rotation_bijection(before, rotated, k);
      std::vector<bool> seen(map.size(), false);
      for (auto j : map) seen[j] = true;
      CHECK(std::find(seen.begin(), seen.end(), false) == seen.end());
    }
    RunConfig four;
    four.workers = 4;
    CHECK(generator_set(cyc, four).flat == before.flat);
  }

  RunConfig tiny;
  tiny.budget = 2;
  CHECK_THROWS_AS(generator_set(CyclicChain{{diag, FiniteRelation::full(m, m)}}, tiny), Error);
  CHECK_THROWS_AS(generator_set(CyclicChain{{FiniteRelation::full(a, b)}}), Error);
}

TEST_CASE("composition bijections") {
  auto m = make_set("M", 4);
  auto n = make_set("N", 3);
  auto l = FiniteRelation(m, n, {{0, 0}, {1, 0}, {2, 2}, {3, 1}});
  CyclicChain cyc{{l, FiniteRelation::diagonal(n), l.transpose()}};
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(i);
    if (!is_embedded(cyc.rels[i], cyc.rels[(i + 1) % 3]).embedded) continue;
    auto bij = composition_bijection(cyc, i);
    CHECK(bij.forward.size() == bij.before.size());
    CHECK(bij.after.size() == bij.before.size());
    CHECK(bij.contracted.length() == 2);
  }
  auto diag_contract = composition_bijection(cyc, 1);
  CHECK(diag_contract.dropped_node == 2);

  RepContext ctx(symmetric_group(3));
  auto a1 = ctx.attach2(autos::identity(1)).transpose();
  auto b1 = ctx.attach2(autos::s_move(1, 1));
  auto cap0 = ctx.simple(SimpleCobordism::cap0());
  auto cap3 = ctx.simple(SimpleCobordism::cap3());
  CyclicChain s3{{cap0, a1, b1, cap3}};
  CHECK(generator_set(s3).size() == 1);
  auto bij = composition_bijection(s3, 1);
  CHECK(bij.before.size() == 1);
  CHECK(bij.after.size() == 1);

  auto d = doubled();
  try {
    composition_bijection(CyclicChain{{d, d.transpose()}}, 0);
    FAIL("expected NotEmbedded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotEmbedded);
    CHECK(e.witness().contains("y_other"));
  }
}
