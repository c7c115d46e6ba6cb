#include <doctest.h>

#include "floerkit/bordism.hpp"
#include "floerkit/error.hpp"
#include "floerkit/relcat.hpp"
#include "floerkit/repvar.hpp"

using namespace floerkit;

namespace {

using SC = SimpleCobordism;

FiniteRelation composite(RepContext& ctx, const CobordismChain& c) {
  FiniteRelation r = FiniteRelation::diagonal(ctx.variety(c.source)->set());
  for (const auto& s : c.steps) r = geometric_compose(r, ctx.simple(s));
  return r;
}

CobordismChain s3_heegaard() {
  return CobordismChain::from_steps({SC::cap0(), SC::attach1(autos::identity(1)),
                                     SC::attach2(autos::s_move(1, 1)), SC::cap3()});
}

CobordismChain s3_heegaard_moved() {
  auto s = autos::s_move(1, 1);
  return CobordismChain::from_steps({SC::cap0(), SC::attach1(s),
                                     SC::attach2(automorphism_compose(s, s)), SC::cap3()});
}

}  // namespace

TEST_CASE("chain_compose and adjoint") {
  auto phi = autos::twist_a(1, 1);
  auto c = chain_compose(CobordismChain::from_steps({SC::cyl(phi)}),
                         CobordismChain::from_steps({SC::cyl(phi.inverse())}));
  CHECK(c.steps.size() == 2);
  CHECK(c.source == BordObject::surface(1));

  auto handlebody = chain_compose(CobordismChain::from_steps({SC::attach2(autos::identity(1))}),
                                  CobordismChain::from_steps({SC::cap3()}));
  CHECK(handlebody.source == BordObject::surface(1));
  CHECK(handlebody.target == BordObject::empty());

  CHECK_THROWS_AS(chain_compose(handlebody, handlebody), Error);
  auto id = CobordismChain::identity(BordObject::surface(2));
  CHECK(chain_compose(id, id).steps.empty());

  auto adj = chain_adjoint(handlebody);
  CHECK(adj.source == BordObject::empty());
  CHECK(adj.target == BordObject::surface(1));
  CHECK(adj.steps[0].kind == StepKind::Cap0);
  CHECK(adj.steps[1].kind == StepKind::Attach1);
  CHECK(chain_adjoint(adj).equivalent(handlebody));
  auto s3 = s3_heegaard();
  CHECK(chain_adjoint(chain_adjoint(s3)).equivalent(s3));
}

TEST_CASE("chain validation reports mismatched boundaries") {
  try {
    CobordismChain::from_steps({SC::cap3(), SC::cap3()});
    FAIL("expected BoundaryMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundaryMismatch);
  }
  CHECK_THROWS_AS(CobordismChain::from_steps({SC::cyl(autos::identity(1)), SC::cap3()}), Error);
}

TEST_CASE("cerf_apply examples") {
  auto id1 = autos::identity(1);
  auto merged =
      cerf_apply(CobordismChain::from_steps({SC::cyl(id1), SC::cyl(id1)}), {MoveKind::CylMerge, 0});
  REQUIRE(merged.steps.size() == 1);
  CHECK(merged.steps[0].equivalent(SC::cyl(id1)));

  auto cancelled = cerf_apply(
      CobordismChain::from_steps({SC::attach1(id1), SC::attach2(autos::s_move(1, 1))}),
      {MoveKind::CritCancel, 0});
  REQUIRE(cancelled.steps.size() == 1);
  CHECK(cancelled.steps[0].kind == StepKind::Cyl);
  CHECK(cancelled.source == BordObject::surface(0));

  CHECK_THROWS_AS(
      cerf_apply(CobordismChain::from_steps({SC::attach1(id1), SC::attach2(id1)}),
                 {MoveKind::CritCancel, 0}),
      Error);
}

TEST_CASE("critical points switch with equal relations") {
  auto before = CobordismChain::from_steps(
      {SC::attach2(autos::identity(2)), SC::attach2(autos::identity(1))});
  CerfMove m{MoveKind::CritSwitch, 0, 1, {disjoint_transports(2).at(0)}};
  auto after = cerf_apply(before, m);
  CHECK(!after.equivalent(before));
  RepContext ctx(symmetric_group(3));
  CHECK(composite(ctx, before) == composite(ctx, after));

  auto found = cerf_connected(before, after, 2);
  REQUIRE(found);
  CHECK(found->size() == 1);
}

TEST_CASE("cerf_neighbors") {
  CHECK(cerf_neighbors(CobordismChain::identity(BordObject::surface(1))).empty());
  auto c = CobordismChain::from_steps({SC::cyl(autos::twist_a(1, 1)), SC::cyl(autos::s_move(1, 1))});
  bool merge = false;
  for (const auto& n : cerf_neighbors(c))
    merge |= n.move.kind == MoveKind::CylMerge && n.move.position == 0;
  CHECK(merge);
}

TEST_CASE("every neighbor induces the same relation over an abelian group") {
  RepContext ctx(cyclic_group(2));
  std::vector<CobordismChain> fixtures = {
      s3_heegaard(),
      CobordismChain::from_steps({SC::attach2(autos::identity(2)), SC::attach2(autos::identity(1))}),
      CobordismChain::from_steps({SC::cyl(autos::twist_b(1, 1)), SC::attach2(autos::s_move(1, 1))}),
      CobordismChain::from_steps({SC::attach1(autos::identity(2)), SC::attach2(autos::handle_swap(2, 1))}),
  };
  for (const auto& c : fixtures) {
    auto expected = composite(ctx, c);
    auto neighbors = cerf_neighbors(c);
    CHECK(!neighbors.empty());
    for (const auto& n : neighbors) {
      CAPTURE(n.move.describe());
      CHECK(composite(ctx, n.chain) == expected);
      CHECK(cerf_apply(c, n.move).equivalent(n.chain));
    }
  }
}

TEST_CASE("cerf_connected") {
  auto s3 = s3_heegaard();
  auto self = cerf_connected(s3, s3, 4);
  REQUIRE(self);
  CHECK(self->empty());

  auto phi = autos::twist_a(1, 1);
  auto pair = CobordismChain::from_steps({SC::cyl(phi), SC::cyl(phi.inverse())});
  auto single = CobordismChain::from_steps({SC::cyl(autos::identity(1))});
  auto merge = cerf_connected(pair, single, 4);
  REQUIRE(merge);
  REQUIRE(merge->size() == 1);
  CHECK(merge->front().kind == MoveKind::CylMerge);

  auto path = cerf_connected(s3, s3_heegaard_moved(), 4);
  REQUIRE(path);
  CHECK(path->size() <= 4);
  auto walk = s3;
  for (const auto& m : *path) walk = cerf_apply(walk, m);
  CHECK(walk.equivalent(s3_heegaard_moved()));

  CHECK_THROWS_AS(cerf_connected(s3, pair, 4), Error);
}
