#include <doctest.h>

#include <map>

#include "floerkit/error.hpp"
#include "floerkit/fieldfun.hpp"

using namespace floerkit;

namespace {

using SC = SimpleCobordism;

std::vector<int> word(std::initializer_list<int> l) { return l; }

}  // namespace

TEST_CASE("functor_eval examples") {
  PartialFunctorSpec z2(cyclic_group(2));
  auto id = functor_eval(z2, CobordismChain::identity(BordObject::surface(2)));
  CHECK(id.chain.steps.empty());
  CHECK(id.source == z2.object(BordObject::surface(2)));
  REQUIRE(id.composed);
  CHECK(*id.composed == FiniteRelation::diagonal(id.source));

  auto handlebody = functor_eval(z2, CobordismChain::from_steps({SC::attach2(autos::identity(1)), SC::cap3()}));
  REQUIRE(handlebody.chain.steps.size() == 2);
  CHECK(handlebody.chain.steps[0].size() == 2);
  CHECK(handlebody.chain.steps[1].size() == 1);
  CHECK(handlebody.target->size == 1);

  auto phi = autos::twist_b(1, 1);
  auto cyl = functor_eval(z2, CobordismChain::from_steps({SC::cyl(phi)}));
  CHECK(cyl.chain.steps[0].is_bijection_graph());
  CHECK(cyl.chain.steps[0] == z2.context().cyl(phi));
}

TEST_CASE("functor_eval is functorial and preserves adjoints") {
  PartialFunctorSpec s3(symmetric_group(3));
  auto c1 = CobordismChain::from_steps({SC::cyl(autos::twist_a(2, 2)), SC::attach2(autos::s_move(2, 1))});
  auto c2 = CobordismChain::from_steps({SC::attach2(autos::identity(1)), SC::cap3()});
  auto whole = functor_eval(s3, chain_compose(c1, c2));
  CHECK(whole.chain == chain_concat(functor_eval(s3, c1).chain, functor_eval(s3, c2).chain));
  CHECK(functor_eval(s3, chain_adjoint(chain_compose(c1, c2))).chain == whole.chain.transpose());
  for (const auto& fx : closed_fixtures())
    CHECK(functor_eval(s3, chain_adjoint(fx.chain)).chain == functor_eval(s3, fx.chain).chain.transpose());
}

TEST_CASE("Cerf compatibility over abelian groups") {
  for (const char* name : {"Z2", "Z3", "Z4"}) {
    PartialFunctorSpec spec(builtin_group(name));
    for (int genus : {1, 2}) {
      auto report = verify_cerf_compatibility(spec, genus);
      CAPTURE(name);
      CAPTURE(genus);
      CHECK(report.all_pass());
      CHECK(!report.entries.empty());
    }
  }
}

TEST_CASE("Cerf compatibility over S3") {
  PartialFunctorSpec spec(symmetric_group(3));
  auto g1 = verify_cerf_compatibility(spec, 1);
  CHECK(g1.all_pass());
  std::size_t crossing = 0;
  for (const auto& e : g1.entries)
    if (e.check == "step6.identity") {
      ++crossing;
      CHECK(e.pass);
    }
  CHECK(crossing == 8);

  // the disjoint-pair identities hold; the intermediate on Σ₂ is not determined
  // by the two genus-1 classes, so L_αᵀ∘L_β is not embedded
  auto g2 = verify_cerf_compatibility(spec, 2);
  for (const auto& e : g2.entries) {
    CAPTURE(e.check);
    CAPTURE(e.instance);
    if (e.check == "step5.embedded.alphaT_beta") {
      CHECK(!e.pass);
      CHECK(e.witness["y"] != e.witness["y_other"]);
    } else {
      CHECK(e.pass);
    }
  }
  CHECK(g2.failures() == 16);
  CHECK(spec.certificates().size() == g1.entries.size() + g2.entries.size());
}

TEST_CASE("presentation_oracle examples") {
  auto s3 = symmetric_group(3);
  CHECK(presentation_oracle(s3, Presentation::trivial()) == 1);
  CHECK(presentation_oracle(s3, Presentation::cyclic(2)) == 2);
  CHECK(presentation_oracle(s3, Presentation::surface(1)) == 8);
  CHECK(presentation_oracle(s3, {"<x,y|y^2>", 2, {word({2, 2})}}) == 7);
  CHECK(presentation_oracle(quaternion_group(), {"<x,y|y^2>", 2, {word({2, 2})}}) == 10);
  CHECK_THROWS_AS(presentation_oracle(s3, {"bad", 1, {word({2})}}), Error);
  RunConfig tiny;
  tiny.budget = 10;
  CHECK_THROWS_AS(presentation_oracle(s3, Presentation::surface(2), tiny), Error);
}

TEST_CASE("closed invariants match frozen oracle values") {
  // frozen from tests/oracles/compute_expected.py
  const std::map<std::string, std::vector<std::uint64_t>> lens = {
      {"Z2", {2, 1, 2, 1, 2}}, {"Z3", {1, 3, 1, 1, 3}}, {"Z4", {2, 1, 4, 1, 2}},
      {"S3", {2, 2, 2, 1, 3}}, {"Q8", {2, 1, 5, 1, 2}}};
  const std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> sums = {
      {"Z2", {2, 4}}, {"Z3", {3, 9}}, {"Z4", {4, 16}}, {"S3", {3, 11}}, {"Q8", {5, 28}}};
  for (const auto& [name, counts] : lens) {
    PartialFunctorSpec spec(builtin_group(name));
    CAPTURE(name);
    CHECK(closed_invariant(spec, s3_fixture().chain).count() == 1);
    CHECK(closed_invariant(spec, s3_fixture_moved().chain).count() == 1);
    CHECK(closed_invariant(spec, s3_genus2_fixture().chain).count() == 1);
    CHECK(closed_invariant(spec, s1s2_fixture().chain).count() == sums.at(name).first);
    CHECK(closed_invariant(spec, connected_sum_fixture().chain).count() == sums.at(name).second);
    for (int p = 2; p <= 6; ++p) CHECK(closed_invariant(spec, lens_fixture(p, 1).chain).count() == counts[std::size_t(p - 2)]);
    for (const auto& fx : closed_fixtures()) {
      CAPTURE(fx.name);
      CHECK(closed_invariant(spec, fx.chain).count() == presentation_oracle(spec.group(), fx.presentation));
    }
  }
  PartialFunctorSpec z2(cyclic_group(2));
  CHECK_THROWS_AS(closed_invariant(z2, CobordismChain::from_steps({SC::cap3()})), Error);
  CHECK(closed_invariant(z2, CobordismChain::identity(BordObject::empty())).count() == 1);
}

TEST_CASE("Cerf moves preserve generator sets over Z/2") {
  PartialFunctorSpec spec(cyclic_group(2));
  for (const auto& fx : closed_fixtures())
    for (const auto& n : cerf_neighbors(fx.chain)) {
      auto cert = certify_move(spec, fx.chain, n.move);
      CAPTURE(fx.name);
      CAPTURE(n.move.describe());
      CHECK(cert.pass);
      auto before = closed_invariant(spec, fx.chain);
      auto after = closed_invariant(spec, n.chain);
      REQUIRE(cert.bijection.size() == before.count());
      std::vector<bool> hit(after.count(), false);
      for (auto j : cert.bijection) hit[j] = true;
      CHECK(std::find(hit.begin(), hit.end(), false) == hit.end());
    }
}

TEST_CASE("disjoint critical-point switch is not embedded over S3") {
  PartialFunctorSpec spec(symmetric_group(3));
  auto fx = connected_sum_swapped_fixture();
  CerfMove v3{MoveKind::CritSwitch, 2, 3, {}};
  auto after = cerf_apply(fx.chain, v3);
  CHECK(closed_invariant(spec, fx.chain).count() == 11);
  CHECK(closed_invariant(spec, after).count() == 9);
  auto cert = certify_move(spec, fx.chain, v3);
  CHECK(!cert.pass);
  CHECK(cert.witness["error"] == "NotEmbedded");
}
