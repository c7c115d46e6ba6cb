#include "floerkit/fieldfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "floerkit/error.hpp"
#include "floerkit/parallel.hpp"

namespace floerkit {

using nlohmann::json;

json Certificate::to_json() const {
  json j{{"check", check}, {"instance", instance}, {"status", pass ? "pass" : "fail"}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

bool CertificateReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Certificate& c) { return c.pass; });
}

std::size_t CertificateReport::failures() const {
  return std::size_t(std::count_if(entries.begin(), entries.end(), [](const Certificate& c) { return !c.pass; }));
}

json CertificateReport::to_json() const {
  json arr = json::array();
  for (const auto& c : entries) arr.push_back(c.to_json());
  return arr;
}

PartialFunctorSpec::PartialFunctorSpec(FiniteGroup g, RunConfig cfg)
    : ctx_(std::make_unique<RepContext>(std::move(g), std::move(cfg))) {}

void PartialFunctorSpec::record(const std::vector<Certificate>& certs) {
  std::lock_guard lock(mu_);
  registry_.insert(registry_.end(), certs.begin(), certs.end());
}

std::vector<Certificate> PartialFunctorSpec::certificates() const {
  std::lock_guard lock(mu_);
  return registry_;
}

FunctorValue functor_eval(PartialFunctorSpec& spec, const CobordismChain& c) {
  c.validate();
  FunctorValue v;
  v.source = spec.object(c.source);
  v.target = spec.object(c.target);
  v.chain = RelationChain{v.source, v.target, {}};
  for (const auto& s : c.steps) v.chain.steps.push_back(spec.morphism(s));
  v.chain.validate();
  FiniteRelation acc = FiniteRelation::diagonal(v.source);
  bool embedded = true;
  for (const auto& r : v.chain.steps) {
    if (!is_embedded(acc, r).embedded) {
      embedded = false;
      break;
    }
    acc = geometric_compose(acc, r);
  }
  if (embedded) v.composed = std::move(acc);
  return v;
}

namespace {

json pair_json(IndexPair p) { return json::array({p.first, p.second}); }

Certificate equality_check(std::string check, std::string instance, const FiniteRelation& lhs,
                           const FiniteRelation& rhs) {
  Certificate c{std::move(check), std::move(instance), false, nullptr};
  if (!same_set(lhs.source(), rhs.source()) || !same_set(lhs.target(), rhs.target())) {
    c.witness = {{"reason", "endpoint mismatch"},
                 {"lhs", lhs.source()->name + "->" + lhs.target()->name},
                 {"rhs", rhs.source()->name + "->" + rhs.target()->name}};
    return c;
  }
  if (lhs == rhs) {
    c.pass = true;
    c.witness = {{"pairs", lhs.size()}};
    return c;
  }
  std::vector<IndexPair> only_l, only_r;
  std::set_difference(lhs.pairs().begin(), lhs.pairs().end(), rhs.pairs().begin(), rhs.pairs().end(),
                      std::back_inserter(only_l));
  std::set_difference(rhs.pairs().begin(), rhs.pairs().end(), lhs.pairs().begin(), lhs.pairs().end(),
                      std::back_inserter(only_r));
  c.witness = {{"lhs_pairs", lhs.size()}, {"rhs_pairs", rhs.size()}};
  if (!only_l.empty()) c.witness["only_lhs"] = pair_json(only_l.front());
  if (!only_r.empty()) c.witness["only_rhs"] = pair_json(only_r.front());
  return c;
}

Certificate embedding_check(std::string check, std::string instance, const FiniteRelation& l12,
                            const FiniteRelation& l23) {
  auto e = is_embedded(l12, l23);
  Certificate c{std::move(check), std::move(instance), e.embedded, nullptr};
  if (e.embedded)
    c.witness = {{"triples", e.triples}};
  else
    c.witness = {{"triples", e.triples},
                 {"x", e.witness->x},
                 {"y", e.witness->y},
                 {"y_other", e.witness->y_other},
                 {"z", e.witness->z}};
  return c;
}

std::string instance_name(int genus, const std::string& a, const std::string& b) {
  return "genus=" + std::to_string(genus) + " " + a + " " + b;
}

}  // namespace

CertificateReport verify_cerf_compatibility(PartialFunctorSpec& spec, int genus) {
  if (genus < 1) raise(ErrorKind::GenusMismatch, "Cerf compatibility needs genus >= 1");
  RepContext& ctx = spec.context();
  const auto lib = autos::library(genus);
  const auto lower = autos::identity(genus - 1);
  std::vector<std::function<std::vector<Certificate>()>> jobs;

  for (const auto& phi : lib)
    for (const auto& psi : lib)
      jobs.push_back([&, phi, psi] {
        auto inst = instance_name(genus, "phi=" + phi.name(), "psi=" + psi.name());
        auto lhs = geometric_compose(ctx.cyl(phi).transpose(), ctx.attach2(psi));
        auto rhs = ctx.attach2(automorphism_compose(psi, phi));
        return std::vector<Certificate>{equality_check("step4.equivariance", inst, lhs, rhs)};
      });

  if (genus >= 2)
    for (const auto& psi : lib)
      for (const auto& eps : disjoint_transports(genus))
        jobs.push_back([&, psi, eps] {
          auto inst = instance_name(genus, "psi=" + psi.name(), "eps=" + eps.name());
          auto a = ctx.attach2(psi);
          auto b = ctx.attach2(automorphism_compose(eps, psi));
          auto b1 = ctx.attach2(lower);  // β' = π_α(β)
          auto a1 = ctx.attach2(lower);  // α' = π_β(α), φ'' = id
          std::vector<Certificate> out;
          out.push_back(equality_check("step5.identity1", inst, geometric_compose(a, b1),
                                       geometric_compose(b, a1)));
          out.push_back(equality_check("step5.identity2", inst, geometric_compose(a.transpose(), b),
                                       geometric_compose(b1, a1.transpose())));
          out.push_back(embedding_check("step5.embedded.alphaT_beta", inst, a.transpose(), b));
          out.push_back(embedding_check("step5.embedded.betap_alphapT", inst, b1, a1.transpose()));
          out.push_back(embedding_check("step5.embedded.alpha_betap", inst, a, b1));
          out.push_back(embedding_check("step5.embedded.beta_alphap", inst, b, a1));
          return out;
        });

  for (const auto& psi : lib)
    for (const auto& eps : crossing_transports(genus))
      jobs.push_back([&, psi, eps] {
        auto inst = instance_name(genus, "psi=" + psi.name(), "eps=" + eps.name());
        auto a = ctx.attach2(psi);
        auto b = ctx.attach2(automorphism_compose(eps, psi));
        std::vector<Certificate> out;
        out.push_back(equality_check("step6.identity", inst, geometric_compose(a.transpose(), b),
                                     ctx.cyl(lower)));
        out.push_back(embedding_check("step6.embedded", inst, a.transpose(), b));
        return out;
      });

  auto results = parallel_map(jobs.size(), spec.config().workers, [&](std::size_t i) { return jobs[i](); });
  CertificateReport report;
  for (auto& r : results) report.entries.insert(report.entries.end(), r.begin(), r.end());
  spec.record(report.entries);
  return report;
}

ClosedInvariant closed_invariant(PartialFunctorSpec& spec, const CobordismChain& c) {
  if (!c.source.is_empty || !c.target.is_empty)
    raise(ErrorKind::BoundaryMismatch, "closed invariant needs a chain from empty to empty",
          {{"source", c.source.to_string()}, {"target", c.target.to_string()}});
  auto v = functor_eval(spec, c);
  return ClosedInvariant{generator_set(CyclicChain::from_closed(v.chain), spec.config())};
}

Presentation Presentation::surface(int genus) {
  Presentation p{"pi1(S" + std::to_string(genus) + ")", 2 * genus, {}};
  std::vector<int> rel;
  for (int i = 1; i <= genus; ++i) {
    const int x = 2 * i - 1, y = 2 * i;
    rel.insert(rel.end(), {x, y, -x, -y});
  }
  if (genus > 0) p.relators.push_back(rel);
  return p;
}

void Presentation::validate() const {
  if (generators < 0) raise(ErrorKind::ParseError, "negative generator count");
  for (const auto& r : relators)
    for (int l : r)
      if (l == 0 || std::abs(l) > generators)
        raise(ErrorKind::ParseError, "relator letter " + std::to_string(l) + " out of range");
}

std::uint64_t presentation_oracle(const FiniteGroup& g, const Presentation& p, const RunConfig& cfg) {
  p.validate();
  const std::size_t n = g.order();
  const int k = p.generators;
  std::size_t letters = std::size_t(k);
  for (const auto& r : p.relators) letters += r.size();
  const double estimate = std::pow(double(n), k) * double(std::max<std::size_t>(1, letters));
  if (estimate > double(cfg.budget))
    raise(ErrorKind::ResourceLimit, "presentation enumeration exceeds budget",
          {{"estimate", estimate}, {"budget", cfg.budget}});
  if (k == 0) return 1;

  // commuting[x] as a bitset over G
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> commuting(n * words, 0);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (g.mul(x, y) == g.mul(y, x)) commuting[x * words + y / 64] |= std::uint64_t(1) << (y % 64);

  // Burnside: Σ over solutions of |centralizer| equals |G| · #orbits
  auto partial = parallel_map(n, cfg.workers, [&](std::size_t first) {
    std::uint64_t sum = 0;
    std::vector<Element> x(std::size_t(k), 0);
    x[0] = Element(first);
    std::vector<std::uint64_t> cent(words);
    while (true) {
      bool ok = true;
      for (const auto& r : p.relators) {
        Element acc = 0;
        for (int l : r) {
          Element v = x[std::size_t(std::abs(l) - 1)];
          acc = g.mul(acc, l > 0 ? v : g.inv(v));
        }
        if (acc != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::fill(cent.begin(), cent.end(), ~std::uint64_t(0));
        for (Element v : x)
          for (std::size_t w = 0; w < words; ++w) cent[w] &= commuting[v * words + w];
        if (n % 64) cent[words - 1] &= (std::uint64_t(1) << (n % 64)) - 1;
        for (auto w : cent) sum += std::uint64_t(__builtin_popcountll(w));
      }
      int pos = k - 1;
      while (pos >= 1 && x[std::size_t(pos)] + 1u == n) x[std::size_t(pos--)] = 0;
      if (pos < 1) break;
      ++x[std::size_t(pos)];
    }
    return sum;
  });
  const std::uint64_t total = std::accumulate(partial.begin(), partial.end(), std::uint64_t(0));
  if (total % n != 0) raise(ErrorKind::ResourceLimit, "Burnside sum not divisible by group order");
  return total / n;
}

CobordismChain heegaard_chain(const std::vector<SurfaceAutomorphism>& alpha,
                              const std::vector<SurfaceAutomorphism>& beta) {
  std::vector<SimpleCobordism> steps{SimpleCobordism::cap0()};
  for (const auto& a : alpha) steps.push_back(SimpleCobordism::attach1(a));
  for (const auto& b : beta) steps.push_back(SimpleCobordism::attach2(b));
  steps.push_back(SimpleCobordism::cap3());
  return CobordismChain::from_steps(std::move(steps));
}

ClosedFixture s3_fixture() {
  return {"S3", heegaard_chain({autos::identity(1)}, {autos::s_move(1, 1)}), Presentation::trivial()};
}

ClosedFixture s3_fixture_moved() {
  auto s = autos::s_move(1, 1);
  return {"S3'", heegaard_chain({s}, {automorphism_compose(s, s)}), Presentation::trivial()};
}

ClosedFixture s1s2_fixture() {
  return {"S1xS2", heegaard_chain({autos::identity(1)}, {autos::identity(1)}), Presentation::free(1)};
}

ClosedFixture lens_fixture(int p, int q) {
  return {"L(" + std::to_string(p) + "," + std::to_string(q) + ")",
          heegaard_chain({autos::identity(1)}, {autos::lens_transport(p, q)}), Presentation::cyclic(p)};
}

ClosedFixture connected_sum_fixture() {
  return {"#2(S1xS2)",
          heegaard_chain({autos::identity(1), autos::identity(2)}, {autos::identity(2), autos::identity(1)}),
          Presentation::free(2)};
}

ClosedFixture connected_sum_swapped_fixture() {
  return {"#2(S1xS2)'",
          heegaard_chain({autos::identity(1), autos::identity(2)},
                         {autos::handle_swap(2, 1), autos::identity(1)}),
          Presentation::free(2)};
}

ClosedFixture s3_genus2_fixture() {
  return {"S3(genus 2)",
          heegaard_chain({autos::identity(1), autos::identity(2)}, {autos::s_move(2, 1), autos::s_move(1, 1)}),
          Presentation::trivial()};
}

std::vector<ClosedFixture> closed_fixtures() {
  std::vector<ClosedFixture> out{s3_fixture(), s3_fixture_moved(), s1s2_fixture()};
  for (int p = 2; p <= 6; ++p)
    for (int q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) out.push_back(lens_fixture(p, q));
  out.push_back(connected_sum_fixture());
  out.push_back(connected_sum_swapped_fixture());
  out.push_back(s3_genus2_fixture());
  return out;
}

namespace {

std::pair<std::size_t, std::size_t> move_window(const CerfMove& m) {
  switch (m.kind) {
    case MoveKind::CylMerge:
    case MoveKind::CritCancel: return {2, 1};
    case MoveKind::CylSplit:
    case MoveKind::CritCreate: return {1, 2};
    case MoveKind::CylAbsorbPre:
    case MoveKind::CylAbsorbPost: return m.variant == 0 ? std::pair{2, 1} : std::pair{1, 2};
    case MoveKind::CritSwitch: return {2, 2};
  }
  return {1, 1};
}

struct Contraction {
  CyclicChain chain;
  std::vector<std::size_t> map;  // original generator index → contracted index
  std::size_t original_size;
};

Contraction contract_window(const CyclicChain& c, std::size_t position, std::size_t width,
                            const RunConfig& cfg) {
  Contraction out{c, {}, 0};
  auto gs = generator_set(c, cfg);
  out.original_size = gs.size();
  out.map.resize(gs.size());
  std::iota(out.map.begin(), out.map.end(), std::size_t(0));
  for (std::size_t k = 1; k < width; ++k) {
    auto bij = composition_bijection(out.chain, position, cfg);
    for (auto& m : out.map) m = bij.forward[m];
    out.chain = bij.contracted;
  }
  return out;
}

}  // namespace

MoveCertificate certify_move(PartialFunctorSpec& spec, const CobordismChain& before, const CerfMove& move) {
  MoveCertificate cert{move, false, nullptr, {}};
  try {
    auto after = cerf_apply(before, move);
    auto vb = functor_eval(spec, before);
    auto va = functor_eval(spec, after);
    auto [removed, inserted] = move_window(move);
    auto cb = contract_window(CyclicChain::from_closed(vb.chain), move.position, removed, spec.config());
    auto ca = contract_window(CyclicChain::from_closed(va.chain), move.position, inserted, spec.config());
    if (!(cb.chain == ca.chain)) {
      std::size_t at = 0;
      while (at < cb.chain.length() && at < ca.chain.length() && cb.chain.rels[at] == ca.chain.rels[at]) ++at;
      cert.witness = {{"reason", "contracted chains differ"}, {"position", at},
                      {"before_generators", cb.original_size}, {"after_generators", ca.original_size}};
      return cert;
    }
    if (cb.original_size != ca.original_size) {
      cert.witness = {{"reason", "generator counts differ"},
                      {"before_generators", cb.original_size},
                      {"after_generators", ca.original_size}};
      return cert;
    }
    std::vector<std::size_t> inv(ca.map.size());
    for (std::size_t i = 0; i < ca.map.size(); ++i) inv[ca.map[i]] = i;
    cert.bijection.resize(cb.map.size());
    for (std::size_t i = 0; i < cb.map.size(); ++i) cert.bijection[i] = inv[cb.map[i]];
    cert.pass = true;
    cert.witness = {{"generators", cb.original_size}};
  } catch (const Error& e) {
    cert.witness = e.to_json();
  }
  return cert;
}

}  // namespace floerkit
