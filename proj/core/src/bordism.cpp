#include "floerkit/bordism.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "floerkit/error.hpp"
#include "floerkit/group.hpp"
#include "floerkit/parallel.hpp"

namespace floerkit {

namespace {

void mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

const FiniteGroup& probe_group() {
  static const FiniteGroup g = symmetric_group(3);
  return g;
}

// Deterministic sample of Hom(π₁Σ_g, S₃): each handle is a commuting pair.
const std::vector<std::vector<Element>>& probe_points(int genus) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<Element>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(genus);
  if (it != cache.end()) return it->second;
  const auto& g = probe_group();
  std::vector<std::vector<Element>> pts;
  std::uint64_t state = 0x2545f4914f6cdd1dull;
  auto next = [&](std::size_t n) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return Element(state % n);
  };
  for (int s = 0; s < 6; ++s) {
    std::vector<Element> t;
    for (int i = 0; i < genus; ++i) {
      Element a = next(g.order());
      std::vector<Element> cent;
      for (Element b = 0; b < g.order(); ++b)
        if (g.mul(a, b) == g.mul(b, a)) cent.push_back(b);
      t.push_back(a);
      t.push_back(cent[next(cent.size())]);
    }
    pts.push_back(std::move(t));
  }
  return cache.emplace(genus, std::move(pts)).first->second;
}

std::uint64_t automorphism_fingerprint(const SurfaceAutomorphism& phi) {
  std::uint64_t h = std::uint64_t(phi.genus()) + 17;
  for (int k = 1; k <= 2 * phi.genus(); ++k)
    for (long c : word_abelianization(phi.image(k))) mix(h, std::uint64_t(c + 1000));
  for (const auto& pt : probe_points(phi.genus()))
    for (int k = 1; k <= 2 * phi.genus(); ++k)
      mix(h, word_eval(phi.image(k), pt, probe_group()));
  return h;
}

[[noreturn]] void not_applicable(const CerfMove& m, const std::string& why) {
  raise(ErrorKind::MoveNotApplicable, m.describe() + ": " + why,
        {{"move", to_string(m.kind)}, {"position", m.position}, {"condition", why}});
}

const std::vector<SurfaceAutomorphism>& cached(int genus, bool crossing) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, std::vector<SurfaceAutomorphism>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(genus, crossing);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<SurfaceAutomorphism> v;
  if (crossing && genus >= 1) {
    auto s = autos::s_move(genus, 1);
    v.push_back(s);
    v.push_back(s.inverse().renamed("S1^-1"));
  }
  if (!crossing && genus >= 2) {
    auto t = autos::handle_swap(genus, 1);
    v.push_back(t);
    v.push_back(t.inverse().renamed("swap1^-1"));
  }
  return cache.emplace(key, std::move(v)).first->second;
}

const std::vector<SurfaceAutomorphism>& cached_library(int genus) {
  static std::mutex mu;
  static std::map<int, std::vector<SurfaceAutomorphism>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(genus);
  if (it != cache.end()) return it->second;
  return cache.emplace(genus, autos::library(genus)).first->second;
}

const SurfaceAutomorphism& identity_at(int genus) {
  return cached_library(genus).front();
}

bool is_identity_attach(const SimpleCobordism& s, StepKind kind) {
  return s.kind == kind && s.automorphism->is_identity();
}

}  // namespace

std::string BordObject::to_string() const {
  return is_empty ? "empty" : "genus " + std::to_string(genus);
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Cyl: return "cyl";
    case StepKind::Attach2: return "attach2";
    case StepKind::Attach1: return "attach1";
    case StepKind::Cap3: return "cap3";
    case StepKind::Cap0: return "cap0";
  }
  return "?";
}

StepKind step_kind_from_string(const std::string& s) {
  if (s == "cyl") return StepKind::Cyl;
  if (s == "attach2") return StepKind::Attach2;
  if (s == "attach1") return StepKind::Attach1;
  if (s == "cap3") return StepKind::Cap3;
  if (s == "cap0") return StepKind::Cap0;
  raise(ErrorKind::ParseError, "unknown step kind '" + s + "'");
}

SimpleCobordism SimpleCobordism::cyl(SurfaceAutomorphism phi) { return {StepKind::Cyl, std::move(phi)}; }

SimpleCobordism SimpleCobordism::attach2(SurfaceAutomorphism psi) {
  if (psi.genus() < 1) raise(ErrorKind::GenusMismatch, "attaching circle needs genus >= 1");
  return {StepKind::Attach2, std::move(psi)};
}

SimpleCobordism SimpleCobordism::attach1(SurfaceAutomorphism psi) {
  if (psi.genus() < 1) raise(ErrorKind::GenusMismatch, "attaching circle needs genus >= 1");
  return {StepKind::Attach1, std::move(psi)};
}

SimpleCobordism SimpleCobordism::cap3() { return {StepKind::Cap3, std::nullopt}; }
SimpleCobordism SimpleCobordism::cap0() { return {StepKind::Cap0, std::nullopt}; }

int SimpleCobordism::genus() const { return automorphism ? automorphism->genus() : 0; }

BordObject SimpleCobordism::source() const {
  switch (kind) {
    case StepKind::Cyl:
    case StepKind::Attach2: return BordObject::surface(genus());
    case StepKind::Attach1: return BordObject::surface(genus() - 1);
    case StepKind::Cap3: return BordObject::surface(0);
    case StepKind::Cap0: return BordObject::empty();
  }
  return {};
}

BordObject SimpleCobordism::target() const {
  switch (kind) {
    case StepKind::Cyl:
    case StepKind::Attach1: return BordObject::surface(genus());
    case StepKind::Attach2: return BordObject::surface(genus() - 1);
    case StepKind::Cap3: return BordObject::empty();
    case StepKind::Cap0: return BordObject::surface(0);
  }
  return {};
}

SimpleCobordism SimpleCobordism::adjoint() const {
  switch (kind) {
    case StepKind::Cyl: return cyl(automorphism->inverse());
    case StepKind::Attach2: return attach1(*automorphism);
    case StepKind::Attach1: return attach2(*automorphism);
    case StepKind::Cap3: return cap0();
    case StepKind::Cap0: return cap3();
  }
  return *this;
}

bool SimpleCobordism::equivalent(const SimpleCobordism& other) const {
  if (kind != other.kind || genus() != other.genus()) return false;
  if (!automorphism) return true;
  return automorphism->equivalent(*other.automorphism);
}

std::string SimpleCobordism::describe() const {
  std::string s = to_string(kind);
  if (automorphism) {
    s += "[" + (automorphism->name().empty() ? std::string("?") : automorphism->name()) + "]@" +
         std::to_string(genus());
  }
  return s;
}

CobordismChain CobordismChain::from_steps(std::vector<SimpleCobordism> steps) {
  if (steps.empty()) raise(ErrorKind::InvalidChain, "cannot infer endpoints of an empty chain");
  CobordismChain c{steps.front().source(), steps.back().target(), std::move(steps)};
  c.validate();
  return c;
}

void CobordismChain::validate() const {
  if (steps.empty()) {
    if (!(source == target))
      raise(ErrorKind::BoundaryMismatch, "empty chain needs equal source and target");
    return;
  }
  if (!(steps.front().source() == source))
    raise(ErrorKind::BoundaryMismatch, "first step does not start at " + source.to_string(),
          {{"position", 0}});
  if (!(steps.back().target() == target))
    raise(ErrorKind::BoundaryMismatch, "last step does not end at " + target.to_string(),
          {{"position", steps.size() - 1}});
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!(steps[i].target() == steps[i + 1].source()))
      raise(ErrorKind::BoundaryMismatch,
            "steps " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not compose",
            {{"position", i}});
}

bool CobordismChain::equivalent(const CobordismChain& other) const {
  if (!(source == other.source) || !(target == other.target)) return false;
  if (steps.size() != other.steps.size()) return false;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (!steps[i].equivalent(other.steps[i])) return false;
  return true;
}

std::uint64_t CobordismChain::fingerprint() const {
  std::uint64_t h = 0;
  mix(h, source.is_empty ? 1000 : std::uint64_t(source.genus));
  mix(h, target.is_empty ? 1000 : std::uint64_t(target.genus));
  for (const auto& s : steps) {
    mix(h, std::uint64_t(s.kind));
    mix(h, std::uint64_t(s.genus()));
    if (s.automorphism) mix(h, automorphism_fingerprint(*s.automorphism));
  }
  return h;
}

std::string CobordismChain::describe() const {
  if (steps.empty()) return "(identity at " + source.to_string() + ")";
  std::string s;
  for (const auto& st : steps) {
    if (!s.empty()) s += " | ";
    s += st.describe();
  }
  return s;
}

CobordismChain chain_compose(const CobordismChain& c1, const CobordismChain& c2) {
  if (!(c1.target == c2.source))
    raise(ErrorKind::BoundaryMismatch,
          "target " + c1.target.to_string() + " != source " + c2.source.to_string());
  CobordismChain c{c1.source, c2.target, c1.steps};
  c.steps.insert(c.steps.end(), c2.steps.begin(), c2.steps.end());
  return c;
}

CobordismChain chain_adjoint(const CobordismChain& c) {
  CobordismChain out{c.target, c.source, {}};
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) out.steps.push_back(it->adjoint());
  return out;
}

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::CylMerge: return "CylMerge";
    case MoveKind::CylSplit: return "CylSplit";
    case MoveKind::CylAbsorbPre: return "CylAbsorbPre";
    case MoveKind::CylAbsorbPost: return "CylAbsorbPost";
    case MoveKind::CritCancel: return "CritCancel";
    case MoveKind::CritCreate: return "CritCreate";
    case MoveKind::CritSwitch: return "CritSwitch";
  }
  return "?";
}

std::string CerfMove::describe() const {
  std::string s = to_string(kind) + "@" + std::to_string(position);
  if (variant) s += "/v" + std::to_string(variant);
  for (const auto& p : params) s += " " + (p.name().empty() ? std::string("?") : p.name());
  return s;
}

std::vector<SurfaceAutomorphism> crossing_transports(int genus) { return cached(genus, true); }
std::vector<SurfaceAutomorphism> disjoint_transports(int genus) { return cached(genus, false); }

PairConfig classify_pair(const SurfaceAutomorphism& psi_alpha, const SurfaceAutomorphism& psi_beta) {
  if (psi_alpha.genus() != psi_beta.genus()) return PairConfig::None;
  const auto chi = automorphism_compose(psi_beta, psi_alpha.inverse());
  for (const auto& c : cached(chi.genus(), true))
    if (chi.equivalent(c)) return PairConfig::Crossing;
  for (const auto& c : cached(chi.genus(), false))
    if (chi.equivalent(c)) return PairConfig::Disjoint;
  return PairConfig::None;
}

CobordismChain cerf_apply(const CobordismChain& c, const CerfMove& m) {
  const auto& st = c.steps;
  const std::size_t p = m.position;
  auto need = [&](std::size_t count) {
    if (p + count > st.size()) not_applicable(m, "position out of range");
  };
  auto need_param = [&](std::size_t count) {
    if (m.params.size() < count) not_applicable(m, "missing parameters");
  };
  std::vector<SimpleCobordism> repl;
  std::size_t removed = 0;
  switch (m.kind) {
    case MoveKind::CylMerge: {
      need(2);
      if (st[p].kind != StepKind::Cyl || st[p + 1].kind != StepKind::Cyl)
        not_applicable(m, "needs two cylinders");
      repl.push_back(SimpleCobordism::cyl(automorphism_compose(*st[p].automorphism,
                                                               *st[p + 1].automorphism)));
      removed = 2;
      break;
    }
    case MoveKind::CylSplit: {
      need(1);
      need_param(1);
      if (st[p].kind != StepKind::Cyl) not_applicable(m, "needs a cylinder");
      const auto& theta = m.params[0];
      if (theta.genus() != st[p].genus()) not_applicable(m, "factor genus mismatch");
      repl.push_back(SimpleCobordism::cyl(theta));
      repl.push_back(
          SimpleCobordism::cyl(automorphism_compose(theta.inverse(), *st[p].automorphism)));
      removed = 1;
      break;
    }
    case MoveKind::CylAbsorbPre: {
      if (m.variant == 0) {
        need(2);
        if (st[p].kind != StepKind::Cyl || st[p + 1].kind != StepKind::Attach2 ||
            st[p].genus() != st[p + 1].genus())
          not_applicable(m, "needs (cyl, attach2) on one surface");
        repl.push_back(SimpleCobordism::attach2(
            automorphism_compose(*st[p + 1].automorphism, st[p].automorphism->inverse())));
        removed = 2;
      } else {
        need(1);
        need_param(1);
        if (st[p].kind != StepKind::Attach2) not_applicable(m, "needs attach2");
        const auto& theta = m.params[0];
        if (theta.genus() != st[p].genus()) not_applicable(m, "factor genus mismatch");
        repl.push_back(SimpleCobordism::cyl(theta));
        repl.push_back(SimpleCobordism::attach2(automorphism_compose(*st[p].automorphism, theta)));
        removed = 1;
      }
      break;
    }
    case MoveKind::CylAbsorbPost: {
      if (m.variant == 0) {
        need(2);
        if (st[p].kind != StepKind::Attach1 || st[p + 1].kind != StepKind::Cyl ||
            st[p].genus() != st[p + 1].genus())
          not_applicable(m, "needs (attach1, cyl) on one surface");
        repl.push_back(SimpleCobordism::attach1(
            automorphism_compose(*st[p].automorphism, *st[p + 1].automorphism)));
        removed = 2;
      } else {
        need(1);
        need_param(1);
        if (st[p].kind != StepKind::Attach1) not_applicable(m, "needs attach1");
        const auto& theta = m.params[0];
        if (theta.genus() != st[p].genus()) not_applicable(m, "factor genus mismatch");
        repl.push_back(SimpleCobordism::attach1(
            automorphism_compose(*st[p].automorphism, theta.inverse())));
        repl.push_back(SimpleCobordism::cyl(theta));
        removed = 1;
      }
      break;
    }
    case MoveKind::CritCancel: {
      need(2);
      if (st[p].kind != StepKind::Attach1 || st[p + 1].kind != StepKind::Attach2 ||
          st[p].genus() != st[p + 1].genus())
        not_applicable(m, "needs (attach1, attach2) on one surface");
      if (classify_pair(*st[p].automorphism, *st[p + 1].automorphism) != PairConfig::Crossing)
        not_applicable(m, "circles are not a canonical single-intersection pair");
      repl.push_back(SimpleCobordism::cyl(identity_at(st[p].genus() - 1)));
      removed = 2;
      break;
    }
    case MoveKind::CritCreate: {
      need(1);
      need_param(2);
      if (st[p].kind != StepKind::Cyl || !st[p].automorphism->is_identity())
        not_applicable(m, "needs an identity cylinder");
      const auto& psi = m.params[0];
      const auto& eps = m.params[1];
      if (psi.genus() != st[p].genus() + 1 || eps.genus() != psi.genus())
        not_applicable(m, "transport genus mismatch");
      auto beta = automorphism_compose(eps, psi);
      if (classify_pair(psi, beta) != PairConfig::Crossing)
        not_applicable(m, "transport is not a crossing configuration");
      repl.push_back(SimpleCobordism::attach1(psi));
      repl.push_back(SimpleCobordism::attach2(beta));
      removed = 1;
      break;
    }
    case MoveKind::CritSwitch: {
      if (m.variant == 1 || m.variant == 2) {
        need(2);
        need_param(1);
        const auto& eps = m.params[0];
        const bool two = m.variant == 1;
        const auto& big = two ? st[p] : st[p + 1];
        const auto& small = two ? st[p + 1] : st[p];
        const StepKind k = two ? StepKind::Attach2 : StepKind::Attach1;
        if (big.kind != k || small.kind != k || big.genus() != small.genus() + 1)
          not_applicable(m, "needs consecutive attachments of one kind");
        if (!small.automorphism->is_identity())
          not_applicable(m, "second circle is not the canonical descendant");
        bool canonical = false;
        for (const auto& d : cached(big.genus(), false)) canonical |= d.equivalent(eps);
        if (!canonical) not_applicable(m, "parameter is not a disjoint transport");
        auto moved = automorphism_compose(eps, *big.automorphism);
        SimpleCobordism nb = two ? SimpleCobordism::attach2(moved) : SimpleCobordism::attach1(moved);
        if (two) {
          repl.push_back(nb);
          repl.push_back(small);
        } else {
          repl.push_back(small);
          repl.push_back(nb);
        }
        removed = 2;
      } else if (m.variant == 3) {
        need(2);
        if (st[p].kind != StepKind::Attach1 || st[p + 1].kind != StepKind::Attach2 ||
            st[p].genus() != st[p + 1].genus())
          not_applicable(m, "needs (attach1, attach2) on one surface");
        if (classify_pair(*st[p].automorphism, *st[p + 1].automorphism) != PairConfig::Disjoint)
          not_applicable(m, "circles are not a canonical disjoint pair");
        const int h = st[p].genus() - 1;
        repl.push_back(SimpleCobordism::attach2(identity_at(h)));
        repl.push_back(SimpleCobordism::attach1(identity_at(h)));
        removed = 2;
      } else if (m.variant == 4) {
        need(2);
        need_param(2);
        if (!is_identity_attach(st[p], StepKind::Attach2) ||
            !is_identity_attach(st[p + 1], StepKind::Attach1) ||
            st[p].genus() != st[p + 1].genus())
          not_applicable(m, "needs canonical (attach2, attach1)");
        const auto& eps = m.params[0];
        const auto& psi = m.params[1];
        if (psi.genus() != st[p].genus() + 1) not_applicable(m, "transport genus mismatch");
        auto beta = automorphism_compose(eps, psi);
        if (classify_pair(psi, beta) != PairConfig::Disjoint)
          not_applicable(m, "transport is not a disjoint configuration");
        repl.push_back(SimpleCobordism::attach1(psi));
        repl.push_back(SimpleCobordism::attach2(beta));
        removed = 2;
      } else {
        not_applicable(m, "unknown switch variant");
      }
      break;
    }
  }
  CobordismChain out{c.source, c.target, {}};
  out.steps.insert(out.steps.end(), st.begin(), st.begin() + long(p));
  out.steps.insert(out.steps.end(), repl.begin(), repl.end());
  out.steps.insert(out.steps.end(), st.begin() + long(p + removed), st.end());
  out.validate();
  return out;
}

std::vector<Neighbor> cerf_neighbors(const CobordismChain& c) {
  std::vector<CerfMove> candidates;
  const auto& st = c.steps;
  for (std::size_t p = 0; p < st.size(); ++p) {
    const auto& s = st[p];
    const bool has_next = p + 1 < st.size();
    const int g = s.genus();
    if (s.kind == StepKind::Cyl) {
      if (has_next && st[p + 1].kind == StepKind::Cyl) candidates.push_back({MoveKind::CylMerge, p, 0, {}});
      for (const auto& theta : cached_library(g))
        if (!theta.is_identity()) candidates.push_back({MoveKind::CylSplit, p, 0, {theta}});
      if (has_next && st[p + 1].kind == StepKind::Attach2 && st[p + 1].genus() == g)
        candidates.push_back({MoveKind::CylAbsorbPre, p, 0, {}});
      if (s.automorphism->is_identity()) {
        for (const auto& psi : cached_library(g + 1))
          for (const auto& eps : cached(g + 1, true))
            candidates.push_back({MoveKind::CritCreate, p, 0, {psi, eps}});
      }
    }
    if (s.kind == StepKind::Attach2) {
      for (const auto& theta : cached_library(g))
        if (!theta.is_identity()) candidates.push_back({MoveKind::CylAbsorbPre, p, 1, {theta}});
      if (has_next && st[p + 1].kind == StepKind::Attach2 && st[p + 1].genus() == g - 1 &&
          st[p + 1].automorphism->is_identity())
        for (const auto& eps : cached(g, false)) candidates.push_back({MoveKind::CritSwitch, p, 1, {eps}});
      if (has_next && st[p + 1].kind == StepKind::Attach1 && st[p + 1].genus() == g &&
          s.automorphism->is_identity() && st[p + 1].automorphism->is_identity())
        for (const auto& psi : cached_library(g + 1))
          for (const auto& eps : cached(g + 1, false))
            candidates.push_back({MoveKind::CritSwitch, p, 4, {eps, psi}});
    }
    if (s.kind == StepKind::Attach1) {
      for (const auto& theta : cached_library(g))
        if (!theta.is_identity()) candidates.push_back({MoveKind::CylAbsorbPost, p, 1, {theta}});
      if (has_next && st[p + 1].kind == StepKind::Cyl && st[p + 1].genus() == g)
        candidates.push_back({MoveKind::CylAbsorbPost, p, 0, {}});
      if (has_next && st[p + 1].kind == StepKind::Attach1 && st[p + 1].genus() == g + 1 &&
          s.automorphism->is_identity())
        for (const auto& eps : cached(g + 1, false)) candidates.push_back({MoveKind::CritSwitch, p, 2, {eps}});
      if (has_next && st[p + 1].kind == StepKind::Attach2 && st[p + 1].genus() == g) {
        auto cfg = classify_pair(*s.automorphism, *st[p + 1].automorphism);
        if (cfg == PairConfig::Crossing) candidates.push_back({MoveKind::CritCancel, p, 0, {}});
        if (cfg == PairConfig::Disjoint) candidates.push_back({MoveKind::CritSwitch, p, 3, {}});
      }
    }
  }
  std::vector<Neighbor> out;
  for (auto& m : candidates) {
    try {
      auto next = cerf_apply(c, m);
      out.push_back({std::move(m), std::move(next)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MoveNotApplicable) throw;
    }
  }
  return out;
}

namespace {

struct SearchNode {
  CobordismChain chain;
  std::size_t parent;
  std::optional<CerfMove> move;  // parent --move--> chain
};

struct SearchSide {
  std::vector<SearchNode> nodes;
  std::unordered_multimap<std::uint64_t, std::size_t> index;
  std::vector<std::size_t> frontier;

  std::optional<std::size_t> find(const CobordismChain& c, std::uint64_t fp) const {
    auto [lo, hi] = index.equal_range(fp);
    std::optional<std::size_t> best;
    for (auto it = lo; it != hi; ++it)
      if (nodes[it->second].chain.equivalent(c) && (!best || it->second < *best)) best = it->second;
    return best;
  }
};

}  // namespace

std::optional<std::vector<CerfMove>> cerf_connected(const CobordismChain& c1,
                                                    const CobordismChain& c2, int depth,
                                                    const RunConfig& cfg) {
  if (!(c1.source == c2.source) || !(c1.target == c2.target))
    raise(ErrorKind::BoundaryMismatch, "chains have different endpoints");
  if (c1.equivalent(c2)) return std::vector<CerfMove>{};

  SearchSide fwd, bwd;
  auto seed = [](SearchSide& s, const CobordismChain& c) {
    s.nodes.push_back({c, 0, std::nullopt});
    s.index.emplace(c.fingerprint(), 0);
    s.frontier = {0};
  };
  seed(fwd, c1);
  seed(bwd, c2);

  auto path_to = [](const SearchSide& s, std::size_t i) {
    std::vector<CerfMove> moves;
    while (s.nodes[i].move) {
      moves.push_back(*s.nodes[i].move);
      i = s.nodes[i].parent;
    }
    return std::vector<CerfMove>(moves.rbegin(), moves.rend());
  };

  // reverse the backward half: each edge P --m--> Y becomes Y --m'--> P
  auto backward_path = [&](std::size_t i) -> std::optional<std::vector<CerfMove>> {
    std::vector<CerfMove> moves;
    while (bwd.nodes[i].move) {
      const auto& y = bwd.nodes[i].chain;
      const auto& parent = bwd.nodes[bwd.nodes[i].parent].chain;
      std::optional<CerfMove> inv;
      for (auto& n : cerf_neighbors(y))
        if (n.chain.equivalent(parent)) {
          inv = n.move;
          break;
        }
      if (!inv) return std::nullopt;
      moves.push_back(*inv);
      i = bwd.nodes[i].parent;
    }
    return moves;
  };

  int used = 0;
  while (used < depth && (!fwd.frontier.empty() || !bwd.frontier.empty())) {
    const bool forward =
        bwd.frontier.empty() || (!fwd.frontier.empty() && fwd.frontier.size() <= bwd.frontier.size());
    SearchSide& side = forward ? fwd : bwd;
    SearchSide& other = forward ? bwd : fwd;
    auto expanded = parallel_map(side.frontier.size(), cfg.workers, [&](std::size_t k) {
      return cerf_neighbors(side.nodes[side.frontier[k]].chain);
    });
    std::vector<std::size_t> next;
    for (std::size_t k = 0; k < expanded.size(); ++k) {
      const std::size_t parent = side.frontier[k];
      for (auto& n : expanded[k]) {
        const auto fp = n.chain.fingerprint();
        if (side.find(n.chain, fp)) continue;
        side.nodes.push_back({n.chain, parent, n.move});
        const std::size_t id = side.nodes.size() - 1;
        side.index.emplace(fp, id);
        next.push_back(id);
        if (auto hit = other.find(n.chain, fp)) {
          const std::size_t fi = forward ? id : *hit;
          const std::size_t bi = forward ? *hit : id;
          auto tail = backward_path(bi);
          if (!tail) continue;
          auto path = path_to(fwd, fi);
          path.insert(path.end(), tail->begin(), tail->end());
          return path;
        }
      }
    }
    side.frontier = std::move(next);
    ++used;
  }
  return std::nullopt;
}

}  // namespace floerkit
