#include "floerkit/repvar.hpp"

#include <algorithm>
#include <cmath>

#include "floerkit/error.hpp"
#include "floerkit/parallel.hpp"

namespace floerkit {

namespace {

bool lex_less(std::span<const Element> a, std::span<const Element> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// t is canonical iff no conjugate is lexicographically smaller; only the
// centralizer of t[0] can keep the first coordinate fixed.
bool is_canonical(const FiniteGroup& g, std::span<const Element> t,
                  const std::vector<Element>& centralizer) {
  for (Element h : centralizer) {
    for (std::size_t i = 1; i < t.size(); ++i) {
      const Element c = g.conj(t[i], h);
      if (c < t[i]) return false;
      if (c > t[i]) break;
    }
  }
  return true;
}

void check_budget(double estimate, const RunConfig& cfg, const std::string& what) {
  if (estimate > double(cfg.budget))
    raise(ErrorKind::ResourceLimit,
          what + " needs ~" + std::to_string(static_cast<unsigned long long>(estimate)) +
              " tuple evaluations, budget is " + std::to_string(cfg.budget),
          {{"estimate", estimate}, {"budget", cfg.budget}});
}

std::string words_key(const std::string& tag, const SurfaceAutomorphism& a) {
  std::string k = tag + ":" + std::to_string(a.genus());
  for (const auto* list : {&a.images(), &a.inverse_images()})
    for (const auto& w : *list) {
      k += '|';
      for (int l : w.letters) k += std::to_string(l) + ',';
    }
  return k;
}

}  // namespace

std::vector<Element> canonicalize(const FiniteGroup& g, std::span<const Element> tuple) {
  std::vector<Element> best(tuple.begin(), tuple.end());
  std::vector<Element> cur(tuple.size());
  for (Element h = 1; h < g.order(); ++h) {
    for (std::size_t i = 0; i < tuple.size(); ++i) cur[i] = g.conj(tuple[i], h);
    if (lex_less(cur, best)) best = cur;
  }
  return best;
}

bool surface_relator_holds(const FiniteGroup& g, std::span<const Element> t) {
  Element acc = FiniteGroup::identity();
  for (std::size_t i = 0; i + 1 < t.size(); i += 2) acc = g.mul(acc, g.commutator(t[i], t[i + 1]));
  return acc == FiniteGroup::identity();
}

std::string variety_name(const FiniteGroup& g, const BordObject& obj) {
  const std::string gname = g.name().empty() ? "G" + std::to_string(g.order()) : g.name();
  return "M(" + gname + "," + (obj.is_empty ? std::string("empty") : std::to_string(obj.genus)) +
         ")";
}

RepVariety::RepVariety(std::shared_ptr<const FiniteGroup> group, BordObject object,
                       std::vector<Element> flat_points)
    : group_(std::move(group)), object_(object), flat_(std::move(flat_points)) {
  size_ = arity() == 0 ? 1 : flat_.size() / arity();
  set_ = make_set(variety_name(*group_, object_), size_);
}

std::optional<Index> RepVariety::index_of(std::span<const Element> t) const {
  if (t.size() != arity()) return std::nullopt;
  if (arity() == 0) return 0;
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(point(mid), t))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size_ && std::equal(t.begin(), t.end(), point(lo).begin())) return Index(lo);
  return std::nullopt;
}

RepVariety repvariety(std::shared_ptr<const FiniteGroup> gp, const BordObject& obj,
                      const RunConfig& cfg) {
  const FiniteGroup& g = *gp;
  const int genus = obj.is_empty ? 0 : obj.genus;
  if (genus < 0) raise(ErrorKind::GenusMismatch, "negative genus");
  if (genus == 0) return RepVariety(gp, obj, {});
  const std::size_t n = g.order();
  const std::size_t len = std::size_t(2 * genus);
  check_budget(double(g.class_count()) * std::pow(double(n), double(len - 1)), cfg,
               "repvariety(" + g.name() + ", genus " + std::to_string(genus) + ")");

  // work items: (class representative for a₁, b₁)
  struct Item {
    Element a1, b1;
  };
  std::vector<Item> items;
  for (const auto& cls : g.classes())
    for (Element b = 0; b < n; ++b) items.push_back({cls.front(), b});

  auto batches = parallel_map(items.size(), cfg.workers, [&](std::size_t k) {
    const Item it = items[k];
    std::vector<Element> centralizer;
    for (Element h = 0; h < n; ++h)
      if (g.mul(it.a1, h) == g.mul(h, it.a1)) centralizer.push_back(h);
    std::vector<Element> out;
    std::vector<Element> t(len, 0);
    t[0] = it.a1;
    t[1] = it.b1;
    const Element first = g.commutator(it.a1, it.b1);
    if (genus == 1) {
      if (first == 0 && is_canonical(g, t, centralizer)) out.insert(out.end(), t.begin(), t.end());
      return out;
    }
    // handles 2..g−1 free, last handle solves [a_g, b_g] = prefix⁻¹
    auto rec = [&](auto&& self, int handle, Element prefix) -> void {
      if (handle == genus) {
        const Element want = g.inv(prefix);
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) {
            if (g.commutator(a, b) != want) continue;
            t[len - 2] = a;
            t[len - 1] = b;
            if (is_canonical(g, t, centralizer)) out.insert(out.end(), t.begin(), t.end());
          }
        return;
      }
      const std::size_t i = std::size_t(2 * handle - 2);
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
          t[i] = a;
          t[i + 1] = b;
          self(self, handle + 1, g.mul(prefix, g.commutator(a, b)));
        }
    };
    rec(rec, 2, first);
    return out;
  });
  std::vector<Element> flat;
  for (auto& b : batches) flat.insert(flat.end(), b.begin(), b.end());
  return RepVariety(gp, obj, std::move(flat));
}

RepContext::RepContext(FiniteGroup g, RunConfig cfg)
    : group_(std::make_shared<const FiniteGroup>(std::move(g))), cfg_(std::move(cfg)) {
  cfg_.validate();
}

std::shared_ptr<const RepVariety> RepContext::variety(const BordObject& obj) {
  const auto key = std::make_pair(obj.is_empty, obj.is_empty ? 0 : obj.genus);
  {
    std::lock_guard lock(mu_);
    auto it = varieties_.find(key);
    if (it != varieties_.end()) return it->second;
  }
  auto v = std::make_shared<const RepVariety>(repvariety(group_, obj, cfg_));
  std::lock_guard lock(mu_);
  return varieties_.emplace(key, v).first->second;
}

FiniteRelation RepContext::cyl(const SurfaceAutomorphism& phi) {
  const std::string key = words_key("cyl", phi);
  {
    std::lock_guard lock(mu_);
    auto it = relations_.find(key);
    if (it != relations_.end()) return it->second;
  }
  auto m = variety(phi.genus());
  const std::size_t len = m->arity();
  auto images = parallel_map(m->size(), cfg_.workers, [&](std::size_t i) {
    auto rho = m->point(i);
    std::vector<Element> pushed(len);
    for (std::size_t k = 0; k < len; ++k) pushed[k] = word_eval(phi.inverse_images()[k], rho, *group_);
    auto idx = m->index_of(canonicalize(*group_, pushed));
    if (!idx) raise(ErrorKind::InvalidAutomorphism, "pushed representation left the variety");
    return *idx;
  });
  auto rel = FiniteRelation::graph(m->set(), m->set(), images);
  if (!rel.is_bijection_graph())
    raise(ErrorKind::InvalidAutomorphism, "induced map on " + m->set()->name + " is not bijective");
  std::lock_guard lock(mu_);
  return relations_.emplace(key, std::move(rel)).first->second;
}

FiniteRelation RepContext::attach2(const SurfaceAutomorphism& psi) {
  const int g = psi.genus();
  if (g < 1) raise(ErrorKind::GenusMismatch, "attaching circle needs genus >= 1");
  const std::string key = words_key("attach2", psi);
  {
    std::lock_guard lock(mu_);
    auto it = relations_.find(key);
    if (it != relations_.end()) return it->second;
  }
  auto big = variety(g);
  auto small = variety(g - 1);
  const std::size_t n = group_->order();
  check_budget(double(small->size()) * double(n), cfg_, "attach2 enumeration");
  const std::size_t len = big->arity();
  auto batches = parallel_map(small->size(), cfg_.workers, [&](std::size_t ti) {
    std::vector<IndexPair> out;
    auto tau = small->point(ti);
    std::vector<Element> sigma(len, 0), pulled(len);
    std::copy(tau.begin(), tau.end(), sigma.begin() + 2);
    for (Element b1 = 0; b1 < n; ++b1) {
      sigma[1] = b1;
      for (std::size_t k = 0; k < len; ++k)
        pulled[k] = word_eval(psi.inverse_images()[k], sigma, *group_);
      auto idx = big->index_of(canonicalize(*group_, pulled));
      if (!idx) raise(ErrorKind::InvalidAutomorphism, "pulled representation left the variety");
      out.emplace_back(*idx, Index(ti));
    }
    return out;
  });
  std::vector<IndexPair> pairs;
  for (auto& b : batches) pairs.insert(pairs.end(), b.begin(), b.end());
  FiniteRelation rel(big->set(), small->set(), std::move(pairs));
  std::lock_guard lock(mu_);
  return relations_.emplace(key, std::move(rel)).first->second;
}

FiniteRelation RepContext::attach2_direct(const SurfaceAutomorphism& psi) {
  const int g = psi.genus();
  if (g < 1) raise(ErrorKind::GenusMismatch, "attaching circle needs genus >= 1");
  auto big = variety(g);
  auto small = variety(g - 1);
  const std::size_t len = big->arity();
  auto batches = parallel_map(big->size(), cfg_.workers, [&](std::size_t i) {
    std::vector<IndexPair> out;
    auto rho = big->point(i);
    if (word_eval(psi.image(1), rho, *group_) != FiniteGroup::identity()) return out;
    std::vector<Element> rest;
    for (std::size_t k = 2; k < len; ++k) rest.push_back(word_eval(psi.images()[k], rho, *group_));
    auto idx = small->index_of(canonicalize(*group_, rest));
    if (!idx) raise(ErrorKind::InvalidAutomorphism, "restricted representation left the variety");
    out.emplace_back(Index(i), *idx);
    return out;
  });
  std::vector<IndexPair> pairs;
  for (auto& b : batches) pairs.insert(pairs.end(), b.begin(), b.end());
  return FiniteRelation(big->set(), small->set(), std::move(pairs));
}

FiniteRelation RepContext::simple(const SimpleCobordism& s) {
  switch (s.kind) {
    case StepKind::Cyl: return cyl(*s.automorphism);
    case StepKind::Attach2: return attach2(*s.automorphism);
    case StepKind::Attach1: return attach2(*s.automorphism).transpose();
    case StepKind::Cap3:
      return FiniteRelation::full(variety(BordObject::surface(0))->set(),
                                  variety(BordObject::empty())->set());
    case StepKind::Cap0:
      return FiniteRelation::full(variety(BordObject::empty())->set(),
                                  variety(BordObject::surface(0))->set());
  }
  raise(ErrorKind::InvalidChain, "unknown step kind");
}

FiniteRelation relation_of_cyl(RepContext& ctx, const SurfaceAutomorphism& phi) { return ctx.cyl(phi); }

FiniteRelation relation_of_attach2(RepContext& ctx, const AttachingCircle& alpha) {
  return ctx.attach2(alpha.psi);
}

FiniteRelation relation_of_simple(RepContext& ctx, const SimpleCobordism& s) { return ctx.simple(s); }

}  // namespace floerkit
