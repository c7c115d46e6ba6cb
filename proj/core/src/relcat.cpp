#include "floerkit/relcat.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "floerkit/error.hpp"
#include "floerkit/parallel.hpp"

namespace floerkit {

namespace {

void require_composable(const FiniteRelation& a, const FiniteRelation& b) {
  if (!same_set(a.target(), b.source()))
    raise(ErrorKind::EndpointMismatch,
          "cannot compose " + a.source()->name + "->" + a.target()->name + " with " +
              b.source()->name + "->" + b.target()->name);
}

nlohmann::json witness_json(const EmbeddingWitness& w) {
  return {{"x", w.x}, {"y", w.y}, {"y_other", w.y_other}, {"z", w.z}};
}

}  // namespace

FiniteRelation geometric_compose(const FiniteRelation& l12, const FiniteRelation& l23) {
  require_composable(l12, l23);
  std::vector<IndexPair> out;
  std::vector<Index> row;
  std::vector<bool> seen(l23.target()->size, false);
  for (Index x = 0; x < l12.source()->size; ++x) {
    row.clear();
    for (Index y : l12.image(x))
      for (Index z : l23.image(y))
        if (!seen[z]) {
          seen[z] = true;
          row.push_back(z);
        }
    for (Index z : row) {
      seen[z] = false;
      out.emplace_back(x, z);
    }
  }
  return FiniteRelation(l12.source(), l23.target(), std::move(out));
}

EmbeddingCheck is_embedded(const FiniteRelation& l12, const FiniteRelation& l23) {
  require_composable(l12, l23);
  EmbeddingCheck res;
  const Index none = ~Index(0);
  std::vector<Index> via(l23.target()->size, none);
  std::vector<Index> touched;
  for (Index x = 0; x < l12.source()->size; ++x) {
    for (Index y : l12.image(x))
      for (Index z : l23.image(y)) {
        ++res.triples;
        if (via[z] == none) {
          via[z] = y;
          touched.push_back(z);
        } else if (res.embedded) {
          res.embedded = false;
          res.witness = EmbeddingWitness{x, via[z], y, z};
        }
      }
    for (Index z : touched) via[z] = none;
    touched.clear();
  }
  return res;
}

RelationChain RelationChain::from_steps(std::vector<FiniteRelation> steps) {
  if (steps.empty()) raise(ErrorKind::EndpointMismatch, "cannot infer endpoints of an empty chain");
  RelationChain c{steps.front().source(), steps.back().target(), std::move(steps)};
  c.validate();
  return c;
}

void RelationChain::validate() const {
  if (steps.empty()) {
    if (!same_set(source, target)) raise(ErrorKind::EndpointMismatch, "empty chain needs equal endpoints");
    return;
  }
  if (!same_set(steps.front().source(), source) || !same_set(steps.back().target(), target))
    raise(ErrorKind::EndpointMismatch, "chain endpoints do not match its steps");
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!same_set(steps[i].target(), steps[i + 1].source()))
      raise(ErrorKind::EndpointMismatch, "steps " + std::to_string(i) + " and " +
                                             std::to_string(i + 1) + " do not compose",
            {{"position", i}});
}

RelationChain RelationChain::transpose() const {
  RelationChain out{target, source, {}};
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.steps.push_back(it->transpose());
  return out;
}

std::uint64_t RelationChain::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull ^ steps.size();
  for (const auto& s : steps) h = (h ^ s.hash()) * 1099511628211ull;
  return h;
}

bool RelationChain::operator==(const RelationChain& other) const {
  return same_set(source, other.source) && same_set(target, other.target) && steps == other.steps;
}

RelationChain chain_concat(const RelationChain& a, const RelationChain& b) {
  if (!same_set(a.target, b.source)) raise(ErrorKind::EndpointMismatch, "chains do not compose");
  RelationChain c{a.source, b.target, a.steps};
  c.steps.insert(c.steps.end(), b.steps.begin(), b.steps.end());
  return c;
}

void FactorizationRegistry::record(const FiniteRelation& composite, const FiniteRelation& first,
                                   const FiniteRelation& second) {
  auto [lo, hi] = entries_.equal_range(composite.hash());
  for (auto it = lo; it != hi; ++it)
    if (std::get<0>(it->second) == composite && std::get<1>(it->second) == first &&
        std::get<2>(it->second) == second)
      return;
  entries_.emplace(composite.hash(), std::make_tuple(composite, first, second));
}

std::vector<std::pair<FiniteRelation, FiniteRelation>> FactorizationRegistry::lookup(
    const FiniteRelation& composite) const {
  std::vector<std::pair<FiniteRelation, FiniteRelation>> out;
  auto [lo, hi] = entries_.equal_range(composite.hash());
  for (auto it = lo; it != hi; ++it)
    if (std::get<0>(it->second) == composite)
      out.emplace_back(std::get<1>(it->second), std::get<2>(it->second));
  return out;
}

RelationChain apply_chain_move(const RelationChain& c, const ChainMove& m,
                               const FactorizationRegistry& registry, std::size_t choice) {
  RelationChain out{c.source, c.target, {}};
  const auto& st = c.steps;
  if (m.kind == ChainMoveKind::Compose) {
    if (m.position + 1 >= st.size()) raise(ErrorKind::EndpointMismatch, "compose position out of range");
    auto check = is_embedded(st[m.position], st[m.position + 1]);
    if (!check.embedded)
      raise(ErrorKind::NotEmbedded, "composition at " + std::to_string(m.position) + " is not embedded",
            witness_json(*check.witness));
    out.steps.assign(st.begin(), st.begin() + long(m.position));
    out.steps.push_back(geometric_compose(st[m.position], st[m.position + 1]));
    out.steps.insert(out.steps.end(), st.begin() + long(m.position + 2), st.end());
  } else {
    if (m.position >= st.size()) raise(ErrorKind::EndpointMismatch, "factor position out of range");
    auto f = registry.lookup(st[m.position]);
    if (choice >= f.size()) raise(ErrorKind::EndpointMismatch, "no recorded factorization");
    out.steps.assign(st.begin(), st.begin() + long(m.position));
    out.steps.push_back(f[choice].first);
    out.steps.push_back(f[choice].second);
    out.steps.insert(out.steps.end(), st.begin() + long(m.position + 1), st.end());
  }
  return out;
}

std::optional<std::vector<ChainMove>> chain_equivalent(const RelationChain& c1, const RelationChain& c2,
                                                       int depth, FactorizationRegistry* registry) {
  c1.validate();
  c2.validate();
  if (!same_set(c1.source, c2.source) || !same_set(c1.target, c2.target))
    raise(ErrorKind::EndpointMismatch, "chains have different endpoints");
  FactorizationRegistry local;
  FactorizationRegistry& reg = registry ? *registry : local;
  if (c1 == c2) return std::vector<ChainMove>{};

  // Compositions only shrink chains, so search composes from both ends and
  // read the second half backwards as factorizations.
  struct Node {
    RelationChain chain;
    std::size_t parent;
    std::optional<std::size_t> position;
  };
  struct Side {
    std::vector<Node> nodes;
    std::unordered_multimap<std::uint64_t, std::size_t> index;
    std::vector<std::size_t> frontier;
    std::optional<std::size_t> find(const RelationChain& c) const {
      auto [lo, hi] = index.equal_range(c.hash());
      for (auto it = lo; it != hi; ++it)
        if (nodes[it->second].chain == c) return it->second;
      return std::nullopt;
    }
  };
  Side fwd, bwd;
  for (auto [side, chain] : {std::pair{&fwd, &c1}, std::pair{&bwd, &c2}}) {
    side->nodes.push_back({*chain, 0, std::nullopt});
    side->index.emplace(chain->hash(), 0);
    side->frontier = {0};
  }

  auto finish = [&](std::size_t fi, std::size_t bi) {
    std::vector<ChainMove> head, tail;
    for (std::size_t i = fi; fwd.nodes[i].position; i = fwd.nodes[i].parent)
      head.push_back({ChainMoveKind::Compose, *fwd.nodes[i].position});
    std::reverse(head.begin(), head.end());
    for (std::size_t i = bi; bwd.nodes[i].position; i = bwd.nodes[i].parent)
      tail.push_back({ChainMoveKind::Factor, *bwd.nodes[i].position});
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };

  int used = 0;
  while (used < depth) {
    const bool forward = !fwd.frontier.empty() &&
                         (bwd.frontier.empty() || fwd.frontier.size() <= bwd.frontier.size());
    if (fwd.frontier.empty() && bwd.frontier.empty()) break;
    Side& side = forward ? fwd : bwd;
    Side& other = forward ? bwd : fwd;
    std::vector<std::size_t> next;
    for (std::size_t id : side.frontier) {
      const RelationChain cur = side.nodes[id].chain;
      for (std::size_t p = 0; p + 1 < cur.steps.size(); ++p) {
        if (!is_embedded(cur.steps[p], cur.steps[p + 1]).embedded) continue;
        FiniteRelation comp = geometric_compose(cur.steps[p], cur.steps[p + 1]);
        reg.record(comp, cur.steps[p], cur.steps[p + 1]);
        RelationChain nc{cur.source, cur.target, {}};
        nc.steps.assign(cur.steps.begin(), cur.steps.begin() + long(p));
        nc.steps.push_back(std::move(comp));
        nc.steps.insert(nc.steps.end(), cur.steps.begin() + long(p + 2), cur.steps.end());
        if (side.find(nc)) continue;
        side.nodes.push_back({nc, id, p});
        const std::size_t nid = side.nodes.size() - 1;
        side.index.emplace(nc.hash(), nid);
        next.push_back(nid);
        if (auto hit = other.find(nc)) return forward ? finish(nid, *hit) : finish(*hit, nid);
      }
    }
    side.frontier = std::move(next);
    ++used;
  }
  return std::nullopt;
}

CyclicChain CyclicChain::from_closed(const RelationChain& chain) {
  chain.validate();
  if (!same_set(chain.source, chain.target))
    raise(ErrorKind::EndpointMismatch, "cyclic chain must close up");
  if (chain.steps.empty()) return identity(chain.source);
  return CyclicChain{chain.steps};
}

CyclicChain CyclicChain::identity(const SetRef& set) { return CyclicChain{{FiniteRelation::diagonal(set)}}; }

void CyclicChain::validate() const {
  if (rels.empty()) raise(ErrorKind::EndpointMismatch, "cyclic chain needs at least one relation");
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (!same_set(rels[i].target(), rels[(i + 1) % rels.size()].source()))
      raise(ErrorKind::EndpointMismatch, "cyclic chain breaks after position " + std::to_string(i),
            {{"position", i}});
}

CyclicChain CyclicChain::rotate(std::size_t k) const {
  CyclicChain out;
  const std::size_t n = rels.size();
  for (std::size_t i = 0; i < n; ++i) out.rels.push_back(rels[(i + k) % n]);
  return out;
}

std::optional<std::size_t> GeneratorSet::find(std::span<const Index> t) const {
  if (t.size() != arity()) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = tuple(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(t.begin(), t.end(), tuple(lo).begin())) return lo;
  return std::nullopt;
}

GeneratorSet generator_set(const CyclicChain& c, const RunConfig& cfg) {
  c.validate();
  const std::size_t n = c.length();
  double estimate = double(c.rels[0].source()->size);
  for (const auto& r : c.rels)
    estimate *= std::max(1.0, double(r.size()) / double(std::max<std::size_t>(1, r.source()->size)));
  if (estimate > double(cfg.budget))
    raise(ErrorKind::ResourceLimit, "generator enumeration exceeds budget",
          {{"estimate", estimate}, {"budget", cfg.budget}});
  auto batches = parallel_map(c.rels[0].source()->size, cfg.workers, [&](std::size_t start) {
    std::vector<Index> out;
    std::vector<Index> t(n);
    t[0] = Index(start);
    auto rec = [&](auto&& self, std::size_t k) -> void {
      // t[0..k] fixed; extend along rels[k]
      if (k + 1 == n) {
        if (c.rels[k].contains(t[k], t[0])) out.insert(out.end(), t.begin(), t.end());
        return;
      }
      for (Index y : c.rels[k].image(t[k])) {
        t[k + 1] = y;
        self(self, k + 1);
      }
    };
    rec(rec, 0);
    return out;
  });
  GeneratorSet gs{c, {}};
  for (auto& b : batches) gs.flat.insert(gs.flat.end(), b.begin(), b.end());
  return gs;
}

std::vector<std::size_t> rotation_bijection(const GeneratorSet& before, const GeneratorSet& after,
                                            std::size_t k) {
  const std::size_t n = before.arity();
  if (after.arity() != n || after.size() != before.size())
    raise(ErrorKind::CyclicMismatch, "rotated generator sets differ in size");
  std::vector<std::size_t> map(before.size());
  std::vector<Index> t(n);
  for (std::size_t i = 0; i < before.size(); ++i) {
    auto src = before.tuple(i);
    for (std::size_t j = 0; j < n; ++j) t[j] = src[(j + k) % n];
    auto hit = after.find(t);
    if (!hit) raise(ErrorKind::CyclicMismatch, "rotated tuple missing", {{"index", i}});
    map[i] = *hit;
  }
  return map;
}

CyclicChain contract(const CyclicChain& c, std::size_t i) {
  c.validate();
  const std::size_t n = c.length();
  if (n < 2) raise(ErrorKind::EndpointMismatch, "contraction needs at least two relations");
  if (i >= n) raise(ErrorKind::EndpointMismatch, "contraction position out of range");
  const std::size_t j = (i + 1) % n;
  auto check = is_embedded(c.rels[i], c.rels[j]);
  if (!check.embedded)
    raise(ErrorKind::NotEmbedded, "relations " + std::to_string(i) + " and " + std::to_string(j) +
                                      " do not compose embeddedly",
          witness_json(*check.witness));
  FiniteRelation comp = geometric_compose(c.rels[i], c.rels[j]);
  CyclicChain out;
  if (j != 0) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i)
        out.rels.push_back(comp);
      else if (k != j)
        out.rels.push_back(c.rels[k]);
    }
  } else {
    // dropping node 0: start at node 1, the composite closes the cycle
    for (std::size_t k = 1; k + 1 < n; ++k) out.rels.push_back(c.rels[k]);
    out.rels.push_back(comp);
  }
  return out;
}

CompositionBijection composition_bijection(const CyclicChain& c, std::size_t i, const RunConfig& cfg) {
  CompositionBijection res;
  res.position = i;
  res.dropped_node = (i + 1) % c.length();
  res.contracted = contract(c, i);
  res.before = generator_set(c, cfg);
  res.after = generator_set(res.contracted, cfg);
  const std::size_t n = c.length();
  std::vector<bool> hit(res.after.size(), false);
  std::vector<Index> t;
  for (std::size_t k = 0; k < res.before.size(); ++k) {
    auto src = res.before.tuple(k);
    t.clear();
    for (std::size_t m = 0; m < n; ++m)
      if (m != res.dropped_node) t.push_back(src[m]);
    auto idx = res.after.find(t);
    if (!idx || hit[*idx])
      raise(ErrorKind::NotEmbedded, "coordinate deletion is not a bijection", {{"tuple", k}});
    hit[*idx] = true;
    res.forward.push_back(*idx);
  }
  if (res.forward.size() != res.after.size())
    raise(ErrorKind::NotEmbedded, "coordinate deletion is not surjective");
  return res;
}

}  // namespace floerkit
