#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "floerkit/bordism.hpp"
#include "floerkit/relcat.hpp"
#include "floerkit/repvar.hpp"

namespace floerkit {

struct Certificate {
  std::string check;
  std::string instance;
  bool pass = false;
  nlohmann::json witness;

  nlohmann::json to_json() const;
};

struct CertificateReport {
  std::vector<Certificate> entries;

  bool all_pass() const;
  std::size_t failures() const;
  nlohmann::json to_json() const;
};

/// Object and simple-morphism maps over a fixed group, plus verified certificates.
class PartialFunctorSpec {
 public:
  explicit PartialFunctorSpec(FiniteGroup g, RunConfig cfg = {});

  RepContext& context() { return *ctx_; }
  const FiniteGroup& group() const { return ctx_->group(); }
  const RunConfig& config() const { return ctx_->config(); }

  SetRef object(const BordObject& obj) { return ctx_->variety(obj)->set(); }
  FiniteRelation morphism(const SimpleCobordism& s) { return ctx_->simple(s); }

  void record(const std::vector<Certificate>& certs);
  std::vector<Certificate> certificates() const;

 private:
  std::unique_ptr<RepContext> ctx_;
  mutable std::mutex mu_;
  std::vector<Certificate> registry_;
};

struct FunctorValue {
  SetRef source;
  SetRef target;
  RelationChain chain;
  /// Present when every successive composition is embedded.
  std::optional<FiniteRelation> composed;
};

FunctorValue functor_eval(PartialFunctorSpec& spec, const CobordismChain& c);

/// Steps 4 to 6: equivariance, disjoint-pair identities, single-intersection identity.
CertificateReport verify_cerf_compatibility(PartialFunctorSpec& spec, int genus);

struct ClosedInvariant {
  GeneratorSet generators;
  std::size_t count() const { return generators.size(); }
};

ClosedInvariant closed_invariant(PartialFunctorSpec& spec, const CobordismChain& c);

/// Generators x₁…x_n; relators as words in ±k (k = 1…n).
struct Presentation {
  std::string name;
  int generators = 0;
  std::vector<std::vector<int>> relators;

  static Presentation trivial() { return {"trivial", 0, {}}; }
  static Presentation cyclic(int p) { return {"Z/" + std::to_string(p), 1, {std::vector<int>(std::size_t(p), 1)}}; }
  static Presentation free(int n) { return {"F" + std::to_string(n), n, {}}; }
  static Presentation surface(int genus);
  void validate() const;
};

/// |Hom(π, G)/G| by Burnside over all generator assignments.
std::uint64_t presentation_oracle(const FiniteGroup& g, const Presentation& p, const RunConfig& cfg = {});

struct ClosedFixture {
  std::string name;
  CobordismChain chain;
  Presentation presentation;
};

CobordismChain heegaard_chain(const std::vector<SurfaceAutomorphism>& alpha,
                              const std::vector<SurfaceAutomorphism>& beta);
ClosedFixture s3_fixture();
ClosedFixture s3_fixture_moved();
ClosedFixture s1s2_fixture();
ClosedFixture lens_fixture(int p, int q);
ClosedFixture connected_sum_fixture();
ClosedFixture connected_sum_swapped_fixture();
ClosedFixture s3_genus2_fixture();
std::vector<ClosedFixture> closed_fixtures();

/// Certificate that a Cerf move preserves the generator set of a closed chain:
/// both windows are contracted to a common cyclic chain by composition bijections.
struct MoveCertificate {
  CerfMove move;
  bool pass = false;
  nlohmann::json witness;
  /// before index → after index
  std::vector<std::size_t> bijection;
};

MoveCertificate certify_move(PartialFunctorSpec& spec, const CobordismChain& before, const CerfMove& move);

}  // namespace floerkit
