#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "floerkit/automorphism.hpp"
#include "floerkit/config.hpp"

namespace floerkit {

struct BordObject {
  bool is_empty = false;
  int genus = 0;

  static BordObject empty() { return {true, 0}; }
  static BordObject surface(int g) { return {false, g}; }
  bool operator==(const BordObject&) const = default;
  std::string to_string() const;
};

/// The circle ψ(a₁) on Σ_g, g = ψ.genus().
struct AttachingCircle {
  SurfaceAutomorphism psi;

  int genus() const { return psi.genus(); }
  Word word() const { return psi.image(1); }
};

enum class StepKind { Cyl, Attach2, Attach1, Cap3, Cap0 };

std::string to_string(StepKind kind);
StepKind step_kind_from_string(const std::string& s);

/// Cyl(φ): Σ_g→Σ_g; Attach2(ψ): Σ_g→Σ_{g−1}; Attach1(ψ): Σ_{g−1}→Σ_g; Cap3: Σ₀→∅; Cap0: ∅→Σ₀.
/// For attachments the automorphism is the circle's transport ψ on Σ_g.
struct SimpleCobordism {
  StepKind kind;
  std::optional<SurfaceAutomorphism> automorphism;

  static SimpleCobordism cyl(SurfaceAutomorphism phi);
  static SimpleCobordism attach2(SurfaceAutomorphism psi);
  static SimpleCobordism attach1(SurfaceAutomorphism psi);
  static SimpleCobordism cap3();
  static SimpleCobordism cap0();

  /// Genus of the larger boundary surface (0 for caps).
  int genus() const;
  BordObject source() const;
  BordObject target() const;
  SimpleCobordism adjoint() const;
  bool equivalent(const SimpleCobordism& other) const;
  std::string describe() const;
};

struct CobordismChain {
  BordObject source;
  BordObject target;
  std::vector<SimpleCobordism> steps;

  static CobordismChain identity(BordObject obj) { return {obj, obj, {}}; }
  static CobordismChain from_steps(std::vector<SimpleCobordism> steps);
  void validate() const;
  bool equivalent(const CobordismChain& other) const;
  std::uint64_t fingerprint() const;
  std::string describe() const;
};

CobordismChain chain_compose(const CobordismChain& c1, const CobordismChain& c2);
CobordismChain chain_adjoint(const CobordismChain& c);

enum class MoveKind { CylMerge, CylSplit, CylAbsorbPre, CylAbsorbPost, CritCancel, CritCreate, CritSwitch };

std::string to_string(MoveKind kind);

/// A Cerf move at `position`. Parameters by kind:
///   CylSplit: params[0] = θ, giving (Cyl θ, Cyl(θ⁻¹ then φ)).
///   CylAbsorbPre/Post: variant 0 absorbs the cylinder; variant 1 expands with params[0] = θ.
///   CritCreate: params[0] = ψ, params[1] = crossing transport ε (S or S⁻¹).
///   CritSwitch: variant 1 (Attach2,Attach2), 2 (Attach1,Attach1), 3 (Attach1,Attach2) → reduced,
///     4 reduced → (Attach1,Attach2); params[0] = ε (swap or its inverse), params[1] = ψ for 4.
struct CerfMove {
  MoveKind kind;
  std::size_t position = 0;
  int variant = 0;
  std::vector<SurfaceAutomorphism> params;

  std::string describe() const;
};

/// Canonical configurations of a circle pair on Σ_g, detected from χ = ψ_α⁻¹∘ψ_β.
enum class PairConfig { None, Crossing, Disjoint };
PairConfig classify_pair(const SurfaceAutomorphism& psi_alpha, const SurfaceAutomorphism& psi_beta);

/// Canonical transports used by the configurations.
std::vector<SurfaceAutomorphism> crossing_transports(int genus);
std::vector<SurfaceAutomorphism> disjoint_transports(int genus);

CobordismChain cerf_apply(const CobordismChain& c, const CerfMove& m);

struct Neighbor {
  CerfMove move;
  CobordismChain chain;
};

std::vector<Neighbor> cerf_neighbors(const CobordismChain& c);

std::optional<std::vector<CerfMove>> cerf_connected(const CobordismChain& c1,
                                                    const CobordismChain& c2, int depth,
                                                    const RunConfig& cfg = {});

}  // namespace floerkit
