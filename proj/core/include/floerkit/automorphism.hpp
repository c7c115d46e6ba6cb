#pragma once

#include <string>
#include <vector>

#include "floerkit/group.hpp"
#include "floerkit/word.hpp"

namespace floerkit {

/// Automorphism of π₁(Σ_g) given by generator images and inverse images.
/// Construction rejects anything that is not an orientation-preserving automorphism.
class SurfaceAutomorphism {
 public:
  SurfaceAutomorphism(int genus, std::vector<Word> images, std::vector<Word> inverse_images,
                      std::string name = "");

  int genus() const { return genus_; }
  const std::string& name() const { return name_; }
  const std::vector<Word>& images() const { return images_; }
  const std::vector<Word>& inverse_images() const { return inverse_images_; }
  /// k in 1..2g
  const Word& image(int k) const { return images_[std::size_t(k - 1)]; }
  const Word& inverse_image(int k) const { return inverse_images_[std::size_t(k - 1)]; }

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  SurfaceAutomorphism inverse() const;
  SurfaceAutomorphism renamed(std::string name) const;

  /// Equality in Aut(π₁Σ_g), decided generator by generator by the word problem.
  bool equivalent(const SurfaceAutomorphism& other) const;
  bool is_identity() const;

 private:
  int genus_;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
  std::string name_;
};

/// g ↦ ψ(φ(g)): first φ, then ψ.
SurfaceAutomorphism automorphism_compose(const SurfaceAutomorphism& phi,
                                         const SurfaceAutomorphism& psi);
SurfaceAutomorphism automorphism_power(const SurfaceAutomorphism& phi, int n);

/// Checks that ρ ↦ ρ∘φ⁻¹ permutes Hom(π₁Σ_g, G) with inverse ρ ↦ ρ∘φ.
bool hom_action_consistent(const SurfaceAutomorphism& phi, const FiniteGroup& g);

namespace autos {

SurfaceAutomorphism identity(int genus);
/// Twist along a_i: b_i ↦ b_i a_i (the genus-1 T-move).
SurfaceAutomorphism twist_a(int genus, int i);
/// Twist along b_i: a_i ↦ a_i b_i.
SurfaceAutomorphism twist_b(int genus, int i);
/// Genus 1: a ↦ b, b ↦ a⁻¹. Higher genus, on handle i: a_i ↦ a_i b_i a_i⁻¹, b_i ↦ a_i⁻¹.
SurfaceAutomorphism s_move(int genus, int i);
/// Exchanges handles i and i+1: a_i ↦ a_{i+1}, b_i ↦ b_{i+1}, and the old handle i+1
/// moves to handle i conjugated by c = [a_{i+1}, b_{i+1}].
SurfaceAutomorphism handle_swap(int genus, int i);
/// ψ with ψ(a₁) homologous to q·a₁ + p·b₁, built from twists by a Euclid recursion (genus 1).
SurfaceAutomorphism lens_transport(int p, int q);

/// Parses names like "id", "S1", "Ta2^-1", "Tb1^3", "swap1", "S1*Ta1" (left factor applied
/// first).
SurfaceAutomorphism by_name(int genus, const std::string& name);

/// Library used for neighbor generation and transport sweeps.
std::vector<SurfaceAutomorphism> library(int genus);

}  // namespace autos

}  // namespace floerkit
