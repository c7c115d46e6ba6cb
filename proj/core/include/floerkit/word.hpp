#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floerkit/group.hpp"

namespace floerkit {

/// Word over a₁,b₁,…,a_g,b_g. A letter is ±k with k in 1..2g (a_i = 2i−1, b_i = 2i),
/// the sign being the exponent.
struct Word {
  int genus = 0;
  std::vector<int> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

constexpr int gen_a(int i) { return 2 * i - 1; }
constexpr int gen_b(int i) { return 2 * i; }

/// Builds a word from (generator index, exponent) pairs; exponents may exceed ±1.
Word make_word(int genus, const std::vector<std::pair<int, int>>& gen_exp);
std::vector<std::pair<int, int>> word_pairs(const Word& w);

Word word_reduce_free(const Word& w);
Word word_cyclic_reduce(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& u, const Word& v);
std::vector<long> word_abelianization(const Word& w);

/// True iff the cyclically reduced forms are cyclic rotations of each other.
bool free_conjugate_test(const Word& u, const Word& v);

Element word_eval(const Word& w, std::span<const Element> assignment, const FiniteGroup& g);

/// ∏ a_i b_i a_i⁻¹ b_i⁻¹
Word surface_relator(int genus);

/// Word problem in π₁(Σ_g): abelianization for g = 1, Dehn's algorithm for g ≥ 2.
bool surface_word_trivial(const Word& w);
bool surface_word_equal(const Word& u, const Word& v);

/// Substitutes images[k−1] (or its inverse) for each letter ±k, then reduces.
Word word_substitute(const Word& w, const std::vector<Word>& images, int target_genus);

std::string word_to_string(const Word& w);

}  // namespace floerkit
