#include "floerkit/word.hpp"

#include <cstdlib>

#include "floerkit/error.hpp"

namespace floerkit {

namespace {

void check_letters(const Word& w) {
  for (int l : w.letters)
    if (l == 0 || std::abs(l) > 2 * w.genus)
      raise(ErrorKind::GenusMismatch,
            "letter " + std::to_string(l) + " outside genus " + std::to_string(w.genus));
}

std::vector<int> free_reduce(const std::vector<int>& in) {
  std::vector<int> out;
  out.reserve(in.size());
  for (int l : in) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::vector<int> cyclic_reduce(std::vector<int> v) {
  v = free_reduce(v);
  std::size_t lo = 0, hi = v.size();
  while (hi - lo >= 2 && v[lo] == -v[hi - 1]) {
    ++lo;
    --hi;
  }
  return {v.begin() + long(lo), v.begin() + long(hi)};
}

std::vector<int> inverse_letters(const std::vector<int>& v) {
  std::vector<int> out(v.rbegin(), v.rend());
  for (int& l : out) l = -l;
  return out;
}

// all cyclic rotations of R_g and R_g⁻¹
std::vector<std::vector<int>> symmetrized_relators(int genus) {
  std::vector<std::vector<int>> out;
  const auto r = surface_relator(genus).letters;
  for (const auto& base : {r, inverse_letters(r)})
    for (std::size_t s = 0; s < base.size(); ++s) {
      std::vector<int> rot(base.begin() + long(s), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + long(s));
      out.push_back(std::move(rot));
    }
  return out;
}

bool dehn_trivial(std::vector<int> cur, int genus) {
  const auto rels = symmetrized_relators(genus);
  const std::size_t rlen = std::size_t(4 * genus);
  const std::size_t half = std::size_t(2 * genus);
  cur = cyclic_reduce(cur);
  while (!cur.empty()) {
    const std::size_t n = cur.size();
    bool shortened = false;
    for (std::size_t p = 0; p < n && !shortened; ++p) {
      for (const auto& r : rels) {
        std::size_t len = 0;
        while (len < n && len < rlen && cur[(p + len) % n] == r[len]) ++len;
        if (len <= half) continue;
        // cyclic subword r[0..len) becomes the inverse of r[len..)
        std::vector<int> next;
        for (std::size_t k = rlen; k > len; --k) next.push_back(-r[k - 1]);
        for (std::size_t k = len; k < n; ++k) next.push_back(cur[(p + k) % n]);
        cur = cyclic_reduce(next);
        shortened = true;
        break;
      }
    }
    if (!shortened) return false;
  }
  return true;
}

}  // namespace

Word make_word(int genus, const std::vector<std::pair<int, int>>& gen_exp) {
  Word w{genus, {}};
  for (auto [gen, exp] : gen_exp) {
    if (exp == 0) continue;
    const int l = exp > 0 ? gen : -gen;
    for (int i = 0; i < std::abs(exp); ++i) w.letters.push_back(l);
  }
  check_letters(w);
  return w;
}

std::vector<std::pair<int, int>> word_pairs(const Word& w) {
  std::vector<std::pair<int, int>> out;
  for (int l : w.letters) out.emplace_back(std::abs(l), l > 0 ? 1 : -1);
  return out;
}

Word word_reduce_free(const Word& w) { return {w.genus, free_reduce(w.letters)}; }

Word word_cyclic_reduce(const Word& w) { return {w.genus, cyclic_reduce(w.letters)}; }

Word word_inverse(const Word& w) { return {w.genus, inverse_letters(w.letters)}; }

Word word_concat(const Word& u, const Word& v) {
  if (u.genus != v.genus) raise(ErrorKind::GenusMismatch, "concatenating words of different genus");
  Word w{u.genus, u.letters};
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

std::vector<long> word_abelianization(const Word& w) {
  std::vector<long> v(std::size_t(2 * w.genus), 0);
  for (int l : w.letters) v[std::size_t(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return v;
}

bool free_conjugate_test(const Word& u, const Word& v) {
  const auto cu = cyclic_reduce(u.letters);
  const auto cv = cyclic_reduce(v.letters);
  if (cu.size() != cv.size()) return false;
  if (cu.empty()) return true;
  const std::size_t n = cu.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool same = true;
    for (std::size_t k = 0; k < n && same; ++k) same = cu[(s + k) % n] == cv[k];
    if (same) return true;
  }
  return false;
}

Element word_eval(const Word& w, std::span<const Element> assignment, const FiniteGroup& g) {
  if (assignment.size() != std::size_t(2 * w.genus))
    raise(ErrorKind::GenusMismatch, "assignment length " + std::to_string(assignment.size()) +
                                        " for genus " + std::to_string(w.genus));
  Element acc = FiniteGroup::identity();
  for (int l : w.letters) {
    const Element x = assignment[std::size_t(std::abs(l) - 1)];
    acc = g.mul(acc, l > 0 ? x : g.inv(x));
  }
  return acc;
}

Word surface_relator(int genus) {
  Word w{genus, {}};
  for (int i = 1; i <= genus; ++i) {
    w.letters.push_back(gen_a(i));
    w.letters.push_back(gen_b(i));
    w.letters.push_back(-gen_a(i));
    w.letters.push_back(-gen_b(i));
  }
  return w;
}

bool surface_word_trivial(const Word& w) {
  check_letters(w);
  if (w.genus == 0) return true;
  if (w.genus == 1) {
    for (long c : word_abelianization(w))
      if (c != 0) return false;
    return true;
  }
  return dehn_trivial(w.letters, w.genus);
}

bool surface_word_equal(const Word& u, const Word& v) {
  if (u.genus != v.genus) return false;
  return surface_word_trivial(word_concat(u, word_inverse(v)));
}

Word word_substitute(const Word& w, const std::vector<Word>& images, int target_genus) {
  if (images.size() != std::size_t(2 * w.genus))
    raise(ErrorKind::GenusMismatch, "substitution needs one image per generator");
  std::vector<int> out;
  for (int l : w.letters) {
    const Word& img = images[std::size_t(std::abs(l) - 1)];
    if (l > 0)
      out.insert(out.end(), img.letters.begin(), img.letters.end());
    else
      for (auto it = img.letters.rbegin(); it != img.letters.rend(); ++it) out.push_back(-*it);
  }
  return {target_genus, free_reduce(out)};
}

std::string word_to_string(const Word& w) {
  if (w.letters.empty()) return "1";
  std::string s;
  for (int l : w.letters) {
    if (!s.empty()) s += ' ';
    const int k = std::abs(l);
    s += (k % 2 == 1 ? 'a' : 'b');
    s += std::to_string((k + 1) / 2);
    if (l < 0) s += "^-1";
  }
  return s;
}

}  // namespace floerkit
