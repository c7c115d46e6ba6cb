#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace floerkit {

using Element = std::uint16_t;

/// Finite group given by its Cayley table. Element 0 is the identity.
class FiniteGroup {
 public:
  /// Validates and re-indexes so that the identity becomes element 0.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table, std::string name = "");

  std::size_t order() const { return n_; }
  const std::string& name() const { return name_; }

  static constexpr Element identity() { return 0; }
  Element mul(Element a, Element b) const { return mul_[std::size_t(a) * n_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  /// g⁻¹ x g
  Element conj(Element x, Element g) const { return mul(mul(inv_[g], x), g); }
  Element power(Element x, long n) const;
  Element commutator(Element a, Element b) const { return mul(mul(a, b), mul(inv_[a], inv_[b])); }

  const std::vector<std::vector<Element>>& classes() const { return classes_; }
  std::size_t class_of(Element x) const { return class_of_[x]; }
  std::size_t class_count() const { return classes_.size(); }
  bool is_abelian() const { return abelian_; }

  std::vector<std::vector<int>> table() const;

 private:
  std::size_t n_ = 0;
  std::string name_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  std::vector<std::vector<Element>> classes_;
  std::vector<std::size_t> class_of_;
  bool abelian_ = true;
};

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup symmetric_group(std::size_t n);
FiniteGroup dihedral_group(std::size_t n);  // order 2n
FiniteGroup quaternion_group();
FiniteGroup klein_four_group();

/// Names: Zn, Sn (n ≤ 5), Dn, Q8, V4.
FiniteGroup builtin_group(const std::string& name);

}  // namespace floerkit
