#include "floerkit/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "floerkit/error.hpp"

namespace floerkit {

namespace {

using Table = std::vector<std::vector<int>>;

std::size_t find_identity(const Table& t) {
  const std::size_t n = t.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = t[e][x] == int(x) && t[x][e] == int(x);
    if (ok) return e;
  }
  raise(ErrorKind::NoIdentity, "no two-sided identity element");
}

Table permutation_table(const std::vector<std::vector<int>>& perms) {
  // product a*b means: apply a, then b
  const std::size_t n = perms.size();
  Table t(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> c(perms[a].size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[b][perms[a][i]];
      t[a][b] = int(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return t;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(const Table& table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) raise(ErrorKind::MalformedTable, "empty table");
  if (n > 65535) raise(ErrorKind::MalformedTable, "group order too large");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      raise(ErrorKind::MalformedTable, "row " + std::to_string(i) + " has wrong length",
            {{"row", i}});
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] < 0 || std::size_t(table[i][j]) >= n)
        raise(ErrorKind::MalformedTable, "entry out of range", {{"row", i}, {"col", j}});
  }
  const std::size_t e = find_identity(table);
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < n && !found; ++y)
      found = table[x][y] == int(e) && table[y][x] == int(e);
    if (!found)
      raise(ErrorKind::NoInverse, "element " + std::to_string(x) + " has no inverse",
            {{"element", x}});
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const int xy = table[x][y];
      for (std::size_t z = 0; z < n; ++z)
        if (table[xy][z] != table[x][table[y][z]])
          raise(ErrorKind::NonAssociative,
                "(xy)z != x(yz) at (" + std::to_string(x) + "," + std::to_string(y) + "," +
                    std::to_string(z) + ")",
                {{"x", x}, {"y", y}, {"z", z}});
    }

  // swap labels 0 and e
  std::vector<std::size_t> relabel(n);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::swap(relabel[0], relabel[e]);

  FiniteGroup g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.mul_.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      g.mul_[relabel[x] * n + relabel[y]] = Element(relabel[table[x][y]]);
  g.inv_.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (g.mul_[x * n + y] == 0) g.inv_[x] = Element(y);
  for (std::size_t x = 0; x < n && g.abelian_; ++x)
    for (std::size_t y = 0; y < n && g.abelian_; ++y)
      g.abelian_ = g.mul_[x * n + y] == g.mul_[y * n + x];

  g.class_of_.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (g.class_of_[x] != n) continue;
    std::vector<Element> cls;
    for (std::size_t h = 0; h < n; ++h) cls.push_back(g.conj(Element(x), Element(h)));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (Element y : cls) g.class_of_[y] = g.classes_.size();
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

Element FiniteGroup::power(Element x, long n) const {
  if (n < 0) return power(inv_[x], -n);
  Element acc = 0;
  for (long i = 0; i < n; ++i) acc = mul(acc, x);
  return acc;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  Table t(n_, std::vector<int>(n_));
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) t[x][y] = mul_[x * n_ + y];
  return t;
}

FiniteGroup cyclic_group(std::size_t n) {
  Table t(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = int((a + b) % n);
  return FiniteGroup::from_table(t, "Z" + std::to_string(n));
}

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return FiniteGroup::from_table(permutation_table(perms), "S" + std::to_string(n));
}

FiniteGroup dihedral_group(std::size_t n) {
  // symmetries of the n-gon as permutations of vertices
  std::vector<std::vector<int>> perms;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<int> rot(n), ref(n);
    for (std::size_t i = 0; i < n; ++i) {
      rot[i] = int((i + r) % n);
      ref[i] = int((n + r - i) % n);
    }
    perms.push_back(rot);
    perms.push_back(ref);
  }
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  return FiniteGroup::from_table(permutation_table(perms), "D" + std::to_string(n));
}

FiniteGroup quaternion_group() {
  // elements: ±1, ±i, ±j, ±k encoded as sign*4 + unit with unit 0=1,1=i,2=j,3=k
  static constexpr std::array<std::array<int, 4>, 4> unit = {{
      {0, 1, 2, 3}, {1, 4 + 0, 3, 4 + 2}, {2, 4 + 3, 4 + 0, 1}, {3, 2, 4 + 1, 4 + 0}}};
  Table t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int u = unit[a % 4][b % 4];
      int sign = (a / 4) ^ (b / 4) ^ (u / 4);
      t[a][b] = sign * 4 + u % 4;
    }
  return FiniteGroup::from_table(t, "Q8");
}

FiniteGroup klein_four_group() {
  Table t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return FiniteGroup::from_table(t, "V4");
}

FiniteGroup builtin_group(const std::string& name) {
  auto number = [&](std::size_t from) -> std::size_t {
    if (name.size() <= from) return 0;
    std::size_t v = 0;
    for (std::size_t i = from; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return 0;
      v = v * 10 + std::size_t(name[i] - '0');
    }
    return v;
  };
  if (name == "Q8") return quaternion_group();
  if (name == "V4") return klein_four_group();
  if (!name.empty() && name[0] == 'Z' && number(1) >= 1) return cyclic_group(number(1));
  if (!name.empty() && name[0] == 'S' && number(1) >= 1 && number(1) <= 5)
    return symmetric_group(number(1));
  if (!name.empty() && name[0] == 'D' && number(1) >= 3) return dihedral_group(number(1));
  raise(ErrorKind::ParseError, "unknown built-in group '" + name + "'");
}

}  // namespace floerkit
