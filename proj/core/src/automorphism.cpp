#include "floerkit/automorphism.hpp"

#include <cstdlib>
#include <functional>

#include "floerkit/error.hpp"

namespace floerkit {

namespace {

Word gen_word(int genus, int letter) { return Word{genus, {letter}}; }

nlohmann::json word_json(const Word& w) {
  nlohmann::json j = nlohmann::json::array();
  for (auto [g, e] : word_pairs(w)) j.push_back({g, e});
  return j;
}

}  // namespace

SurfaceAutomorphism::SurfaceAutomorphism(int genus, std::vector<Word> images,
                                         std::vector<Word> inverse_images, std::string name)
    : genus_(genus),
      images_(std::move(images)),
      inverse_images_(std::move(inverse_images)),
      name_(std::move(name)) {
  if (genus < 0) raise(ErrorKind::GenusMismatch, "negative genus");
  const std::size_t n = std::size_t(2 * genus);
  if (images_.size() != n || inverse_images_.size() != n)
    raise(ErrorKind::GenusMismatch, "automorphism needs 2g images and 2g inverse images");
  for (auto* list : {&images_, &inverse_images_})
    for (auto& w : *list) {
      if (w.genus != genus) raise(ErrorKind::GenusMismatch, "image word has wrong genus");
      w = word_reduce_free(w);
      for (int l : w.letters)
        if (l == 0 || std::abs(l) > 2 * genus)
          raise(ErrorKind::GenusMismatch, "letter outside alphabet");
    }
  const Word r = surface_relator(genus);
  if (!free_conjugate_test(apply(r), r))
    raise(ErrorKind::InvalidAutomorphism,
          "image of the surface relator is not conjugate to the relator",
          {{"automorphism", name_}, {"image", word_json(apply(r))}});
  if (!free_conjugate_test(apply_inverse(r), r))
    raise(ErrorKind::InvalidAutomorphism,
          "inverse image of the surface relator is not conjugate to the relator",
          {{"automorphism", name_}});
  for (int k = 1; k <= 2 * genus; ++k) {
    const Word x = gen_word(genus, k);
    if (!surface_word_equal(apply(inverse_image(k)), x))
      raise(ErrorKind::InvalidAutomorphism, "φ(φ⁻¹(x)) != x",
            {{"automorphism", name_}, {"generator", k}});
    if (!surface_word_equal(apply_inverse(image(k)), x))
      raise(ErrorKind::InvalidAutomorphism, "φ⁻¹(φ(x)) != x",
            {{"automorphism", name_}, {"generator", k}});
  }
}

Word SurfaceAutomorphism::apply(const Word& w) const {
  if (w.genus != genus_) raise(ErrorKind::GenusMismatch, "word genus differs from automorphism");
  return word_substitute(w, images_, genus_);
}

Word SurfaceAutomorphism::apply_inverse(const Word& w) const {
  if (w.genus != genus_) raise(ErrorKind::GenusMismatch, "word genus differs from automorphism");
  return word_substitute(w, inverse_images_, genus_);
}

SurfaceAutomorphism SurfaceAutomorphism::inverse() const {
  std::string n = name_.empty() ? "" : "(" + name_ + ")^-1";
  return SurfaceAutomorphism(genus_, inverse_images_, images_, n);
}

SurfaceAutomorphism SurfaceAutomorphism::renamed(std::string name) const {
  SurfaceAutomorphism copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool SurfaceAutomorphism::equivalent(const SurfaceAutomorphism& other) const {
  if (genus_ != other.genus_) return false;
  for (int k = 1; k <= 2 * genus_; ++k)
    if (!surface_word_equal(image(k), other.image(k))) return false;
  return true;
}

bool SurfaceAutomorphism::is_identity() const {
  for (int k = 1; k <= 2 * genus_; ++k)
    if (!surface_word_equal(image(k), gen_word(genus_, k))) return false;
  return true;
}

SurfaceAutomorphism automorphism_compose(const SurfaceAutomorphism& phi,
                                         const SurfaceAutomorphism& psi) {
  if (phi.genus() != psi.genus())
    raise(ErrorKind::GenusMismatch, "composing automorphisms of different genus");
  const int g = phi.genus();
  std::vector<Word> img, inv;
  for (int k = 1; k <= 2 * g; ++k) {
    img.push_back(psi.apply(phi.image(k)));
    inv.push_back(phi.apply_inverse(psi.inverse_image(k)));
  }
  std::string name;
  if (phi.name().empty() || phi.name() == "id")
    name = psi.name();
  else if (psi.name().empty() || psi.name() == "id")
    name = phi.name();
  else
    name = phi.name() + "*" + psi.name();
  return SurfaceAutomorphism(g, std::move(img), std::move(inv), name);
}

SurfaceAutomorphism automorphism_power(const SurfaceAutomorphism& phi, int n) {
  SurfaceAutomorphism base = n < 0 ? phi.inverse() : phi;
  SurfaceAutomorphism acc = autos::identity(phi.genus());
  for (int i = 0; i < std::abs(n); ++i) acc = automorphism_compose(acc, base);
  return acc;
}

bool hom_action_consistent(const SurfaceAutomorphism& phi, const FiniteGroup& g) {
  const int genus = phi.genus();
  const std::size_t len = std::size_t(2 * genus);
  const Word rel = surface_relator(genus);
  std::vector<Element> rho(len, 0);
  const std::size_t n = g.order();
  // odometer over G^{2g}
  while (true) {
    if (word_eval(rel, rho, g) == FiniteGroup::identity()) {
      std::vector<Element> pushed(len), back(len);
      for (int k = 1; k <= 2 * genus; ++k)
        pushed[std::size_t(k - 1)] = word_eval(phi.inverse_image(k), rho, g);
      if (word_eval(rel, pushed, g) != FiniteGroup::identity()) return false;
      for (int k = 1; k <= 2 * genus; ++k)
        back[std::size_t(k - 1)] = word_eval(phi.image(k), pushed, g);
      if (back != rho) return false;
    }
    std::size_t i = 0;
    while (i < len && ++rho[i] == n) rho[i++] = 0;
    if (i == len) break;
  }
  return true;
}

namespace autos {

namespace {

std::vector<Word> generators(int genus) {
  std::vector<Word> v;
  for (int k = 1; k <= 2 * genus; ++k) v.push_back(gen_word(genus, k));
  return v;
}

void check_handle(int genus, int i, int span = 1) {
  if (i < 1 || i + span - 1 > genus)
    raise(ErrorKind::GenusMismatch,
          "handle " + std::to_string(i) + " out of range for genus " + std::to_string(genus));
}

}  // namespace

SurfaceAutomorphism identity(int genus) {
  return SurfaceAutomorphism(genus, generators(genus), generators(genus), "id");
}

SurfaceAutomorphism twist_a(int genus, int i) {
  check_handle(genus, i);
  auto img = generators(genus), inv = generators(genus);
  const int a = gen_a(i), b = gen_b(i);
  img[std::size_t(b - 1)] = Word{genus, {b, a}};
  inv[std::size_t(b - 1)] = Word{genus, {b, -a}};
  return SurfaceAutomorphism(genus, img, inv, "Ta" + std::to_string(i));
}

SurfaceAutomorphism twist_b(int genus, int i) {
  check_handle(genus, i);
  auto img = generators(genus), inv = generators(genus);
  const int a = gen_a(i), b = gen_b(i);
  img[std::size_t(a - 1)] = Word{genus, {a, b}};
  inv[std::size_t(a - 1)] = Word{genus, {a, -b}};
  return SurfaceAutomorphism(genus, img, inv, "Tb" + std::to_string(i));
}

SurfaceAutomorphism s_move(int genus, int i) {
  check_handle(genus, i);
  auto img = generators(genus), inv = generators(genus);
  const int a = gen_a(i), b = gen_b(i);
  const std::size_t ia = std::size_t(a - 1), ib = std::size_t(b - 1);
  if (genus == 1) {
    img[ia] = Word{genus, {b}};
    img[ib] = Word{genus, {-a}};
    inv[ia] = Word{genus, {-b}};
    inv[ib] = Word{genus, {a}};
  } else {
    img[ia] = Word{genus, {a, b, -a}};
    img[ib] = Word{genus, {-a}};
    inv[ia] = Word{genus, {-b}};
    inv[ib] = Word{genus, {b, a, -b}};
  }
  return SurfaceAutomorphism(genus, img, inv, "S" + std::to_string(i));
}

SurfaceAutomorphism handle_swap(int genus, int i) {
  check_handle(genus, i, 2);
  auto img = generators(genus), inv = generators(genus);
  const int a1 = gen_a(i), b1 = gen_b(i), a2 = gen_a(i + 1), b2 = gen_b(i + 1);
  auto conj = [&](std::vector<int> c, int x) {
    // c⁻¹ x c
    std::vector<int> w;
    for (auto it = c.rbegin(); it != c.rend(); ++it) w.push_back(-*it);
    w.push_back(x);
    w.insert(w.end(), c.begin(), c.end());
    return Word{genus, w};
  };
  const std::vector<int> c2 = {a2, b2, -a2, -b2};
  const std::vector<int> c1_inv = {b1, a1, -b1, -a1};  // [a_i,b_i]⁻¹
  img[std::size_t(a1 - 1)] = Word{genus, {a2}};
  img[std::size_t(b1 - 1)] = Word{genus, {b2}};
  img[std::size_t(a2 - 1)] = conj(c2, a1);
  img[std::size_t(b2 - 1)] = conj(c2, b1);
  inv[std::size_t(a2 - 1)] = Word{genus, {a1}};
  inv[std::size_t(b2 - 1)] = Word{genus, {b1}};
  inv[std::size_t(a1 - 1)] = conj(c1_inv, a2);
  inv[std::size_t(b1 - 1)] = conj(c1_inv, b2);
  return SurfaceAutomorphism(genus, img, inv, "swap" + std::to_string(i));
}

SurfaceAutomorphism lens_transport(int p, int q) {
  long x = q, y = p;
  auto gcd = [](long u, long v) {
    while (v) {
      long t = u % v;
      u = v;
      v = t;
    }
    return u;
  };
  if (x < 0 || y < 0 || gcd(x, y) != 1)
    raise(ErrorKind::InvalidAutomorphism, "lens parameters must be coprime and non-negative");
  // factors X_1, X_2, ... with ψ = X_1 ∘ X_2 ∘ …
  std::vector<SurfaceAutomorphism> factors;
  while (!(x == 1 && y == 0)) {
    if (x == 0) {
      factors.push_back(s_move(1, 1));  // (0,1) = S(1,0)
      x = 1;
      y = 0;
    } else if (y >= x) {
      const long k = y / x;
      factors.push_back(automorphism_power(twist_b(1, 1), int(k)));
      y -= k * x;
    } else {
      const long k = (x - 1) / y;
      factors.push_back(automorphism_power(twist_a(1, 1), int(k)));
      x -= k * y;
    }
  }
  SurfaceAutomorphism acc = identity(1);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) acc = automorphism_compose(acc, *it);
  return acc.renamed("lens(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

SurfaceAutomorphism by_name(int genus, const std::string& full) {
  SurfaceAutomorphism acc = identity(genus);
  std::size_t start = 0;
  while (start <= full.size()) {
    std::size_t end = full.find('*', start);
    if (end == std::string::npos) end = full.size();
    std::string tok = full.substr(start, end - start);
    int power = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      try {
        power = std::stoi(tok.substr(caret + 1));
      } catch (...) {
        raise(ErrorKind::ParseError, "bad exponent in automorphism name '" + full + "'");
      }
      tok = tok.substr(0, caret);
    }
    auto index = [&](std::size_t from) {
      try {
        return std::stoi(tok.substr(from));
      } catch (...) {
        raise(ErrorKind::ParseError, "bad automorphism name '" + full + "'");
      }
    };
    SurfaceAutomorphism base = identity(genus);
    if (tok == "id" || tok.empty())
      base = identity(genus);
    else if (tok.rfind("Ta", 0) == 0)
      base = twist_a(genus, index(2));
    else if (tok.rfind("Tb", 0) == 0)
      base = twist_b(genus, index(2));
    else if (tok == "T")
      base = twist_a(genus, 1);
    else if (tok.rfind("swap", 0) == 0)
      base = handle_swap(genus, index(4));
    else if (tok == "S")
      base = s_move(genus, 1);
    else if (tok[0] == 'S')
      base = s_move(genus, index(1));
    else if (tok.rfind("lens", 0) == 0 && genus == 1) {
      auto comma = tok.find(',');
      try {
        base = lens_transport(std::stoi(tok.substr(5, comma - 5)), std::stoi(tok.substr(comma + 1)));
      } catch (const Error&) {
        throw;
      } catch (...) {
        raise(ErrorKind::ParseError, "bad lens parameters in '" + full + "'");
      }
    } else
      raise(ErrorKind::ParseError, "unknown automorphism '" + tok + "'");
    acc = automorphism_compose(acc, automorphism_power(base, power));
    start = end + 1;
  }
  return acc.renamed(full);
}

std::vector<SurfaceAutomorphism> library(int genus) {
  std::vector<SurfaceAutomorphism> lib{identity(genus)};
  if (genus == 0) return lib;
  for (int i = 1; i <= genus; ++i) {
    lib.push_back(s_move(genus, i));
    lib.push_back(twist_a(genus, i));
    lib.push_back(twist_b(genus, i));
  }
  for (int i = 1; i < genus; ++i) lib.push_back(handle_swap(genus, i));
  return lib;
}

}  // namespace autos

}  // namespace floerkit
