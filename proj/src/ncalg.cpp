#include "masterfield/ncalg.hpp"

#include <algorithm>

#include "masterfield/error.hpp"

namespace mf::ncalg {

Element Element::scalar(const Rational& c) {
  Element e;
  e.add({}, c);
  return e;
}

Element Element::generator(const Generator& g) { return word({g}); }

Element Element::word(const Word& w, const Rational& c) {
  Element e;
  e.add(w, c);
  return e;
}

Rational Element::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  Element out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  }
  return out;
}

Element operator*(const Rational& c, const Element& a) {
  Element out;
  for (const auto& [w, x] : a.terms_) out.add(w, c * x);
  return out;
}

std::string to_string(const Generator& g) {
  return std::string(g.star ? "u*[" : "u[") + std::to_string(g.row) + "," + std::to_string(g.col) + "," +
         std::to_string(g.copy) + "]";
}

std::string Element::dump() const {
  std::vector<std::string> lines;
  for (const auto& [w, c] : terms_) {
    std::string line = c.str();
    if (!w.empty()) {
      line += " *";
      for (const auto& g : w) line += " " + to_string(g);
    }
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

Element substitute(const Element& e, const std::function<Element(const Generator&)>& phi) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Element prod = Element::scalar(c);
    for (const auto& g : w) {
      prod = prod * phi(g);
      if (prod.is_zero()) break;
    }
    out += prod;
  }
  return out;
}

Element retag(const Element& e, const std::map<int, int>& tags) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Word r = w;
    for (auto& g : r) {
      auto it = tags.find(g.copy);
      if (it != tags.end()) g.copy = it->second;
    }
    out.add(r, c);
  }
  return out;
}

Element star(const Element& e) {
  Element out;
  for (const auto& [w, c] : e.terms()) {
    Word r(w.rbegin(), w.rend());
    for (auto& g : r) g.star = !g.star;
    out.add(r, c);
  }
  return out;
}

Element delta(const Generator& g, int n, int c1, int c2) {
  Element out;
  for (int k = 1; k <= n; ++k) {
    if (!g.star)
      out.add({u(g.row, k, c1), u(k, g.col, c2)}, 1);
    else
      out.add({ustar(k, g.col, c2), ustar(g.row, k, c1)}, 1);
  }
  return out;
}

Element delta(const Element& e, int n) {
  return substitute(e, [n](const Generator& g) { return delta(g, n); });
}

Element antipode(const Generator& g) { return Element::generator({!g.star, g.col, g.row, g.copy}); }

Element antipode(const Element& e) {
  return substitute(e, [](const Generator& g) { return antipode(g); });
}

Rational counit(const Generator& g) { return g.row == g.col ? 1 : 0; }

Rational counit(const Element& e) {
  Rational total = 0;
  for (const auto& [w, c] : e.terms()) {
    Rational p = c;
    for (const auto& g : w) p *= counit(g);
    total += p;
  }
  return total;
}

namespace {

Element on_copy(const Element& e, int copy, const std::function<Element(const Generator&)>& phi) {
  return substitute(e, [&](const Generator& g) { return g.copy == copy ? phi(g) : Element::generator(g); });
}

// Omega_c = (i1 |_| i2 |_| i1) o (id |_| S) o (Delta |_| id) o Delta, built
// from whatever structure maps are supplied.
Element omega_from(const ZhangStructure& zs, const Generator& g, int gauge, int field) {
  constexpr int A = 1001, B = 1002, C = 1003;
  Element e = zs.delta(g, A, B);
  e = retag(e, {{B, C}});
  e = on_copy(e, A, [&](const Generator& x) { return zs.delta(x, gauge, field); });
  e = on_copy(e, C, [&](const Generator& x) { return retag(zs.antipode(x), {{C, gauge}}); });
  return e;
}

std::vector<Generator> generators(int n) {
  std::vector<Generator> out;
  for (int s = 0; s < 2; ++s)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) out.push_back({s == 1, i, j, 0});
  return out;
}

bool try_reduce_once(Element& cur, int n) {
  for (const auto& [key, c] : cur.terms()) {
    for (std::size_t p = 0; p + 1 < key.size(); ++p) {
      const Word& w = key;
      const Generator a = w[p], b = w[p + 1];
      if (a.copy != b.copy) continue;
      int i, j;
      bool row_sum;  // sum_k u_ik u_jk^*  versus  sum_k u_ki^* u_kj
      if (!a.star && b.star && a.col == b.col) {
        row_sum = true;
        i = a.row;
        j = b.row;
      } else if (a.star && !b.star && a.row == b.row) {
        row_sum = false;
        i = a.col;
        j = b.col;
      } else {
        continue;
      }
      auto sibling = [&](int k) {
        Word s = w;
        s[p] = row_sum ? u(i, k, a.copy) : ustar(k, i, a.copy);
        s[p + 1] = row_sum ? ustar(j, k, a.copy) : u(k, j, a.copy);
        return s;
      };
      bool complete = true;
      for (int k = 1; k <= n && complete; ++k) complete = cur.terms().count(sibling(k)) != 0;
      if (!complete) continue;
      // Copies: the updates below may erase the entry `key` refers to.
      const Word word = key;
      const Rational alpha = c;
      auto sib = [&](int k) {
        Word s = word;
        s[p] = row_sum ? u(i, k, a.copy) : ustar(k, i, a.copy);
        s[p + 1] = row_sum ? ustar(j, k, a.copy) : u(k, j, a.copy);
        return s;
      };
      Word shortened(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p));
      shortened.insert(shortened.end(), word.begin() + static_cast<std::ptrdiff_t>(p) + 2, word.end());
      for (int k = 1; k <= n; ++k) cur.add(sib(k), -alpha);
      if (i == j) cur.add(shortened, alpha);
      return true;
    }
  }
  return false;
}

}  // namespace

Element omega_c(const Generator& g, int n, int gauge, int field) {
  return omega_from(dual_voiculescu(n), g, gauge, field);
}

Element unitarity_reduce(const Element& e, int n) {
  Element cur = e;
  while (try_reduce_once(cur, n)) {
  }
  return cur;
}

GeneratorImageMap::GeneratorImageMap(int n, std::function<Element(const Generator&)> image) : n_(n) {
  if (n < 1) throw Error("generator map: n must be at least 1");
  for (const auto& g : generators(n)) images_.push_back(image(g));
}

const Element& GeneratorImageMap::operator()(const Generator& g) const {
  if (g.row < 1 || g.row > n_ || g.col < 1 || g.col > n_)
    throw Error("generator map: " + to_string(g) + " out of range for n=" + std::to_string(n_));
  std::size_t idx = static_cast<std::size_t>(((g.star ? 1 : 0) * n_ + (g.row - 1)) * n_ + (g.col - 1));
  return images_[idx];
}

Element GeneratorImageMap::apply(const Element& e) const {
  return substitute(e, [this](const Generator& g) { return (*this)(g); });
}

GeneratorImageMap identity_map(int n, int copy) {
  return GeneratorImageMap(n, [copy](const Generator& g) { return Element::generator({g.star, g.row, g.col, copy}); });
}

GeneratorImageMap unit_map(int n) {
  return GeneratorImageMap(n, [](const Generator& g) { return Element::scalar(counit(g)); });
}

GeneratorImageMap compose_antipode(const GeneratorImageMap& f) {
  return GeneratorImageMap(f.n(), [&f](const Generator& g) { return f.apply(antipode(g)); });
}

GeneratorImageMap convolve(const GeneratorImageMap& f, const GeneratorImageMap& g) {
  if (f.n() != g.n())
    throw Error("convolve: mismatched n (" + std::to_string(f.n()) + " vs " + std::to_string(g.n()) + ")");
  const int n = f.n();
  return GeneratorImageMap(n, [&](const Generator& x) {
    Element out;
    for (int k = 1; k <= n; ++k) {
      if (!x.star)
        out += f(u(x.row, k)) * g(u(k, x.col));
      else
        out += g(ustar(k, x.col)) * f(ustar(x.row, k));
    }
    return out;
  });
}

ZhangStructure dual_voiculescu(int n) {
  if (n < 1) throw Error("dual Voiculescu group needs n >= 1");
  ZhangStructure zs;
  zs.n = n;
  zs.delta = [n](const Generator& g, int c1, int c2) { return delta(g, n, c1, c2); };
  zs.antipode = [](const Generator& g) { return antipode(g); };
  return zs;
}

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> axioms{Axiom::coassoc,        Axiom::counit_left,
                                         Axiom::counit_right,   Axiom::antipode_left,
                                         Axiom::antipode_right, Axiom::antipode_anticomorphism,
                                         Axiom::coaction_assoc, Axiom::coaction_counit,
                                         Axiom::delta_comodule};
  return axioms;
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::coassoc: return "coassoc";
    case Axiom::counit_left: return "counit_left";
    case Axiom::counit_right: return "counit_right";
    case Axiom::antipode_left: return "antipode_left";
    case Axiom::antipode_right: return "antipode_right";
    case Axiom::antipode_anticomorphism: return "antipode_anticomorphism";
    case Axiom::coaction_assoc: return "coaction_assoc";
    case Axiom::coaction_counit: return "coaction_counit";
    case Axiom::delta_comodule: return "delta_comodule";
  }
  return "?";
}

Axiom parse_axiom(const std::string& name) {
  for (Axiom a : all_axioms())
    if (to_string(a) == name) return a;
  throw Error("unknown axiom '" + name + "'");
}

namespace {

struct Sides {
  Element lhs;
  Element rhs;
};

// Both sides of an identity on one generator, for a given sidedness.
Sides sides(Axiom axiom, const ZhangStructure& zs, const Generator& g, bool right) {
  auto D = [&](int c1, int c2) { return [&zs, c1, c2](const Generator& x) { return zs.delta(x, c1, c2); }; };
  auto eps = [](const Generator& x) { return Element::scalar(counit(x)); };
  auto S = [&zs](const Generator& x) { return zs.antipode(x); };
  auto Om = [&zs](int gauge, int field) {
    return [&zs, gauge, field](const Generator& x) { return omega_from(zs, x, gauge, field); };
  };
  const Element gen = Element::generator(g);
  const Element base = zs.delta(g, 1, 2);
  switch (axiom) {
    case Axiom::coassoc:
      return {on_copy(retag(base, {{2, 3}}), 1, D(1, 2)), on_copy(base, 2, D(2, 3))};
    case Axiom::counit_left:
      return {retag(on_copy(base, 1, eps), {{2, 0}}), gen};
    case Axiom::counit_right:
      return {retag(on_copy(base, 2, eps), {{1, 0}}), gen};
    case Axiom::antipode_left:
      return {retag(on_copy(base, 1, S), {{1, 0}, {2, 0}}), Element::scalar(counit(g))};
    case Axiom::antipode_right:
      return {retag(on_copy(base, 2, S), {{1, 0}, {2, 0}}), Element::scalar(counit(g))};
    case Axiom::antipode_anticomorphism: {
      Element l = retag(substitute(base, S), {{1, 2}, {2, 1}});
      Element r = substitute(zs.antipode(g), D(1, 2));
      return {l, r};
    }
    case Axiom::coaction_assoc: {
      // left: (id |_| Omega) o Omega = (Delta |_| id) o Omega, gauge first.
      // right: the gauge copies compose in the opposite order.
      Element om = omega_from(zs, g, 1, 2);
      Element l = on_copy(om, 2, Om(2, 3));
      Element r = on_copy(retag(om, {{2, 3}}), 1, right ? D(2, 1) : D(1, 2));
      return {l, r};
    }
    case Axiom::coaction_counit: {
      // left: (epsilon |_| id) o Omega = id; right: (id |_| epsilon) o Omega = id.
      Element om = omega_from(zs, g, 1, 2);
      if (!right) return {retag(on_copy(om, 1, eps), {{2, 0}}), gen};
      return {retag(on_copy(om, 2, eps), {{1, 0}}), gen};
    }
    case Axiom::delta_comodule: {
      Element d = zs.delta(g, 11, 12);
      Element l = on_copy(on_copy(d, 11, Om(1, 2)), 12, Om(1, 3));
      Element r = on_copy(omega_from(zs, g, 1, 2), 2, D(2, 3));
      return {l, r};
    }
  }
  throw Error("unknown axiom");
}

bool check_all(Axiom axiom, const ZhangStructure& zs, bool right, std::string& counterexample) {
  for (const auto& g : generators(zs.n)) {
    Sides s = sides(axiom, zs, g, right);
    Element diff = unitarity_reduce(s.lhs, zs.n) - unitarity_reduce(s.rhs, zs.n);
    diff = unitarity_reduce(diff, zs.n);
    if (!diff.is_zero()) {
      std::string d = diff.dump();
      std::replace(d.begin(), d.end(), '\n', ';');
      counterexample = "generator " + to_string(g) + ": lhs - rhs = " + d;
      return false;
    }
  }
  return true;
}

}  // namespace

AxiomResult verify_axiom(Axiom axiom, const ZhangStructure& zs) {
  AxiomResult r;
  r.axiom = axiom;
  r.n = zs.n;
  const bool sided = axiom == Axiom::coaction_assoc || axiom == Axiom::coaction_counit;
  std::string ce;
  if (check_all(axiom, zs, false, ce)) {
    r.pass = true;
    if (sided) r.convention = "left";
    return r;
  }
  r.counterexample = ce;
  if (sided) {
    std::string ce_right;
    if (check_all(axiom, zs, true, ce_right)) {
      r.pass = true;
      r.convention = "right";
      r.counterexample.clear();
    }
  }
  return r;
}

AxiomResult verify_axiom(const std::string& name, int n) {
  Axiom a = parse_axiom(name);
  if (n < 1 || n > 3) throw Error("verify_axiom: n must be 1, 2 or 3");
  return verify_axiom(a, dual_voiculescu(n));
}

}  // namespace mf::ncalg
