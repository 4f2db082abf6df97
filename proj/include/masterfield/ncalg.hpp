#pragma once

// Free products of copies of the dual Voiculescu group O<n>: words in the
// generators u_ij, u_ij^*, each tagged with the copy it lives in, and
// rational linear combinations of them.

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "masterfield/rational.hpp"

namespace mf::ncalg {

struct Generator {
  bool star = false;
  int row = 1;  // 1-based
  int col = 1;
  int copy = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator u(int i, int j, int copy = 0) { return {false, i, j, copy}; }
inline Generator ustar(int i, int j, int copy = 0) { return {true, i, j, copy}; }

using Word = std::vector<Generator>;

class Element {
 public:
  Element() = default;
  static Element scalar(const Rational& c);
  static Element generator(const Generator& g);
  static Element word(const Word& w, const Rational& c = 1);

  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& w) const;
  void add(const Word& w, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Rational& c, const Element& a);
  friend bool operator==(const Element&, const Element&) = default;

  // `coeff * u[i,j,copy] u*[i,j,copy] ...`, one line per term, sorted.
  std::string dump() const;

 private:
  std::map<Word, Rational> terms_;
};

std::string to_string(const Generator& g);

// Extends a map on generators to an algebra morphism.
Element substitute(const Element& e, const std::function<Element(const Generator&)>& phi);
// Changes copy tags; tags absent from the map are kept.
Element retag(const Element& e, const std::map<int, int>& tags);
// Involution: reverse words, star letters (coefficients are real).
Element star(const Element& e);

// Structure maps on a single generator; outputs land in the given copies.
// Delta(u_ij) = sum_k u_ik|c1 u_kj|c2, Delta(u_ij^*) = its involution.
Element delta(const Generator& g, int n, int c1 = 1, int c2 = 2);
Element delta(const Element& e, int n);  // letters of copy 0 to copies 1, 2
Element antipode(const Generator& g);
Element antipode(const Element& e);
Rational counit(const Generator& g);
Rational counit(const Element& e);
// Omega_c(u_ij) = sum_{a,b} u_ia|gauge u_ab|field u_jb^*|gauge.
Element omega_c(const Generator& g, int n, int gauge = 1, int field = 2);

// Replaces complete sums sum_k u_ik u_jk^* and sum_k u_ki^* u_kj (adjacent,
// same copy) by delta_ij until no such sum is left.
Element unitarity_reduce(const Element& e, int n);

// A morphism O<n> -> A given by the images of the 2n^2 generators.
class GeneratorImageMap {
 public:
  GeneratorImageMap(int n, std::function<Element(const Generator&)> image);
  int n() const { return n_; }
  const Element& operator()(const Generator& g) const;
  Element apply(const Element& e) const;

 private:
  int n_;
  std::vector<Element> images_;
};

GeneratorImageMap identity_map(int n, int copy = 0);
GeneratorImageMap unit_map(int n);  // eta o epsilon
GeneratorImageMap compose_antipode(const GeneratorImageMap& f);  // f o S
// (f * g) = (f |_| g) o Delta.
GeneratorImageMap convolve(const GeneratorImageMap& f, const GeneratorImageMap& g);

// Structure maps as data, so that corrupted variants can be checked.
struct ZhangStructure {
  int n = 1;
  std::function<Element(const Generator&, int, int)> delta;
  std::function<Element(const Generator&)> antipode;
};

ZhangStructure dual_voiculescu(int n);

enum class Axiom {
  coassoc,
  counit_left,
  counit_right,
  antipode_left,
  antipode_right,
  antipode_anticomorphism,
  coaction_assoc,
  coaction_counit,
  delta_comodule,
};

const std::vector<Axiom>& all_axioms();
std::string to_string(Axiom a);
Axiom parse_axiom(const std::string& name);

struct AxiomResult {
  Axiom axiom{};
  int n = 0;
  bool pass = false;
  std::string convention;      // coaction identities: "left" or "right"
  std::string counterexample;  // failing generator and the nonzero difference
};

AxiomResult verify_axiom(Axiom axiom, const ZhangStructure& zs);
AxiomResult verify_axiom(const std::string& name, int n);

}  // namespace mf::ncalg
