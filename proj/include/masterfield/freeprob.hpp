#pragma once

// States on words of factor-tagged letters, their tensor, boolean and free
// products, and free cumulants.

#include <compare>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "masterfield/error.hpp"
#include "masterfield/nc_partition.hpp"
#include "masterfield/rational.hpp"

namespace mf::freeprob {

// A letter of a word: `symbol` lives in the algebra of factor `factor`.
struct Letter {
  int factor = 0;
  int symbol = 0;
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

template <class Scalar>
struct State {
  int n_copies = 1;
  std::function<Scalar(const Word&)> eval;
  // Optional normal form of a single-factor word (same value under eval).
  std::function<Word(const Word&)> simplify;
  bool tracial = false;
  int max_order = -1;  // longest word eval accepts; -1 for no bound

  Scalar operator()(const Word& w) const {
    if (max_order >= 0 && static_cast<int>(w.size()) > max_order)
      throw Error("moment of order " + std::to_string(w.size()) + " requested, state is defined up to order " +
                  std::to_string(max_order));
    for (const auto& l : w)
      if (l.factor < 0 || l.factor >= n_copies)
        throw Error("letter with factor tag " + std::to_string(l.factor) + " in a state with " +
                    std::to_string(n_copies) + " factor(s)");
    return eval(w);
  }
};

enum class ProductKind { tensor, boolean, free };

std::string to_string(ProductKind k);
ProductKind parse_product_kind(const std::string& s);

struct ProductOptions {
  bool use_simplify = true;  // normalize runs with the marginal's simplify
  bool use_trace = true;     // rotate words when every marginal is tracial
};

namespace detail {

// Maximal runs of letters from the same factor.
inline std::vector<Word> runs_of(const Word& w) {
  std::vector<Word> runs;
  for (const auto& l : w) {
    if (runs.empty() || runs.back().front().factor != l.factor) runs.push_back({});
    runs.back().push_back(l);
  }
  return runs;
}

inline Word strip(const Word& w) {
  Word out = w;
  for (auto& l : out) l.factor = 0;
  return out;
}

inline Word tag(const Word& w, int factor) {
  Word out = w;
  for (auto& l : out) l.factor = factor;
  return out;
}

template <class Scalar>
class FreeEvaluator {
 public:
  FreeEvaluator(const std::vector<State<Scalar>>& marginals, ProductOptions opts)
      : marginals_(marginals), opts_(opts) {}

  Scalar operator()(const Word& w) const {
    std::vector<std::pair<int, Word>> runs;
    for (auto& r : runs_of(w)) {
      int f = r.front().factor;
      append_run(runs, f, strip(r));
    }
    if (opts_.use_trace && all_tracial()) {
      // Rotate so that the first and last runs merge when they share a factor.
      while (runs.size() >= 2 && runs.front().first == runs.back().first) {
        auto last = std::move(runs.back());
        runs.pop_back();
        Word merged = last.second;
        merged.insert(merged.end(), runs.front().second.begin(), runs.front().second.end());
        runs.front().second = normal(runs.front().first, merged);
      }
    }
    // Drop runs that normalize to the unit.
    std::vector<std::pair<int, Word>> clean;
    for (auto& r : runs) append_run(clean, r.first, std::move(r.second));
    runs = std::move(clean);
    if (runs.empty()) return Scalar(1);
    if (runs.size() == 1) return phi(runs[0].first, runs[0].second);

    // Fock-space evaluation from the right. Each centred tensor factor is
    // pushed by one run and popped by a later one, and lifetimes nest, so
    // the sum splits over push/pop pairs: pop[r][q] is the weight of the
    // factor pushed by run r and popped by run q (runs indexed 1..m, read
    // from m down to 1).
    const int m = static_cast<int>(runs.size());
    auto fac = [&](int i) { return runs[static_cast<std::size_t>(i - 1)].first; };
    auto elt = [&](int i) -> const Word& { return runs[static_cast<std::size_t>(i - 1)].second; };
    std::vector<Scalar> phis(static_cast<std::size_t>(m) + 1, Scalar(0));
    for (int i = 1; i <= m; ++i) phis[static_cast<std::size_t>(i)] = phi(fac(i), elt(i));
    std::vector<std::vector<std::pair<int, Scalar>>> pops(static_cast<std::size_t>(m) + 1);
    for (int r = 2; r <= m; ++r) {
      const int f = fac(r);
      // content of the factor pushed by r, just before run x is read
      std::vector<std::map<Word, Scalar>> at(static_cast<std::size_t>(r));
      at[static_cast<std::size_t>(r - 1)].emplace(elt(r), Scalar(1));
      auto add = [](std::map<Word, Scalar>& dst, const Word& w, const Scalar& c) {
        if (c == Scalar(0)) return;
        auto [it, ins] = dst.try_emplace(w, c);
        if (!ins) it->second += c;
      };
      for (int x = r - 1; x >= 1; --x) {
        auto& here = at[static_cast<std::size_t>(x)];
        if (here.empty()) continue;
        const Word& b = elt(x);
        const Scalar phib = phis[static_cast<std::size_t>(x)];
        auto& below = at[static_cast<std::size_t>(x - 1)];
        if (fac(x) != f) {
          for (const auto& [a, c] : here) {
            add(below, a, c * phib);
            for (const auto& [q, w] : pops[static_cast<std::size_t>(x)])
              add(at[static_cast<std::size_t>(q - 1)], a, c * w);
          }
          continue;
        }
        Scalar popped(0);
        for (const auto& [a, c] : here) {
          Word ba = b;
          ba.insert(ba.end(), a.begin(), a.end());
          ba = normal(f, ba);
          const Scalar phia = phi(f, a);
          const Scalar phiba = ba.empty() ? Scalar(1) : phi(f, ba);
          if (!ba.empty()) add(below, ba, c);
          add(below, b, -(c * phia));
          popped += c * (phiba - phia * phib);
        }
        if (popped != Scalar(0)) pops[static_cast<std::size_t>(r)].emplace_back(x, popped);
      }
    }
    // Vacuum level: each run is either absorbed as a scalar or opens a factor.
    std::vector<Scalar> vac(static_cast<std::size_t>(m) + 1, Scalar(0));
    vac[0] = Scalar(1);
    for (int x = 1; x <= m; ++x) {
      Scalar v = phis[static_cast<std::size_t>(x)] * vac[static_cast<std::size_t>(x - 1)];
      for (const auto& [q, w] : pops[static_cast<std::size_t>(x)]) v += w * vac[static_cast<std::size_t>(q - 1)];
      vac[static_cast<std::size_t>(x)] = v;
    }
    return vac[static_cast<std::size_t>(m)];
  }

 private:
  bool all_tracial() const {
    for (const auto& s : marginals_)
      if (!s.tracial) return false;
    return true;
  }

  Word normal(int f, const Word& w) const {
    const auto& s = marginals_[static_cast<std::size_t>(f)];
    if (opts_.use_simplify && s.simplify) return s.simplify(w);
    return w;
  }

  void append_run(std::vector<std::pair<int, Word>>& runs, int f, Word w) const {
    if (!runs.empty() && runs.back().first == f) {
      runs.back().second.insert(runs.back().second.end(), w.begin(), w.end());
      runs.back().second = normal(f, runs.back().second);
      if (runs.back().second.empty()) runs.pop_back();
      return;
    }
    w = normal(f, w);
    if (!w.empty()) runs.emplace_back(f, std::move(w));
  }

  Scalar phi(int f, const Word& w) const {
    if (w.empty()) return Scalar(1);
    return marginals_[static_cast<std::size_t>(f)](w);
  }

  std::vector<State<Scalar>> marginals_;
  ProductOptions opts_;
};

}  // namespace detail

// Letters of the product carry the index of their marginal as factor tag;
// each marginal sees its letters re-tagged with factor 0.
template <class Scalar>
State<Scalar> product_state(ProductKind kind, const std::vector<State<Scalar>>& marginals,
                            ProductOptions opts = {}) {
  if (marginals.empty()) throw Error("product_state: no marginals");
  for (const auto& m : marginals)
    if (m.n_copies != 1) throw Error("product_state: marginals must be single-factor states");
  State<Scalar> out;
  out.n_copies = static_cast<int>(marginals.size());
  out.tracial = kind != ProductKind::boolean;
  for (const auto& m : marginals) out.tracial = out.tracial && m.tracial;
  switch (kind) {
    case ProductKind::free:
      out.eval = detail::FreeEvaluator<Scalar>(marginals, opts);
      break;
    case ProductKind::boolean:
      out.eval = [marginals](const Word& w) {
        Scalar r(1);
        for (const auto& run : detail::runs_of(w))
          r *= marginals[static_cast<std::size_t>(run.front().factor)](detail::strip(run));
        return r;
      };
      break;
    case ProductKind::tensor:
      out.eval = [marginals](const Word& w) {
        std::vector<Word> groups(marginals.size());
        for (const auto& l : w) groups[static_cast<std::size_t>(l.factor)].push_back({0, l.symbol});
        Scalar r(1);
        for (std::size_t f = 0; f < groups.size(); ++f)
          if (!groups[f].empty()) r *= marginals[f](groups[f]);
        return r;
      };
      break;
  }
  return out;
}

// Single-factor state that exposes factor `f` of a product state.
template <class Scalar>
State<Scalar> restrict_to_factor(const State<Scalar>& s, int f) {
  State<Scalar> out;
  out.tracial = s.tracial;
  out.max_order = s.max_order;
  out.eval = [s, f](const Word& w) { return s(detail::tag(w, f)); };
  return out;
}

// ---------------------------------------------------------------- cumulants

// Joint free cumulant kappa_k(a_1, ..., a_k) where each argument a_i is a
// word (a product of letters). Subsets are memoized by bitmask.
template <class Scalar>
class CumulantEngine {
 public:
  CumulantEngine(std::function<Scalar(const Word&)> moment, std::vector<Word> args)
      : moment_(std::move(moment)), args_(std::move(args)) {
    if (args_.size() > 12) throw Error("cumulants: order " + std::to_string(args_.size()) + " exceeds 12");
  }

  Scalar cumulant(std::uint32_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(args_.size()); ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    Word w;
    for (int i : idx) w.insert(w.end(), args_[static_cast<std::size_t>(i)].begin(), args_[static_cast<std::size_t>(i)].end());
    Scalar r = moment_(w);
    for (const auto& p : enumerate_nc(k)) {
      if (p.blocks.size() == 1) continue;
      Scalar prod(1);
      for (const auto& block : p.blocks) {
        std::uint32_t sub = 0;
        for (int b : block) sub |= 1u << idx[static_cast<std::size_t>(b)];
        prod *= cumulant(sub);
        if (prod == Scalar(0)) break;
      }
      r -= prod;
    }
    memo_.emplace(mask, r);
    return r;
  }

  Scalar full() { return cumulant(args_.empty() ? 0u : (1u << args_.size()) - 1u); }

 private:
  std::function<Scalar(const Word&)> moment_;
  std::vector<Word> args_;
  std::map<std::uint32_t, Scalar> memo_;
};

template <class Scalar>
Scalar cumulant_of_args(const State<Scalar>& st, const std::vector<Word>& args) {
  if (args.empty()) throw Error("cumulants: empty argument list");
  CumulantEngine<Scalar> eng([&st](const Word& w) { return st(w); }, args);
  return eng.full();
}

// kappa_k(w_1, ..., w_k) with single letters as arguments.
template <class Scalar>
Scalar cumulants_from_moments(const State<Scalar>& st, const Word& word) {
  std::vector<Word> args;
  for (const auto& l : word) args.push_back({l});
  return cumulant_of_args(st, args);
}

template <class Scalar>
struct CumulantTable {
  std::map<Word, Scalar> values;  // letter word -> joint cumulant of its letters
  int max_order = 0;

  Scalar at(const Word& w) const {
    if (static_cast<int>(w.size()) > max_order)
      throw Error("cumulant of order " + std::to_string(w.size()) + " beyond table order " +
                  std::to_string(max_order));
    auto it = values.find(w);
    if (it == values.end()) throw Error("cumulant table has no entry for this word");
    return it->second;
  }

  // `word : value` per line; letters as factor.symbol.
  std::string dump() const {
    std::ostringstream os;
    for (const auto& [w, v] : values) {
      for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i].factor << '.' << w[i].symbol;
      os << " : " << v << '\n';
    }
    return os.str();
  }
};

// All cumulants of words over `alphabet` with orders 1..max_order.
template <class Scalar>
CumulantTable<Scalar> cumulant_table(const State<Scalar>& st, const std::vector<Letter>& alphabet, int max_order) {
  CumulantTable<Scalar> t;
  t.max_order = max_order;
  std::vector<Word> layer{Word{}};
  for (int k = 1; k <= max_order; ++k) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& l : alphabet) {
        Word x = w;
        x.push_back(l);
        t.values.emplace(x, cumulants_from_moments(st, x));
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  return t;
}

template <class Scalar>
Scalar moments_from_cumulants(const CumulantTable<Scalar>& table, const Word& word) {
  if (word.empty()) return Scalar(1);
  Scalar total(0);
  for (const auto& p : enumerate_nc(static_cast<int>(word.size()))) {
    Scalar prod(1);
    for (const auto& block : p.blocks) {
      Word sub;
      for (int b : block) sub.push_back(word[static_cast<std::size_t>(b)]);
      prod *= table.at(sub);
      if (prod == Scalar(0)) break;
    }
    total += prod;
  }
  return total;
}

// kappa(a_1...a_{k1}, ..., ) for the interval grouping `sizes` of `word`:
// the sum of kappa_pi over noncrossing pi with pi v sigma = 1.
template <class Scalar>
Scalar cumulants_of_products(const CumulantTable<Scalar>& table, const Word& word, const std::vector<int>& sizes) {
  int total_size = 0;
  for (int s : sizes) {
    if (s < 1) throw Error("grouping has an empty block");
    total_size += s;
  }
  if (total_size != static_cast<int>(word.size())) throw Error("grouping is not an interval partition of the word");
  const int k = static_cast<int>(word.size());
  const NCPartition sigma = interval_partition(sizes);
  Scalar total(0);
  for (const auto& p : enumerate_nc(k)) {
    if (join(p, sigma, k).blocks.size() != 1) continue;
    Scalar prod(1);
    for (const auto& block : p.blocks) {
      Word sub;
      for (int b : block) sub.push_back(word[static_cast<std::size_t>(b)]);
      prod *= table.at(sub);
      if (prod == Scalar(0)) break;
    }
    total += prod;
  }
  return total;
}

// ---------------------------------------------------------- standard states

// Haar unitary: symbol 0 is v, symbol 1 is v^*; moments delta_{m,0}.
template <class Scalar>
State<Scalar> haar_unitary_state() {
  State<Scalar> s;
  s.tracial = true;
  s.simplify = [](const Word& w) {
    int m = 0;
    for (const auto& l : w) m += l.symbol == 0 ? 1 : -1;
    return Word(static_cast<std::size_t>(m < 0 ? -m : m), Letter{0, m < 0 ? 1 : 0});
  };
  s.eval = [](const Word& w) {
    int m = 0;
    for (const auto& l : w) m += l.symbol == 0 ? 1 : -1;
    return m == 0 ? Scalar(1) : Scalar(0);
  };
  return s;
}

// Standard semicircular element (a single self-adjoint symbol 0).
template <class Scalar>
State<Scalar> semicircular_state() {
  State<Scalar> s;
  s.tracial = true;
  s.eval = [](const Word& w) {
    if (w.size() % 2) return Scalar(0);
    return Scalar(static_cast<long long>(catalan(static_cast<int>(w.size() / 2))));
  };
  return s;
}

// Result of the conjugation test on cumulants: v Haar unitary, w
// semicircular, free from each other.
struct ConjugationCumulants {
  std::vector<Rational> conjugated;  // kappa_k(v w v^*, ..., v w v^*), k = 1..order
  std::vector<Rational> plain;       // kappa_k(w, ..., w)
  bool pass = false;
};

ConjugationCumulants joint_cumulants_check_conjugation(int order);

}  // namespace mf::freeprob
