#include "masterfield/levy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace mf::levy {

namespace {

using Poly = std::vector<Rational>;

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

double horner(const Poly& p, double t) {
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + to_double(*it);
  return r;
}

}  // namespace

const std::vector<Rational>& fubm_polynomial(int k) {
  if (k < 0 || k > kMaxOrder) throw Error("moment order " + std::to_string(k) + " outside 0..20");
  static std::mutex mu;
  static std::array<Poly, kMaxOrder + 1> table;
  static int built = -1;
  std::lock_guard<std::mutex> lock(mu);
  if (built < 0) {
    table[0] = {Rational(1)};
    built = 0;
  }
  // P_k' = -(k/2) sum_{j=1}^{k-1} P_j P_{k-j}, P_k(0) = 1.
  for (int q = built + 1; q <= k; ++q) {
    Poly s{Rational(0)};
    for (int j = 1; j < q; ++j) {
      Poly pr = mul(table[static_cast<std::size_t>(j)], table[static_cast<std::size_t>(q - j)]);
      if (pr.size() > s.size()) s.resize(pr.size(), Rational(0));
      for (std::size_t i = 0; i < pr.size(); ++i) s[i] += pr[i];
    }
    Poly p(s.size() + 1, Rational(0));
    p[0] = 1;
    for (std::size_t i = 0; i < s.size(); ++i) p[i + 1] = -Rational(q, 2) * s[i] / Rational(static_cast<long>(i + 1));
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    table[static_cast<std::size_t>(q)] = std::move(p);
    built = q;
  }
  return table[static_cast<std::size_t>(k)];
}

double fubm_moment(int k, double t) {
  if (t < 0) throw Error("negative time " + std::to_string(t));
  if (k < 0) k = -k;
  if (k == 0) return 1.0;
  return std::exp(-0.5 * k * t) * horner(fubm_polynomial(k), t);
}

MomentVector fubm_moments(double t, int kmax) {
  if (t < 0) throw Error("negative time " + std::to_string(t));
  if (kmax < 0 || kmax > kMaxOrder) throw Error("kmax " + std::to_string(kmax) + " outside 0..20");
  MomentVector mv;
  mv.t = t;
  for (int k = 0; k <= kmax; ++k) mv.m.push_back(fubm_moment(k, t));
  return mv;
}

std::string to_string(SemigroupKind k) {
  switch (k) {
    case SemigroupKind::free_unitary_n1: return "free_unitary_n1";
    case SemigroupKind::classical_mc: return "classical_mc";
    case SemigroupKind::block_mc: return "block_mc";
    case SemigroupKind::rectangular_mc: return "rectangular_mc";
  }
  return "?";
}

EstimatorHandle estimator_handle(const Semigroup& sg, double area) {
  if (area < 0) throw Error("negative area " + std::to_string(area));
  return {sg, area};
}

freeprob::State<double> state_at(const Semigroup& sg, double area) {
  using freeprob::Letter;
  using freeprob::Word;
  if (area < 0) throw Error("negative area " + std::to_string(area));
  freeprob::State<double> s;
  s.tracial = true;
  if (sg.kind != SemigroupKind::free_unitary_n1) {
    EstimatorHandle h{sg, area};
    s.eval = [h](const Word&) -> double { throw ExactEvaluationUnavailable(h); };
    return s;
  }
  s.simplify = [](const Word& w) {
    int m = 0;
    for (const auto& l : w) m += l.symbol == 0 ? 1 : -1;
    return Word(static_cast<std::size_t>(m < 0 ? -m : m), Letter{0, m < 0 ? 1 : 0});
  };
  s.eval = [area](const Word& w) {
    int m = 0;
    for (const auto& l : w) {
      if (l.symbol != 0 && l.symbol != 1) throw Error("unknown symbol in a word of O<1>");
      m += l.symbol == 0 ? 1 : -1;
    }
    return fubm_moment(m, area);
  };
  return s;
}

CheckReport check_levy_axioms(const Semigroup& sg, const std::vector<double>& times, int kmax) {
  if (sg.kind != SemigroupKind::free_unitary_n1)
    throw ExactEvaluationUnavailable(EstimatorHandle{sg, times.empty() ? 0.0 : times.front()});
  using freeprob::Word;
  CheckReport r;
  r.check = "levy";
  auto power = [](int factor_a, int factor_b, int k) {
    Word w;
    for (int i = 0; i < k; ++i) {
      w.push_back({factor_a, 0});
      w.push_back({factor_b, 0});
    }
    return w;
  };
  for (double t : times) {
    // Stationarity: the marginal of [s, s+t] depends on t only, so two
    // states built at different base times must agree.
    const auto a = state_at(sg, t), b = state_at(sg, (t + 1.0) - 1.0);
    for (int k = 1; k <= kmax; ++k)
      r.add("stationarity t=" + std::to_string(t) + " k=" + std::to_string(k), a(Word(static_cast<std::size_t>(k), {0, 0})),
            b(Word(static_cast<std::size_t>(k), {0, 0})), 1e-12);
  }
  for (double s : times) {
    for (double t : times) {
      const auto joint = freeprob::product_state<double>(freeprob::ProductKind::free, {state_at(sg, s), state_at(sg, t)});
      for (int k = 1; k <= kmax; ++k)
        r.add("increment s=" + std::to_string(s) + " t=" + std::to_string(t) + " k=" + std::to_string(k),
              joint(power(0, 1, k)), fubm_moment(k, s + t), 1e-10);
    }
  }
  // m_k(t) = 1 - k^2 t / 2 + O(t^2)
  for (int k = 1; k <= kmax; ++k)
    r.add("continuity k=" + std::to_string(k), fubm_moment(k, 1e-6), 1.0, std::max(1e-5, k * k * 1e-6));
  return r;
}

}  // namespace mf::levy
