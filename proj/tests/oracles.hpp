#pragma once

// Reference computations used by the tests. Each one is deliberately naive
// and shares no code with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// ------------------------------------------------------------ free product

// A run u_f^e of a word in free unitaries.
using Run = std::pair<int, int>;  // (factor, exponent)

inline std::vector<Run> merge_runs(const std::vector<Run>& in) {
  std::vector<Run> out;
  for (auto r : in) {
    if (r.second == 0) continue;
    if (!out.empty() && out.back().first == r.first) {
      out.back().second += r.second;
      if (out.back().second == 0) out.pop_back();
    } else {
      out.push_back(r);
    }
  }
  return out;
}

// tau of a word in free unitaries u_0, u_1, ... with tau(u_f^e) = moment(f, e).
// Uses tau(x_1° ... x_n°) = 0 for alternating centred factors, expanded over
// all subsets of positions. Exponential, fine for short words.
class FreeUnitaries {
 public:
  explicit FreeUnitaries(std::function<double(int, int)> moment) : moment_(std::move(moment)) {}

  double operator()(const std::vector<Run>& w) {
    auto x = merge_runs(w);
    if (x.empty()) return 1.0;
    if (x.size() == 1) return moment_(x[0].first, x[0].second);
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    const std::size_t n = x.size();
    // 0 = sum_T (-1)^{n-|T|} prod_{i not in T} m_i tau(x_T)
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask + 1 < (1ull << n); ++mask) {
      std::vector<Run> sub;
      double coef = 1.0;
      int missing = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ull << i)) {
          sub.push_back(x[i]);
        } else {
          coef *= moment_(x[i].first, x[i].second);
          ++missing;
        }
      }
      if (coef == 0.0) continue;
      acc += (missing % 2 ? -1.0 : 1.0) * coef * (*this)(sub);
    }
    // The full subset enters with sign +1.
    const double v = -acc;
    memo_.emplace(x, v);
    return v;
  }

 private:
  std::function<double(int, int)> moment_;
  std::map<std::vector<Run>, double> memo_;
};

// ------------------------------------------------ free unitary Brownian motion

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Closed form: m_k(t) = e^{-kt/2} sum_{j<k} (-t)^j / j! k^{j-1} C(k, j+1).
inline double fubm_closed(int k, double t) {
  if (k < 0) k = -k;
  if (k == 0) return 1.0;
  double s = 0.0, fact = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) fact *= j;
    s += std::pow(-t, j) / fact * std::pow(static_cast<double>(k), j - 1) * binom(k, j + 1);
  }
  return std::exp(-k * t / 2.0) * s;
}

// -------------------------------------------------------------- lattice

struct Pt {
  int x, y;
  bool operator<(const Pt& o) const { return x != o.x ? x < o.x : y < o.y; }
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

inline Pt move(Pt p, char c) {
  switch (c) {
    case 'N': return {p.x, p.y + 1};
    case 'S': return {p.x, p.y - 1};
    case 'E': return {p.x + 1, p.y};
    default: return {p.x - 1, p.y};
  }
}

inline char opposite(char c) {
  switch (c) {
    case 'N': return 'S';
    case 'S': return 'N';
    case 'E': return 'W';
    default: return 'E';
  }
}

// Cancels backtracking pairs in a random order until none is left.
inline std::string random_erasure(std::string w, std::mt19937& gen) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i + 1] == opposite(w[i])) spots.push_back(i);
    if (spots.empty()) return w;
    std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(gen)];
    w.erase(i, 2);
  }
}

// Winding number around the centre of cell (cx, cy): signed crossings of the
// ray going East from the centre.
inline int winding(const std::string& w, int cx, int cy) {
  Pt p{0, 0};
  int wn = 0;
  for (char c : w) {
    Pt q = move(p, c);
    if (p.x > cx && p.x == q.x) {
      if (c == 'N' && p.y == cy) ++wn;
      if (c == 'S' && q.y == cy) --wn;
    }
    p = q;
  }
  return wn;
}

// Bounded faces of the union of the given closed walks, by flood fill over
// unit cells: returns the sorted list of face areas.
inline std::vector<int> flood_fill_faces(const std::vector<std::string>& loops) {
  std::set<std::pair<Pt, char>> edges;  // undirected, stored from both ends
  int lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& w : loops) {
    Pt p{0, 0};
    for (char c : w) {
      Pt q = move(p, c);
      edges.insert({p, c});
      edges.insert({q, opposite(c)});
      p = q;
      lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
    }
  }
  // Cell (x, y) has corners (x, y) .. (x+1, y+1). Pad by one cell.
  const int x0 = lo_x - 1, x1 = hi_x, y0 = lo_y - 1, y1 = hi_y;
  std::map<Pt, int> comp;
  std::vector<int> sizes;
  std::vector<bool> outer;
  for (int x = x0; x <= x1; ++x)
    for (int y = y0; y <= y1; ++y) {
      if (comp.count({x, y})) continue;
      const int id = static_cast<int>(sizes.size());
      sizes.push_back(0);
      outer.push_back(false);
      std::vector<Pt> stack{{x, y}};
      comp[{x, y}] = id;
      while (!stack.empty()) {
        Pt c = stack.back();
        stack.pop_back();
        ++sizes[id];
        if (c.x == x0 || c.x == x1 || c.y == y0 || c.y == y1) outer[id] = true;
        // neighbours and the edge separating them
        const std::pair<Pt, std::pair<Pt, char>> nb[4] = {
            {{c.x + 1, c.y}, {{c.x + 1, c.y}, 'N'}},
            {{c.x - 1, c.y}, {{c.x, c.y}, 'N'}},
            {{c.x, c.y + 1}, {{c.x, c.y + 1}, 'E'}},
            {{c.x, c.y - 1}, {{c.x, c.y}, 'E'}},
        };
        for (const auto& [n, e] : nb) {
          if (n.x < x0 || n.x > x1 || n.y < y0 || n.y > y1) continue;
          if (edges.count(e) || comp.count(n)) continue;
          comp[n] = id;
          stack.push_back(n);
        }
      }
    }
  std::vector<int> areas;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (!outer[i]) areas.push_back(sizes[i]);
  std::sort(areas.begin(), areas.end());
  return areas;
}

// Random closed walk: random steps, then home along x and y, then reduced.
inline std::string random_loop(std::mt19937& gen, int max_len) {
  static const char dirs[] = "NESW";
  for (;;) {
    const int half = std::uniform_int_distribution<int>(1, max_len / 2)(gen);
    std::string w;
    Pt p{0, 0};
    for (int i = 0; i < half; ++i) {
      char c = dirs[std::uniform_int_distribution<int>(0, 3)(gen)];
      w += c;
      p = move(p, c);
    }
    while (p.x != 0) {
      char c = p.x > 0 ? 'W' : 'E';
      w += c;
      p = move(p, c);
    }
    while (p.y != 0) {
      char c = p.y > 0 ? 'S' : 'N';
      w += c;
      p = move(p, c);
    }
    std::mt19937 g2(gen());
    w = random_erasure(w, g2);
    if (!w.empty() && static_cast<int>(w.size()) <= max_len) return w;
  }
}

// ---------------------------------------------------------- set partitions

// All set partitions of {0..k-1} as restricted growth strings.
inline void restricted_growth(int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == k) {
      visit(a);
      return;
    }
    for (int b = 0; b <= mx + 1; ++b) {
      a[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(mx, b));
    }
  };
  if (k == 0) return;
  a[0] = 0;
  rec(1, 0);
}

// Crossing test on block labels: a < b < c < d with a, c in one block and
// b, d in another.
inline bool crossing(const std::vector<int>& lab) {
  const int k = static_cast<int>(lab.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        for (int d = c + 1; d < k; ++d)
          if (lab[a] == lab[c] && lab[b] == lab[d] && lab[a] != lab[b]) return true;
  return false;
}

// -------------------------------------------------------------- matrices

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937& gen) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {g(gen), g(gen)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace oracle
