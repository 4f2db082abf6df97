#include "masterfield/freegroup.hpp"

#include <algorithm>

#include "masterfield/error.hpp"

namespace mf {

FreeWord free_reduce(std::span<const FreeLetter> w) {
  FreeWord out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

FreeWord free_inverse(std::span<const FreeLetter> w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

FreeWord free_concat(std::span<const FreeLetter> a, std::span<const FreeLetter> b) {
  FreeWord out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

FreeWord free_cyclic_reduce(std::span<const FreeLetter> w) {
  FreeWord r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo].gen == r[hi - 1].gen && r[lo].exp == -r[hi - 1].exp) {
    ++lo;
    --hi;
  }
  return FreeWord(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

FreeWord free_substitute(std::span<const FreeLetter> w, std::span<const FreeWord> images) {
  FreeWord out;
  for (const auto& l : w) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= images.size())
      throw Error("free_substitute: generator " + std::to_string(l.gen) + " has no image");
    const FreeWord& img = images[static_cast<std::size_t>(l.gen)];
    if (l.exp > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      FreeWord inv = free_inverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

std::vector<int> abelianize(std::span<const FreeLetter> w, int generators) {
  std::vector<int> sums(static_cast<std::size_t>(generators), 0);
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= generators) throw Error("abelianize: generator out of range");
    sums[static_cast<std::size_t>(l.gen)] += l.exp;
  }
  return sums;
}

std::string to_string(std::span<const FreeLetter> w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += 'c' + std::to_string(w[i].gen + 1);
    if (w[i].exp != 1) s += '^' + std::to_string(w[i].exp);
  }
  return s;
}

}  // namespace mf
