#include "masterfield/nc_partition.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>

#include "masterfield/error.hpp"

namespace mf::freeprob {

bool is_noncrossing(const std::vector<std::vector<int>>& blocks) {
  for (std::size_t p = 0; p < blocks.size(); ++p) {
    for (std::size_t q = 0; q < blocks.size(); ++q) {
      if (p == q) continue;
      for (int a : blocks[p])
        for (int c : blocks[p])
          if (a < c)
            for (int b : blocks[q])
              if (a < b && b < c)
                for (int d : blocks[q])
                  if (d > c) return false;
    }
  }
  return true;
}

namespace {

// Partitions of {lo, ..., hi-1}: choose the block of lo, then recurse on the
// gaps between its elements and on the tail.
void build(int lo, int hi, std::vector<std::vector<std::vector<int>>>& out) {
  out.clear();
  if (lo >= hi) {
    out.push_back({});
    return;
  }
  const int len = hi - lo - 1;
  // Subsets of {lo+1, ..., hi-1} joined with lo.
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    std::vector<int> block{lo};
    for (int b = 0; b < len; ++b)
      if (mask & (1u << b)) block.push_back(lo + 1 + b);
    // Segments between consecutive block elements, plus the tail.
    std::vector<std::pair<int, int>> segments;
    for (std::size_t i = 0; i + 1 < block.size(); ++i) segments.push_back({block[i] + 1, block[i + 1]});
    segments.push_back({block.back() + 1, hi});
    std::vector<std::vector<std::vector<int>>> acc{{block}};
    for (auto [a, b] : segments) {
      std::vector<std::vector<std::vector<int>>> sub;
      build(a, b, sub);
      std::vector<std::vector<std::vector<int>>> next;
      next.reserve(acc.size() * sub.size());
      for (const auto& x : acc)
        for (const auto& y : sub) {
          auto z = x;
          z.insert(z.end(), y.begin(), y.end());
          next.push_back(std::move(z));
        }
      acc = std::move(next);
    }
    for (auto& p : acc) out.push_back(std::move(p));
  }
}

}  // namespace

const std::vector<NCPartition>& enumerate_nc(int k) {
  if (k < 1 || k > 12) throw Error("enumerate_nc: order " + std::to_string(k) + " outside 1..12");
  static std::mutex mu;
  static std::array<std::unique_ptr<std::vector<NCPartition>>, 13> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[static_cast<std::size_t>(k)];
  if (!slot) {
    std::vector<std::vector<std::vector<int>>> raw;
    build(0, k, raw);
    auto v = std::make_unique<std::vector<NCPartition>>();
    v->reserve(raw.size());
    for (auto& blocks : raw) {
      std::sort(blocks.begin(), blocks.end());
      v->push_back({std::move(blocks)});
    }
    slot = std::move(v);
  }
  return *slot;
}

std::vector<NCPartition> enumerate_nc_matchings(int two_m) {
  if (two_m < 2 || two_m % 2 != 0 || two_m > 16)
    throw Error("enumerate_nc_matchings: order " + std::to_string(two_m) + " must be even and in 2..16");
  // Recursive on the partner of the first point.
  std::function<std::vector<std::vector<std::vector<int>>>(int, int)> rec = [&](int lo, int hi) {
    std::vector<std::vector<std::vector<int>>> res;
    if (lo >= hi) {
      res.push_back({});
      return res;
    }
    for (int p = lo + 1; p < hi; p += 2) {
      auto inner = rec(lo + 1, p);
      auto outer = rec(p + 1, hi);
      for (const auto& a : inner)
        for (const auto& b : outer) {
          std::vector<std::vector<int>> m{{lo, p}};
          m.insert(m.end(), a.begin(), a.end());
          m.insert(m.end(), b.begin(), b.end());
          res.push_back(std::move(m));
        }
    }
    return res;
  };
  std::vector<NCPartition> out;
  for (auto& blocks : rec(0, two_m)) {
    std::sort(blocks.begin(), blocks.end());
    out.push_back({std::move(blocks)});
  }
  return out;
}

NCPartition join(const NCPartition& a, const NCPartition& b, int k) {
  std::vector<int> parent(static_cast<std::size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto* p : {&a, &b})
    for (const auto& block : p->blocks)
      for (std::size_t i = 1; i < block.size(); ++i) parent[static_cast<std::size_t>(find(block[i]))] = find(block[0]);
  std::vector<std::vector<int>> blocks;
  std::vector<int> index(static_cast<std::size_t>(k), -1);
  for (int x = 0; x < k; ++x) {
    int r = find(x);
    if (index[static_cast<std::size_t>(r)] < 0) {
      index[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.push_back({});
    }
    blocks[static_cast<std::size_t>(index[static_cast<std::size_t>(r)])].push_back(x);
  }
  return {blocks};
}

NCPartition interval_partition(const std::vector<int>& sizes) {
  NCPartition p;
  int at = 0;
  for (int s : sizes) {
    if (s < 1) throw Error("interval partition: block sizes must be positive");
    std::vector<int> block(static_cast<std::size_t>(s));
    std::iota(block.begin(), block.end(), at);
    at += s;
    p.blocks.push_back(std::move(block));
  }
  return p;
}

std::uint64_t catalan(int m) {
  std::uint64_t c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * static_cast<std::uint64_t>(2 * i + 1) / static_cast<std::uint64_t>(i + 2);
  return c;
}

}  // namespace mf::freeprob
