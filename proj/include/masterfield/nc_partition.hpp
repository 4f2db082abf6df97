#pragma once

// Noncrossing partitions of {0, ..., k-1}.

#include <cstdint>
#include <vector>

namespace mf::freeprob {

// Blocks are sorted, and listed by their smallest element.
struct NCPartition {
  std::vector<std::vector<int>> blocks;
  friend bool operator==(const NCPartition&, const NCPartition&) = default;
};

bool is_noncrossing(const std::vector<std::vector<int>>& blocks);

// Cached; 1 <= k <= 12. The returned reference stays valid for the process.
const std::vector<NCPartition>& enumerate_nc(int k);
// Noncrossing pair partitions, two_m even and <= 16.
std::vector<NCPartition> enumerate_nc_matchings(int two_m);

// Join in the lattice of all set partitions.
NCPartition join(const NCPartition& a, const NCPartition& b, int k);
// Interval partition with the given block sizes.
NCPartition interval_partition(const std::vector<int>& sizes);

std::uint64_t catalan(int m);

}  // namespace mf::freeprob
