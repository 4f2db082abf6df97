#pragma once

// Counter-based generator (Philox4x32-10). A stream is addressed by
// (seed, stream id), so parallel workers draw independent, reproducible
// sequences without sharing state.

#include <array>
#include <cstdint>

namespace mf {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxBlock philox4x32_10(PhiloxBlock counter, PhiloxKey key);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  // Uniform on (0, 1), 53 random bits.
  double uniform();
  double normal();

 private:
  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxBlock buf_{};
  int pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mf
