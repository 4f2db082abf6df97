#pragma once

#include <span>
#include <string>
#include <vector>

namespace mf {

// A letter g^e of a free group word, with e = +1 or -1.
struct FreeLetter {
  int gen = 0;
  int exp = 1;
  friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
  friend auto operator<=>(const FreeLetter&, const FreeLetter&) = default;
};

// Word in a free group on generators 0, 1, ...; not necessarily reduced.
using FreeWord = std::vector<FreeLetter>;

FreeWord free_reduce(std::span<const FreeLetter> w);
FreeWord free_inverse(std::span<const FreeLetter> w);
FreeWord free_concat(std::span<const FreeLetter> a, std::span<const FreeLetter> b);
// Cyclic reduction; conjugating the result gives back the input.
FreeWord free_cyclic_reduce(std::span<const FreeLetter> w);

// Replaces generator g by images[g] and reduces.
FreeWord free_substitute(std::span<const FreeLetter> w, std::span<const FreeWord> images);

// Exponent sum per generator.
std::vector<int> abelianize(std::span<const FreeLetter> w, int generators);

// "c1 c2^-1 ..." with 1-based generator names; "1" for the empty word.
std::string to_string(std::span<const FreeLetter> w);

}  // namespace mf
