#pragma once

// Holonomy fields built from a Levy semigroup and a product of states, and
// the invariance checks such a field is expected to pass.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "masterfield/freeprob.hpp"
#include "masterfield/levy.hpp"
#include "masterfield/mc.hpp"
#include "masterfield/planar.hpp"
#include "masterfield/report.hpp"

namespace mf::holonomy {

enum class Method { exact, mc };
std::string to_string(Method m);

struct HolonomyField {
  levy::Semigroup semigroup;
  freeprob::ProductKind product = freeprob::ProductKind::free;
  int n = 1;
  double t_scale = 1.0;  // time per unit cell
  planar::TieBreak tie_break = planar::TieBreak::nesw;
  planar::Orientation orientation = planar::Orientation::anticlockwise;
  freeprob::ProductOptions options;
};

HolonomyField master_field(double t_scale = 1.0);

struct FieldValue {
  planar::Loop loop;
  int k = 1;
  std::complex<double> value{1.0, 0.0};
  Method method = Method::exact;
};

// Lasso word, raised to the power k, as letters of the product state:
// factor = lasso index, symbol 0 for u and 1 for u^*.
freeprob::Word to_letters(const FreeWord& w, int k);

// Value of the product state on a word in independent lassos with the given
// areas (already scaled) and orientations.
double evaluate_word(const HolonomyField& field, const std::vector<double>& areas,
                     const std::vector<planar::Orientation>& orientations, const FreeWord& w, int k);

// The graph is drawn by the loop together with the context loops.
FieldValue evaluate(const HolonomyField& field, const planar::Loop& loop, int k,
                    const std::vector<planar::Loop>& context = {});

CheckReport check_braid_invariance(const HolonomyField& field, const std::vector<planar::Loop>& corpus,
                                   int max_length = 4, int max_strands = 4, int kmax = 3);

// Free multiplicative convolution of the marginals at s and t against the
// marginal at s + t, and the same on lattice loops split by a chord.
CheckReport check_infinite_divisibility(const HolonomyField& field,
                                        const std::vector<std::pair<double, double>>& pairs, int kmax = 5);

// Throws when the two loops do not have the same combinatorics.
CheckReport check_area_invariance(const HolonomyField& field,
                                  const std::vector<std::pair<planar::Loop, planar::Loop>>& pairs, int kmax = 5);

// tau((v u_t v^*)^k) = m_k(t), from the words of Omega_c(u)^k with v a Haar
// unitary free from the field.
CheckReport check_gauge_invariance_scalar(const HolonomyField& field, const std::vector<double>& times,
                                          int kmax = 5);

CheckReport check_basis_independence(const HolonomyField& field, const std::vector<planar::Loop>& corpus,
                                     int kmax = 5);

struct McComparison {
  planar::Loop loop;
  int k = 1;
  double exact = 0.0;
  mc::WilsonEstimate estimate;
  bool pass = false;
};

std::vector<McComparison> compare_mc(const HolonomyField& field, const std::vector<planar::Loop>& corpus,
                                     const mc::MatrixSamplerConfig& cfg, int kmax = 3);

}  // namespace mf::holonomy
