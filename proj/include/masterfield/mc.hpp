#pragma once

// Finite-N Monte Carlo: Brownian motion on U(N) (or O(N)), block
// extraction, and Wilson loop estimation over lasso families.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "masterfield/freegroup.hpp"
#include "masterfield/planar.hpp"
#include "masterfield/rng.hpp"

namespace mf::mc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class FieldScalars { real, complex };

struct MatrixSamplerConfig {
  int N = 64;
  FieldScalars field_scalars = FieldScalars::complex;
  int step_count = 200;  // steps per unit time
  std::uint64_t seed = 7;
  int samples = 400;
  int workers = 0;  // 0: MASTERFIELD_WORKERS, else hardware concurrency
};

void validate(const MatrixSamplerConfig& cfg);
int resolve_workers(int requested);

constexpr double kUnitarityTolerance = 1e-8;
double unitarity_defect(const Matrix& U);  // Frobenius norm of U*U - I

// One step U <- (I - A/2)^{-1} (I + A/2) U, the Cayley retraction of the
// Euler-Maruyama increment A (antihermitian) of size dt.
void brownian_step(Matrix& U, double dt, FieldScalars field, Rng& rng);

// Brownian motion from the identity, observed at the sorted times.
std::vector<Matrix> sample_path(const MatrixSamplerConfig& cfg, const std::vector<double>& times, Rng& rng);
Matrix sample_ubm(const MatrixSamplerConfig& cfg, double t, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with the phases fixed).
Matrix haar_unitary(int N, Rng& rng);

Complex normalized_trace(const Matrix& M);

struct BlockFamily {
  std::vector<std::vector<Matrix>> blocks;  // blocks[i][j] = U(i,j)
  std::vector<Matrix> projectors;           // p_i, N x N diagonal
  std::vector<int> sizes;
};

BlockFamily extract_blocks_square(const Matrix& U, int n, int d);
BlockFamily extract_blocks_rect(const Matrix& U, const std::vector<int>& d);

struct ConditionalExpectation {
  std::vector<Complex> coefficients;  // Tr(p_i A p_i) / d_i
  Matrix value;                       // sum_i coefficients[i] p_i
};

ConditionalExpectation conditional_expectation_rect(const Matrix& A, const std::vector<int>& d);

struct WilsonEstimate {
  Complex mean{1.0, 0.0};
  double stderr_ = 0.0;
  int samples = 0;
};

// |mean - exact| <= sigmas * stderr, allowing for rounding when stderr is 0.
bool within(const WilsonEstimate& e, Complex exact, double sigmas = 3.0);

struct LassoSpec {
  double area = 0.0;
  planar::Orientation orientation = planar::Orientation::anticlockwise;
};

// Observable: normalized trace of the k-th power of the holonomy, or, when
// blocks > 1, of the (row, col) d x d block of that power (N = blocks * d).
struct Observable {
  int power = 1;
  int blocks = 1;
  int row = 0;
  int col = 0;
};

struct WilsonJob {
  std::vector<LassoSpec> lassos;
  FreeWord word;
  std::vector<Observable> observables;
  // Shared Haar unitary conjugating every lasso holonomy.
  bool gauge_conjugate = false;
};

// Each sample draws one Brownian path per lasso slot; a path is shared by
// all jobs, lassos within a job use distinct slots and are independent.
// Results are reproducible for a given seed regardless of worker count.
std::vector<std::vector<WilsonEstimate>> estimate_batch(const std::vector<WilsonJob>& jobs,
                                                        const MatrixSamplerConfig& cfg);

WilsonEstimate estimate_wilson(const std::vector<LassoSpec>& lassos, const FreeWord& word,
                               const MatrixSamplerConfig& cfg, Observable obs = {});

}  // namespace mf::mc
