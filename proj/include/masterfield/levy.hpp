#pragma once

// Levy semigroups: exact moments of the free unitary Brownian motion and the
// semigroup interface consumed by the holonomy evaluator.

#include <string>
#include <vector>

#include "masterfield/error.hpp"
#include "masterfield/freeprob.hpp"
#include "masterfield/rational.hpp"
#include "masterfield/report.hpp"

namespace mf::levy {

constexpr int kMaxOrder = 20;

struct MomentVector {
  double t = 0.0;
  std::vector<double> m;  // m[k] = tau(u_t^k), k = 0..kmax
};

// m_k(t) = exp(-k t / 2) P_k(t); coefficients of P_k in increasing degree.
const std::vector<Rational>& fubm_polynomial(int k);
MomentVector fubm_moments(double t, int kmax);
// m_{|k|}(t); any integer k with |k| <= 20.
double fubm_moment(int k, double t);

enum class SemigroupKind { free_unitary_n1, classical_mc, block_mc, rectangular_mc };

std::string to_string(SemigroupKind k);

struct Semigroup {
  SemigroupKind kind = SemigroupKind::free_unitary_n1;
  int n = 1;                  // Zhang dimension
  std::vector<double> ratios;  // rectangular blocks
  int N = 0;                  // matrix size for the MC kinds
};

// What an MC estimator needs to sample the marginal of one face.
struct EstimatorHandle {
  Semigroup semigroup;
  double area = 0.0;
};

class ExactEvaluationUnavailable : public Error {
 public:
  explicit ExactEvaluationUnavailable(EstimatorHandle h)
      : Error("exact evaluation unavailable for " + to_string(h.semigroup.kind) + ", use mc"), handle_(std::move(h)) {}
  const EstimatorHandle& handle() const { return handle_; }

 private:
  EstimatorHandle handle_;
};

// Letters of a single copy of O<1>: symbol 0 is u, symbol 1 is u^*.
freeprob::State<double> state_at(const Semigroup& sg, double area);
EstimatorHandle estimator_handle(const Semigroup& sg, double area);

// Stationarity, increments under free multiplicative convolution for every
// pair of times, and continuity at 0.
CheckReport check_levy_axioms(const Semigroup& sg, const std::vector<double>& times, int kmax = 5);

}  // namespace mf::levy
