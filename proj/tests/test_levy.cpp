#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "masterfield/error.hpp"
#include "masterfield/levy.hpp"
#include "oracles.hpp"

using namespace mf;
using namespace mf::levy;

namespace {

// Moments of the free unitary Brownian motion by integrating
// m_k' = -k/2 m_k - k/2 sum_{j=1}^{k-1} m_j m_{k-j}, m_k(0) = 1.
std::vector<double> ode_moments(int kmax, double t) {
  namespace ode = boost::numeric::odeint;
  using S = std::vector<double>;
  S m(static_cast<std::size_t>(kmax) + 1, 1.0);
  auto rhs = [kmax](const S& x, S& dx, double) {
    dx[0] = 0.0;
    for (int k = 1; k <= kmax; ++k) {
      double s = 0.0;
      for (int j = 1; j < k; ++j) s += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(k - j)];
      dx[static_cast<std::size_t>(k)] = -0.5 * k * (x[static_cast<std::size_t>(k)] + s);
    }
  };
  if (t > 0)
    ode::integrate_adaptive(ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_dopri5<S>()), rhs, m, 0.0, t, 1e-3);
  return m;
}

}  // namespace

TEST_CASE("closed values") {
  CHECK(fubm_moment(1, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(std::abs(fubm_moment(2, 1.0)) < 1e-15);
  CHECK(fubm_moment(2, 2.0) == doctest::Approx(-std::exp(-2.0)).epsilon(1e-14));
  CHECK(fubm_moment(0, 3.0) == 1.0);
  CHECK(fubm_moment(-3, 0.7) == fubm_moment(3, 0.7));
}

TEST_CASE("moments against the ODE and the closed sum") {
  for (double t : {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 3.5}) {
    const auto ode = ode_moments(10, t);
    const auto mv = fubm_moments(t, 10);
    CHECK(mv.t == t);
    REQUIRE(mv.m.size() == 11);
    for (int k = 0; k <= 10; ++k) {
      CAPTURE(k);
      CAPTURE(t);
      CHECK(std::abs(mv.m[static_cast<std::size_t>(k)] - ode[static_cast<std::size_t>(k)]) < 1e-10);
      CHECK(std::abs(mv.m[static_cast<std::size_t>(k)] - oracle::fubm_closed(k, t)) < 1e-11);
    }
  }
  for (int k = 11; k <= kMaxOrder; ++k) CHECK(std::abs(fubm_moment(k, 0.8) - oracle::fubm_closed(k, 0.8)) < 1e-9);
}

TEST_CASE("polynomial coefficients") {
  // P_2(t) = 1 - t, P_3(t) = 1 - 3t + 3t^2/2
  CHECK(fubm_polynomial(2) == std::vector<Rational>{1, -1});
  CHECK(fubm_polynomial(3) == std::vector<Rational>{1, -3, Rational(3, 2)});
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(fubm_moment(21, 1.0), Error);
  CHECK_THROWS_AS(fubm_moment(1, -0.5), Error);
  CHECK_THROWS_AS(fubm_moments(1.0, 21), Error);
}

TEST_CASE("states and estimator handles") {
  const auto st = state_at(Semigroup{}, 1.0);
  using freeprob::Letter;
  CHECK(st({Letter{0, 0}}) == doctest::Approx(std::exp(-0.5)));
  CHECK(st({Letter{0, 0}, Letter{0, 1}}) == 1.0);
  CHECK(st({Letter{0, 1}, Letter{0, 1}, Letter{0, 1}}) == doctest::Approx(fubm_moment(3, 1.0)));
  CHECK(st.tracial);

  Semigroup mcsg{SemigroupKind::block_mc, 2, {}, 32};
  const auto mst = state_at(mcsg, 0.5);
  try {
    (void)mst({Letter{0, 0}});
    FAIL("expected ExactEvaluationUnavailable");
  } catch (const ExactEvaluationUnavailable& e) {
    CHECK(e.handle().area == 0.5);
    CHECK(e.handle().semigroup.N == 32);
  }
  CHECK(estimator_handle(mcsg, 2.0).area == 2.0);
}

TEST_CASE("Levy axioms") {
  const auto r = check_levy_axioms(Semigroup{}, {0.25, 0.5, 1.0, 2.0}, 5);
  CHECK(r.all_pass());
  CHECK(r.cases.size() > 20);
  CHECK(std::abs(fubm_moment(3, 1e-6) - 1.0) < 1e-5);
}
