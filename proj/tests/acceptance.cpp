// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "masterfield/corpus.hpp"
#include "masterfield/freeprob.hpp"
#include "masterfield/holonomy.hpp"
#include "masterfield/levy.hpp"
#include "masterfield/ncalg.hpp"
#include "oracles.hpp"

using namespace mf;
using planar::Loop;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %s %s: %s; %.2f s (budget %.0f s%s)\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), dt,
              budget_s, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome from_report(const CheckReport& r) {
  Outcome o;
  o.pass = r.all_pass() && !r.cases.empty();
  o.detail = std::to_string(r.cases.size()) + " cases, max diff " + fmt("%.2e", r.max_abs_diff());
  if (const auto* f = r.first_failure()) o.detail += ", first failure " + f->name;
  return o;
}

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
  ode::integrate_adaptive(ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_dopri5<S>()), rhs, m, 0.0, t, 1e-3);
  return m;
}

}  // namespace

int main() {
  const auto corpus = corpus::default_loops();

  criterion("AC1", "simple-loop marginal", 1.0, [] {
    double worst = 0.0;
    int n = 0;
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
      const auto field = holonomy::master_field(t);
      for (int k = 1; k <= 6; ++k) {
        const double v = holonomy::evaluate(field, Loop::parse("ENWS"), k).value.real();
        worst = std::max(worst, std::abs(v - levy::fubm_moment(k, t)));
        worst = std::max(worst, std::abs(v - oracle::fubm_closed(k, t)));
        ++n;
      }
    }
    return Outcome{worst <= 1e-12, std::to_string(n) + " cases, max diff " + fmt("%.2e", worst)};
  });

  criterion("AC2", "free unitary Brownian motion values", 1.0, [] {
    const auto o1 = ode_moments(2, 1.0), o2 = ode_moments(2, 2.0);
    const double vals[][3] = {
        {levy::fubm_moment(1, 1.0), std::exp(-0.5), o1[1]},
        {levy::fubm_moment(2, 1.0), 0.0, o1[2]},
        {levy::fubm_moment(2, 2.0), -std::exp(-2.0), o2[2]},
    };
    double worst = 0.0;
    for (const auto& v : vals) worst = std::max({worst, std::abs(v[0] - v[1]), std::abs(v[1] - v[2])});
    return Outcome{worst <= 1e-10, "m1(1), m2(1), m2(2) against closed forms and ODE, max diff " + fmt("%.2e", worst)};
  });

  criterion("AC3", "large-N Monte Carlo convergence", 300.0, [&] {
    mc::MatrixSamplerConfig cfg;  // N = 64, 400 samples, seed 7
    const auto rows = holonomy::compare_mc(holonomy::master_field(), corpus, cfg, 3);
    int bad = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
      if (!r.pass) ++bad;
      if (r.estimate.stderr_ > 0) worst = std::max(worst, std::abs(r.estimate.mean.real() - r.exact) / r.estimate.stderr_);
    }
    return Outcome{bad == 0 && rows.size() == 30, std::to_string(rows.size()) + " loop/k pairs, " + std::to_string(bad) +
                                                     " outside 3 stderr, worst " + fmt("%.2f", worst) + " stderr"};
  });

  criterion("AC4", "braid invariance", 30.0,
            [&] { return from_report(holonomy::check_braid_invariance(holonomy::master_field(), corpus, 4, 4, 3)); });

  criterion("AC5", "infinite divisibility", 10.0, [] {
    const auto r = holonomy::check_infinite_divisibility(holonomy::master_field(), corpus::default_divisibility_pairs(), 5);
    Outcome o = from_report(r);
    // The sharp zero m_2(1) = 0 through the s = t = 1/2 merge.
    const std::vector<planar::Orientation> two(2, planar::Orientation::anticlockwise);
    const double z = holonomy::evaluate_word(holonomy::master_field(), {0.5, 0.5}, two, {{0, 1}, {1, 1}}, 2);
    o.pass = o.pass && std::abs(z) <= 1e-10;
    o.detail += ", tau((ab)^2) at 1/2 + 1/2 = " + fmt("%.1e", z);
    return o;
  });

  criterion("AC6", "gauge invariance (scalar)", 60.0, [] {
    Outcome o = from_report(holonomy::check_gauge_invariance_scalar(holonomy::master_field(), corpus::default_times(), 5));
    const auto c = freeprob::joint_cumulants_check_conjugation(6);
    bool odd_zero = true, even_match = true;
    for (std::size_t k = 0; k < c.conjugated.size(); ++k) {
      if ((k + 1) % 2) odd_zero = odd_zero && c.conjugated[k] == 0;
      else even_match = even_match && c.conjugated[k] == c.plain[k];
    }
    o.pass = o.pass && c.pass && odd_zero && even_match && c.conjugated.size() == 6;
    o.detail += ", conjugated cumulants to order 6 exact";
    return o;
  });

  criterion("AC7", "combinatorial oracles", 120.0, [] {
    bool ok = true;
    std::string detail;
    // NC counts by brute force.
    for (int k = 1; k <= 10; ++k) {
      std::uint64_t nc = 0;
      oracle::restricted_growth(k, [&](const std::vector<int>& lab) { nc += oracle::crossing(lab) ? 0 : 1; });
      ok = ok && nc == freeprob::catalan(k) && freeprob::enumerate_nc(k).size() == nc;
    }
    detail += std::string("NC counts k<=10 ") + (ok ? "ok" : "bad");
    // Moment-cumulant round trip on a random rational table of order 8.
    std::mt19937 gen(2024);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    const std::vector<freeprob::Letter> alphabet{{0, 0}, {0, 1}};
    freeprob::CumulantTable<Rational> table;
    table.max_order = 8;
    std::vector<freeprob::Word> layer{freeprob::Word{}};
    for (int k = 1; k <= 8; ++k) {
      std::vector<freeprob::Word> next;
      for (const auto& w : layer)
        for (const auto& l : alphabet) {
          auto x = w;
          x.push_back(l);
          table.values.emplace(x, Rational(num(gen), den(gen)));
          next.push_back(std::move(x));
        }
      layer = std::move(next);
    }
    freeprob::State<Rational> st;
    st.eval = [&table](const freeprob::Word& w) { return freeprob::moments_from_cumulants(table, w); };
    int checked = 0;
    bool rt = true;
    std::uniform_int_distribution<int> pick(0, 1);
    for (int k = 1; k <= 8; ++k)
      for (int rep = 0; rep < 6; ++rep) {
        freeprob::Word w;
        for (int i = 0; i < k; ++i) w.push_back(alphabet[static_cast<std::size_t>(pick(gen))]);
        rt = rt && freeprob::cumulants_from_moments(st, w) == table.at(w);
        ++checked;
      }
    ok = ok && rt;
    detail += ", cumulant round trip " + std::to_string(checked) + " words " + (rt ? "exact" : "bad");
    // Decompose round trip on random loops.
    int loops = 0;
    bool dec = true;
    for (int i = 0; i < 200; ++i) {
      const Loop l = Loop::parse(oracle::random_loop(gen, 24));
      planar::LassoBasis basis(planar::build_graph(std::vector<Loop>{l}));
      dec = dec && basis.substitute(basis.decompose(l)) == l;
      ++loops;
    }
    ok = ok && dec;
    detail += ", decompose round trip " + std::to_string(loops) + " loops " + (dec ? "exact" : "bad");
    return Outcome{ok, detail};
  });

  criterion("AC8", "Zhang axioms", 10.0, [] {
    int passed = 0, total = 0;
    for (int n = 1; n <= 3; ++n)
      for (auto a : ncalg::all_axioms()) {
        ++total;
        passed += ncalg::verify_axiom(a, ncalg::dual_voiculescu(n)).pass ? 1 : 0;
      }
    // Negative controls: a corrupted antipode and a corrupted coproduct.
    auto bad_s = ncalg::dual_voiculescu(2);
    bad_s.antipode = [](const ncalg::Generator& g) {
      return ncalg::Element::generator({!g.star, g.row, g.col, g.copy});
    };
    const auto r1 = ncalg::verify_axiom(ncalg::Axiom::antipode_left, bad_s);
    auto bad_d = ncalg::dual_voiculescu(2);
    bad_d.delta = [](const ncalg::Generator& g, int c1, int c2) {
      return ncalg::Element::generator({g.star, g.row, g.col, c1}) * ncalg::Element::generator({g.star, g.row, g.col, c2});
    };
    const auto r2 = ncalg::verify_axiom(ncalg::Axiom::counit_left, bad_d);
    const bool controls = !r1.pass && !r1.counterexample.empty() && !r2.pass && !r2.counterexample.empty();
    return Outcome{passed == total && controls, std::to_string(passed) + "/" + std::to_string(total) +
                                                    " axioms hold, negative controls " +
                                                    (controls ? "rejected with counterexamples" : "NOT rejected")};
  });

  criterion("AC9", "basis independence", 60.0,
            [&] { return from_report(holonomy::check_basis_independence(holonomy::master_field(), corpus, 5)); });

  std::printf("%s\n", failures == 0 ? "all criteria pass" : (std::to_string(failures) + " criteria fail").c_str());
  return failures == 0 ? 0 : 1;
}
