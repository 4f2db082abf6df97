#include "masterfield/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "masterfield/corpus.hpp"
#include "masterfield/error.hpp"
#include "masterfield/holonomy.hpp"
#include "masterfield/levy.hpp"
#include "masterfield/mc.hpp"
#include "masterfield/ncalg.hpp"

namespace mf {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

struct EvalOpts {
  std::string loop;
  bool loop_given = false;
  bool constant = false;
  int k = 1;
  std::string field = "free";
  double t_scale = 1.0;
  int n = 1;
  std::string context;
  std::string tie_break = "nesw";
};

struct CheckOpts {
  std::string corpus = "default";
  std::string field = "free";
  double t_scale = 1.0;
  int kmax = 0;  // 0: per-check default
  int max_length = 4;
};

struct McOpts {
  std::string corpus = "default";
  std::string loops;
  int N = 64;
  int samples = 400;
  std::uint64_t seed = 7;
  int steps = 200;
  int workers = 0;
  int kmax = 3;
  int k = 1;
  std::string scalars = "complex";
  std::string out = "csv";
  double t_scale = 1.0;
};

holonomy::HolonomyField make_field(const std::string& product, double t_scale, const std::string& tie_break, int n) {
  holonomy::HolonomyField f = holonomy::master_field(t_scale);
  f.product = freeprob::parse_product_kind(product);
  f.n = n;
  if (tie_break == "nesw") f.tie_break = planar::TieBreak::nesw;
  else if (tie_break == "wsen") f.tie_break = planar::TieBreak::wsen;
  else throw Error("unknown tie-break '" + tie_break + "' (expected nesw or wsen)");
  if (t_scale < 0) throw Error("--t-scale must be nonnegative");
  return f;
}

mc::MatrixSamplerConfig make_cfg(const McOpts& o) {
  mc::MatrixSamplerConfig cfg;
  cfg.N = o.N;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.step_count = o.steps;
  cfg.workers = o.workers;
  if (o.scalars == "complex") cfg.field_scalars = mc::FieldScalars::complex;
  else if (o.scalars == "real") cfg.field_scalars = mc::FieldScalars::real;
  else throw Error("unknown --scalars '" + o.scalars + "' (expected complex or real)");
  mc::validate(cfg);
  return cfg;
}

int cmd_eval(const EvalOpts& o, std::ostream& out) {
  if (o.constant) {
    if (o.loop_given && !o.loop.empty()) throw Error("--constant takes no --loop");
    out << "loop,k,value,method\n";
    out << "," << o.k << "," << num(1.0) << ",exact\n";
    return 0;
  }
  if (!o.loop_given) throw Error("eval needs --loop (or --constant)");
  if (o.loop.empty()) throw Error("not a loop: empty word allowed only as explicit constant `eval --constant`");
  const planar::Loop loop = planar::Loop::parse(o.loop);
  std::vector<planar::Loop> context;
  if (!o.context.empty()) context = planar::parse_loops(o.context);
  const auto field = make_field(o.field, o.t_scale, o.tie_break, o.n);
  const auto v = holonomy::evaluate(field, loop, o.k, context);
  out << "loop,k,value,method\n";
  out << loop.str() << "," << o.k << "," << num(v.value.real()) << "," << holonomy::to_string(v.method) << "\n";
  return 0;
}

int emit_report(const CheckReport& r, std::ostream& out, std::ostream& err) {
  out << "check,case,lhs,rhs,diff,pass\n";
  for (const auto& c : r.cases)
    out << r.check << "," << c.name << "," << num(c.lhs) << "," << num(c.rhs) << "," << num(std::abs(c.lhs - c.rhs))
        << "," << (c.pass ? "true" : "false") << "\n";
  if (const auto* f = r.first_failure()) {
    err << "check " << r.check << " failed: " << f->name << ": " << num(f->lhs) << " vs " << num(f->rhs) << "\n";
    return 1;
  }
  return 0;
}

int cmd_check(const std::string& which, const CheckOpts& o, std::ostream& out, std::ostream& err) {
  const auto field = make_field(o.field, o.t_scale, "nesw", 1);
  auto kmax = [&](int dflt) { return o.kmax > 0 ? o.kmax : dflt; };
  if (which == "braid")
    return emit_report(holonomy::check_braid_invariance(field, corpus::load_loops(o.corpus), o.max_length, 4, kmax(3)),
                       out, err);
  if (which == "area")
    return emit_report(holonomy::check_area_invariance(field, corpus::load_pairs(o.corpus), kmax(5)), out, err);
  if (which == "divisibility")
    return emit_report(holonomy::check_infinite_divisibility(field, corpus::default_divisibility_pairs(), kmax(5)), out,
                       err);
  if (which == "gauge")
    return emit_report(holonomy::check_gauge_invariance_scalar(field, corpus::default_times(), kmax(5)), out, err);
  if (which == "basis")
    return emit_report(holonomy::check_basis_independence(field, corpus::load_loops(o.corpus), kmax(5)), out, err);
  if (which == "levy")
    return emit_report(levy::check_levy_axioms(field.semigroup, corpus::default_times(), kmax(5)), out, err);
  if (which == "axioms") {
    out << "axiom,n,pass,convention,counterexample\n";
    int status = 0;
    for (int n = 1; n <= 3; ++n) {
      for (auto a : ncalg::all_axioms()) {
        const auto res = ncalg::verify_axiom(a, ncalg::dual_voiculescu(n));
        out << ncalg::to_string(a) << "," << n << "," << (res.pass ? "true" : "false") << "," << res.convention << ","
            << res.counterexample << "\n";
        if (!res.pass && status == 0) {
          err << "axiom " << ncalg::to_string(a) << " failed for n=" << n << ": " << res.counterexample << "\n";
          status = 1;
        }
      }
    }
    return status;
  }
  throw Error("unknown check '" + which + "' (expected braid, area, divisibility, gauge, basis, levy or axioms)");
}

int cmd_compare(const McOpts& o, std::ostream& out, std::ostream& err) {
  const auto cfg = make_cfg(o);
  const auto field = holonomy::master_field(o.t_scale);
  const auto rows = holonomy::compare_mc(field, corpus::load_loops(o.corpus), cfg, o.kmax);
  out << "loop,k,exact,mean_re,mean_im,stderr,pass\n";
  const holonomy::McComparison* first_bad = nullptr;
  for (const auto& r : rows) {
    out << r.loop.str() << "," << r.k << "," << num(r.exact) << "," << num(r.estimate.mean.real()) << ","
        << num(r.estimate.mean.imag()) << "," << num(r.estimate.stderr_) << "," << (r.pass ? "true" : "false") << "\n";
    if (!r.pass && !first_bad) first_bad = &r;
  }
  if (first_bad) {
    err << "compare-mc failed: " << first_bad->loop.str() << " k=" << first_bad->k << ": exact " << num(first_bad->exact)
        << ", estimate " << num(first_bad->estimate.mean.real()) << " +- " << num(first_bad->estimate.stderr_) << "\n";
    return 1;
  }
  return 0;
}

int cmd_moments(double t, int kmax, std::ostream& out) {
  const auto mv = levy::fubm_moments(t, kmax);
  out << "k,m_k\n";
  for (int k = 1; k <= kmax; ++k) out << k << "," << num(mv.m[static_cast<std::size_t>(k)]) << "\n";
  return 0;
}

int cmd_mc(const McOpts& o, std::ostream& out) {
  if (o.loops.empty()) throw Error("mc needs --loops <file>");
  const auto cfg = make_cfg(o);
  const auto field = holonomy::master_field(o.t_scale);
  const auto loops = corpus::load_loops(o.loops);
  std::vector<mc::WilsonJob> jobs;
  for (const auto& loop : loops) {
    mc::WilsonJob job;
    job.observables.push_back({o.k, 1, 0, 0});
    if (!loop.empty()) {
      planar::LassoBasis basis(planar::build_graph(std::vector<planar::Loop>{planar::reduce(loop)}), field.tie_break,
                               field.orientation);
      job.word = basis.decompose(planar::reduce(loop));
      for (const auto& l : basis.lassos())
        job.lassos.push_back(
            {static_cast<double>(basis.graph().faces()[static_cast<std::size_t>(l.face_id)].area) * o.t_scale,
             l.orientation});
    }
    jobs.push_back(std::move(job));
  }
  const auto est = mc::estimate_batch(jobs, cfg);
  std::ofstream file;
  std::ostream* os = &out;
  if (o.out != "csv" && o.out != "-") {
    file.open(o.out);
    if (!file) throw Error("cannot write '" + o.out + "'");
    os = &file;
  }
  *os << "word,mean_re,mean_im,stderr\n";
  for (std::size_t i = 0; i < loops.size(); ++i)
    *os << loops[i].str() << "," << num(est[i][0].mean.real()) << "," << num(est[i][0].mean.imag()) << ","
        << num(est[i][0].stderr_) << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"masterfield: holonomy fields on planar lattice loops"};
  app.require_subcommand(1);

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "Evaluate the field on a loop");
  auto* loop_opt = eval->add_option("--loop", eo.loop, "Loop word over N, E, S, W");
  eval->add_flag("--constant", eo.constant, "Evaluate the constant loop");
  eval->add_option("--k", eo.k, "Power of the holonomy");
  eval->add_option("--field", eo.field, "Product of states: free, boolean or tensor");
  eval->add_option("--t-scale", eo.t_scale, "Time per unit cell");
  eval->add_option("--n", eo.n, "Dimension of the gauge algebra");
  eval->add_option("--context", eo.context, "Extra loops drawing the graph, comma separated");
  eval->add_option("--tie-break", eo.tie_break, "Spanning tree policy: nesw or wsen");

  CheckOpts co;
  std::string which;
  auto* check = app.add_subcommand("check", "Run an invariance check");
  check->add_option("which", which, "braid, area, divisibility, gauge, basis, levy or axioms")->required();
  check->add_option("--corpus", co.corpus, "default or a corpus file");
  check->add_option("--field", co.field, "Product of states");
  check->add_option("--t-scale", co.t_scale, "Time per unit cell");
  check->add_option("--kmax", co.kmax, "Largest power");
  check->add_option("--max-length", co.max_length, "Longest braid word");

  McOpts mo;
  auto add_mc = [&mo](CLI::App* sub) {
    sub->add_option("--N", mo.N, "Matrix size");
    sub->add_option("--samples", mo.samples, "Number of samples");
    sub->add_option("--seed", mo.seed, "Random seed");
    sub->add_option("--steps", mo.steps, "SDE steps per unit time");
    sub->add_option("--workers", mo.workers, "Worker threads (default: MASTERFIELD_WORKERS or all cores)");
    sub->add_option("--scalars", mo.scalars, "complex or real");
    sub->add_option("--t-scale", mo.t_scale, "Time per unit cell");
  };
  auto* compare = app.add_subcommand("compare-mc", "Compare exact values with Monte Carlo estimates");
  add_mc(compare);
  compare->add_option("--corpus", mo.corpus, "default or a corpus file");
  compare->add_option("--kmax", mo.kmax, "Largest power");

  double t = 1.0;
  int kmax = 6;
  auto* moments = app.add_subcommand("moments", "Moments of the free unitary Brownian motion");
  moments->add_option("--t", t, "Time")->required();
  moments->add_option("--kmax", kmax, "Largest order (at most 20)");

  auto* mcc = app.add_subcommand("mc", "Monte Carlo Wilson loops for a loop file");
  add_mc(mcc);
  mcc->add_option("--loops", mo.loops, "Loop file (one loop per line) or default")->required();
  mcc->add_option("--k", mo.k, "Power of the holonomy");
  mcc->add_option("--out", mo.out, "csv for standard output, or a file path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) {
      eo.loop_given = loop_opt->count() > 0;
      return cmd_eval(eo, out);
    }
    if (check->parsed()) return cmd_check(which, co, out, err);
    if (compare->parsed()) return cmd_compare(mo, out, err);
    if (moments->parsed()) return cmd_moments(t, kmax, out);
    if (mcc->parsed()) return cmd_mc(mo, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mf
