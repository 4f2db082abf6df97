#include "masterfield/holonomy.hpp"

#include <algorithm>
#include <map>

#include "masterfield/error.hpp"
#include "masterfield/ncalg.hpp"

namespace mf::holonomy {

using freeprob::Letter;
using freeprob::State;
using freeprob::Word;
using planar::Loop;
using planar::Orientation;

std::string to_string(Method m) { return m == Method::exact ? "exact" : "mc"; }

HolonomyField master_field(double t_scale) {
  HolonomyField f;
  f.t_scale = t_scale;
  return f;
}

Word to_letters(const FreeWord& w, int k) {
  FreeWord base = k < 0 ? free_inverse(w) : w;
  Word out;
  for (int i = 0; i < std::abs(k); ++i)
    for (const auto& l : base) out.push_back({l.gen, l.exp > 0 ? 0 : 1});
  return out;
}

namespace {

Word swap_symbols(const Word& w) {
  Word out = w;
  for (auto& l : out) l.symbol = 1 - l.symbol;
  return out;
}

State<double> marginal(const HolonomyField& field, double area, Orientation o) {
  State<double> s = levy::state_at(field.semigroup, area);
  if (o == Orientation::anticlockwise) return s;
  // A clockwise lasso is the inverse of the anticlockwise one: compose with S.
  State<double> r = s;
  r.eval = [s](const Word& w) { return s(swap_symbols(w)); };
  if (s.simplify) r.simplify = [s](const Word& w) { return swap_symbols(s.simplify(swap_symbols(w))); };
  return r;
}

struct Decomposed {
  FreeWord word;
  std::vector<double> areas;
  std::vector<Orientation> orientations;
};

Decomposed decompose_in(const HolonomyField& field, const Loop& loop, const std::vector<Loop>& context) {
  std::vector<Loop> loops{planar::reduce(loop)};
  for (const auto& c : context) loops.push_back(planar::reduce(c));
  Decomposed d;
  bool any = false;
  for (const auto& l : loops) any = any || !l.empty();
  if (!any) return d;
  planar::LassoBasis basis(planar::build_graph(loops), field.tie_break, field.orientation);
  d.word = basis.decompose(loops.front());
  for (const auto& lasso : basis.lassos()) {
    d.areas.push_back(static_cast<double>(basis.graph().faces()[static_cast<std::size_t>(lasso.face_id)].area) *
                      field.t_scale);
    d.orientations.push_back(lasso.orientation);
  }
  return d;
}

void require_exact(const HolonomyField& field) {
  if (field.n != 1) throw Error("exact evaluation unavailable, use mc");
}

std::string kname(int k) { return " k=" + std::to_string(k); }

}  // namespace

double evaluate_word(const HolonomyField& field, const std::vector<double>& areas,
                     const std::vector<Orientation>& orientations, const FreeWord& w, int k) {
  require_exact(field);
  if (areas.size() != orientations.size()) throw Error("evaluate_word: areas and orientations differ in length");
  if (w.empty() || k == 0) return 1.0;
  std::vector<State<double>> marginals;
  for (std::size_t i = 0; i < areas.size(); ++i) marginals.push_back(marginal(field, areas[i], orientations[i]));
  return freeprob::product_state(field.product, marginals, field.options)(to_letters(w, k));
}

FieldValue evaluate(const HolonomyField& field, const Loop& loop, int k, const std::vector<Loop>& context) {
  require_exact(field);
  FieldValue v;
  v.loop = loop;
  v.k = k;
  v.method = Method::exact;
  const Decomposed d = decompose_in(field, loop, context);
  v.value = evaluate_word(field, d.areas, d.orientations, d.word, k);
  return v;
}

CheckReport check_braid_invariance(const HolonomyField& field, const std::vector<Loop>& corpus, int max_length,
                                   int max_strands, int kmax) {
  CheckReport r;
  r.check = "braid";
  for (const auto& loop : corpus) {
    const Decomposed d = decompose_in(field, loop, {});
    const int n = static_cast<int>(d.areas.size());
    if (n == 0 || n > max_strands) continue;
    std::vector<double> base;
    for (int k = 1; k <= kmax; ++k) base.push_back(evaluate_word(field, d.areas, d.orientations, d.word, k));
    std::vector<FreeWord> gens;
    for (int i = 0; i < n; ++i) gens.push_back({FreeLetter{i, 1}});
    for (const auto& beta : planar::all_braid_words(n, max_length)) {
      planar::BraidWord inv{n, {}};
      for (auto it = beta.letters.rbegin(); it != beta.letters.rend(); ++it) inv.letters.push_back({it->index, -it->sign});
      const auto braided = planar::braid_act(beta, gens);  // c' in terms of c
      const auto back = planar::braid_act(inv, gens);      // c in terms of c'
      const FreeWord w2 = free_substitute(d.word, back);
      std::vector<double> areas2(static_cast<std::size_t>(n));
      std::vector<Orientation> orient2(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        // c'_i is conjugate to a single c_j; it inherits that lasso's law.
        const auto ab = abelianize(braided[static_cast<std::size_t>(i)], n);
        int j = -1;
        for (int q = 0; q < n; ++q) {
          if (ab[static_cast<std::size_t>(q)] == 1 && j < 0) j = q;
          else if (ab[static_cast<std::size_t>(q)] != 0) j = -2;
        }
        if (j < 0) throw Error("braid action did not permute conjugacy classes");
        areas2[static_cast<std::size_t>(i)] = d.areas[static_cast<std::size_t>(j)];
        orient2[static_cast<std::size_t>(i)] = d.orientations[static_cast<std::size_t>(j)];
      }
      for (int k = 1; k <= kmax; ++k)
        r.add(loop.str() + " " + planar::to_string(beta) + kname(k), evaluate_word(field, areas2, orient2, w2, k),
              base[static_cast<std::size_t>(k - 1)], 1e-10);
    }
  }
  return r;
}

CheckReport check_infinite_divisibility(const HolonomyField& field, const std::vector<std::pair<double, double>>& pairs,
                                        int kmax) {
  require_exact(field);
  CheckReport r;
  r.check = "divisibility";
  const std::vector<Orientation> two(2, Orientation::anticlockwise), one(1, Orientation::anticlockwise);
  const FreeWord merged{{0, 1}, {1, 1}}, single{{0, 1}};
  for (auto [s, t] : pairs) {
    for (int k = 1; k <= kmax; ++k)
      r.add("s=" + std::to_string(s) + " t=" + std::to_string(t) + kname(k), evaluate_word(field, {s, t}, two, merged, k),
            evaluate_word(field, {s + t}, one, single, k), 1e-10);
  }
  // The same merge on the lattice: a loop around two faces split by a chord
  // against the same loop in its own single-face graph.
  const std::vector<std::pair<std::string, std::string>> splits{
      {"EENWWS", "ENWS"}, {"ENNWSS", "ENWS"}, {"EEENWWWS", "EENWWS"}, {"EENNWWSS", "ENWS"}};
  for (const auto& [outer, chord] : splits) {
    const Loop l = Loop::parse(outer);
    for (int k = 1; k <= kmax; ++k)
      r.add(outer + " split by " + chord + kname(k), evaluate(field, l, k, {Loop::parse(chord)}).value.real(),
            evaluate(field, l, k).value.real(), 1e-10);
  }
  return r;
}

namespace {

// Word with generators renamed in order of first appearance, and the
// lasso data permuted accordingly.
struct Canonical {
  FreeWord word;
  std::vector<double> areas;
  std::vector<Orientation> orientations;
};

Canonical canonical(const Decomposed& d) {
  std::map<int, int> rename;
  Canonical c;
  for (const auto& l : d.word) {
    auto [it, inserted] = rename.try_emplace(l.gen, static_cast<int>(rename.size()));
    if (inserted) {
      c.areas.push_back(d.areas[static_cast<std::size_t>(l.gen)]);
      c.orientations.push_back(d.orientations[static_cast<std::size_t>(l.gen)]);
    }
    c.word.push_back({it->second, l.exp});
  }
  return c;
}

}  // namespace

CheckReport check_area_invariance(const HolonomyField& field, const std::vector<std::pair<Loop, Loop>>& pairs,
                                  int kmax) {
  CheckReport r;
  r.check = "area";
  for (const auto& [a, b] : pairs) {
    const Canonical ca = canonical(decompose_in(field, a, {}));
    const Canonical cb = canonical(decompose_in(field, b, {}));
    if (ca.word != cb.word || ca.areas != cb.areas || ca.orientations != cb.orientations)
      throw Error("non-matching combinatorics: " + a.str() + " (" + to_string(ca.word) + ") vs " + b.str() + " (" +
                  to_string(cb.word) + ")");
    for (int k = 1; k <= kmax; ++k)
      r.add(a.str() + " ~ " + b.str() + kname(k), evaluate(field, a, k).value.real(), evaluate(field, b, k).value.real(),
            1e-10);
  }
  return r;
}

CheckReport check_gauge_invariance_scalar(const HolonomyField& field, const std::vector<double>& times, int kmax) {
  require_exact(field);
  CheckReport r;
  r.check = "gauge";
  const ncalg::Element omega = ncalg::omega_c(ncalg::u(1, 1), 1, 1, 2);
  // Copy 1 carries the gauge v, copy 2 the field u.
  auto letters = [](const ncalg::Word& w) {
    Word out;
    for (const auto& g : w) out.push_back({g.copy == 1 ? 0 : 1, g.star ? 1 : 0});
    return out;
  };
  State<double> trivial;
  trivial.tracial = true;
  trivial.eval = [](const Word&) { return 1.0; };
  const freeprob::ProductOptions plain{false, false};
  for (double t : times) {
    const auto fs = levy::state_at(field.semigroup, t * field.t_scale);
    const auto joint = freeprob::product_state<double>(freeprob::ProductKind::free,
                                                        {freeprob::haar_unitary_state<double>(), fs}, plain);
    const auto ungauged = freeprob::product_state<double>(freeprob::ProductKind::free, {trivial, fs}, plain);
    ncalg::Element power = ncalg::Element::scalar(1);
    for (int k = 1; k <= kmax; ++k) {
      power = power * omega;
      double gauged = 0.0, unit = 0.0;
      for (const auto& [w, c] : power.terms()) {
        gauged += to_double(c) * joint(letters(w));
        unit += to_double(c) * ungauged(letters(w));
      }
      const double expected = fs(Word(static_cast<std::size_t>(k), Letter{0, 0}));
      r.add("haar t=" + std::to_string(t) + kname(k), gauged, expected, 1e-10);
      r.add("unit t=" + std::to_string(t) + kname(k), unit, expected, 1e-10);
    }
  }
  return r;
}

CheckReport check_basis_independence(const HolonomyField& field, const std::vector<Loop>& corpus, int kmax) {
  CheckReport r;
  r.check = "basis";
  HolonomyField alt = field;
  alt.tie_break = field.tie_break == planar::TieBreak::nesw ? planar::TieBreak::wsen : planar::TieBreak::nesw;
  HolonomyField flipped = field;
  flipped.orientation =
      field.orientation == Orientation::anticlockwise ? Orientation::clockwise : Orientation::anticlockwise;
  for (const auto& loop : corpus) {
    for (int k = 1; k <= kmax; ++k) {
      const double v = evaluate(field, loop, k).value.real();
      r.add(loop.str() + " tie-break" + kname(k), evaluate(alt, loop, k).value.real(), v, 1e-10);
      r.add(loop.str() + " orientation" + kname(k), evaluate(flipped, loop, k).value.real(), v, 1e-10);
    }
  }
  return r;
}

std::vector<McComparison> compare_mc(const HolonomyField& field, const std::vector<Loop>& corpus,
                                     const mc::MatrixSamplerConfig& cfg, int kmax) {
  std::vector<mc::WilsonJob> jobs;
  std::vector<std::vector<double>> exact;
  for (const auto& loop : corpus) {
    const Decomposed d = decompose_in(field, loop, {});
    mc::WilsonJob job;
    for (std::size_t i = 0; i < d.areas.size(); ++i) job.lassos.push_back({d.areas[i], d.orientations[i]});
    job.word = d.word;
    std::vector<double> ex;
    for (int k = 1; k <= kmax; ++k) {
      job.observables.push_back({k, 1, 0, 0});
      ex.push_back(evaluate_word(field, d.areas, d.orientations, d.word, k));
    }
    jobs.push_back(std::move(job));
    exact.push_back(std::move(ex));
  }
  const auto est = mc::estimate_batch(jobs, cfg);
  std::vector<McComparison> out;
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    for (int k = 1; k <= kmax; ++k) {
      McComparison c;
      c.loop = corpus[j];
      c.k = k;
      c.exact = exact[j][static_cast<std::size_t>(k - 1)];
      c.estimate = est[j][static_cast<std::size_t>(k - 1)];
      c.pass = mc::within(c.estimate, c.exact, 3.0);
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace mf::holonomy
