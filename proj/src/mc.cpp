#include "masterfield/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "masterfield/error.hpp"

#ifdef MASTERFIELD_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace mf::mc {

void validate(const MatrixSamplerConfig& cfg) {
  if (cfg.N < 2) throw Error("matrix size N must be at least 2");
  if (cfg.step_count < 50) throw Error("step_count must be at least 50 per unit time");
  if (cfg.samples < 1) throw Error("samples must be positive");
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MASTERFIELD_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw Error(std::string("MASTERFIELD_WORKERS must be a positive integer, got '") + env + "'");
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

double unitarity_defect(const Matrix& U) {
  return (U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())).norm();
}

namespace {

// Solves L X = R in place of R.
void solve_in_place(Matrix& L, Matrix& R) {
#ifdef MASTERFIELD_HAVE_LAPACKE
  std::vector<lapack_int> piv(static_cast<std::size_t>(L.rows()));
  const auto n = static_cast<lapack_int>(L.rows());
  lapack_int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, static_cast<lapack_int>(R.cols()),
                                  reinterpret_cast<lapack_complex_double*>(L.data()), n, piv.data(),
                                  reinterpret_cast<lapack_complex_double*>(R.data()), n);
  if (info != 0) throw Error("Cayley step: singular system");
#else
  R = L.partialPivLu().solve(R);
#endif
}

}  // namespace

void brownian_step(Matrix& U, double dt, FieldScalars field, Rng& rng) {
  const Eigen::Index N = U.rows();
  const double sd = std::sqrt(dt / static_cast<double>(N));
  Matrix A(N, N);
  if (field == FieldScalars::complex) {
    // A = iX with X Hermitian (GUE), entry variance dt/N.
    const double od = sd / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < N; ++j) {
      A(j, j) = Complex(0.0, sd * rng.normal());
      for (Eigen::Index i = j + 1; i < N; ++i) {
        const double re = od * rng.normal(), im = od * rng.normal();
        const Complex x(re, im);
        A(i, j) = Complex(0.0, 1.0) * x;
        A(j, i) = Complex(0.0, 1.0) * std::conj(x);
      }
    }
  } else {
    for (Eigen::Index j = 0; j < N; ++j) {
      A(j, j) = 0.0;
      for (Eigen::Index i = j + 1; i < N; ++i) {
        const double a = sd * rng.normal();
        A(i, j) = a;
        A(j, i) = -a;
      }
    }
  }
  Matrix L = Matrix::Identity(N, N) - 0.5 * A;
  Matrix R = U;
  R.noalias() += 0.5 * (A * U);
  solve_in_place(L, R);
  U = std::move(R);
}

std::vector<Matrix> sample_path(const MatrixSamplerConfig& cfg, const std::vector<double>& times, Rng& rng) {
  validate(cfg);
  const double dt = 1.0 / cfg.step_count;
  Matrix U = Matrix::Identity(cfg.N, cfg.N);
  double t = 0.0;
  std::vector<Matrix> out;
  out.reserve(times.size());
  for (double target : times) {
    if (target < t) throw Error("sample_path: times must be sorted and nonnegative");
    while (target - t > 1e-12) {
      const double h = std::min(dt, target - t);
      brownian_step(U, h, cfg.field_scalars, rng);
      t = target - t <= dt ? target : t + h;
    }
    if (target > 0 && unitarity_defect(U) > kUnitarityTolerance)
      throw Error("unitarity drift exceeds tolerance; increase step_count");
    out.push_back(U);
  }
  return out;
}

Matrix sample_ubm(const MatrixSamplerConfig& cfg, double t, Rng& rng) {
  if (t < 0) throw Error("negative time");
  return sample_path(cfg, {t}, rng).front();
}

Matrix haar_unitary(int N, Rng& rng) {
  Matrix G(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) G(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix& R = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const Complex r = R(j, j);
    const double a = std::abs(r);
    Q.col(j) *= a > 0 ? r / a : Complex(1.0);
  }
  return Q;
}

Complex normalized_trace(const Matrix& M) { return M.trace() / static_cast<double>(M.rows()); }

namespace {

BlockFamily blocks_from_sizes(const Matrix& U, const std::vector<int>& d) {
  BlockFamily f;
  f.sizes = d;
  std::vector<int> off{0};
  for (int s : d) off.push_back(off.back() + s);
  const int N = static_cast<int>(U.rows());
  f.blocks.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) f.blocks[i].push_back(U.block(off[i], off[j], d[i], d[j]));
    Matrix p = Matrix::Zero(N, N);
    for (int r = off[i]; r < off[i + 1]; ++r) p(r, r) = 1.0;
    f.projectors.push_back(std::move(p));
  }
  return f;
}

void check_sizes(const Matrix& U, const std::vector<int>& d) {
  if (U.rows() != U.cols()) throw Error("block extraction needs a square matrix");
  long total = 0;
  for (int s : d) {
    if (s < 1) throw Error("block sizes must be positive");
    total += s;
  }
  if (total != U.rows())
    throw Error("block sizes sum to " + std::to_string(total) + ", matrix has size " + std::to_string(U.rows()));
}

}  // namespace

BlockFamily extract_blocks_square(const Matrix& U, int n, int d) {
  if (n < 1 || d < 1 || static_cast<long>(n) * d != U.rows() || U.rows() != U.cols())
    throw Error("square blocks: N must equal n*d");
  return blocks_from_sizes(U, std::vector<int>(static_cast<std::size_t>(n), d));
}

BlockFamily extract_blocks_rect(const Matrix& U, const std::vector<int>& d) {
  check_sizes(U, d);
  return blocks_from_sizes(U, d);
}

ConditionalExpectation conditional_expectation_rect(const Matrix& A, const std::vector<int>& d) {
  check_sizes(A, d);
  ConditionalExpectation ce;
  ce.value = Matrix::Zero(A.rows(), A.cols());
  int off = 0;
  for (int s : d) {
    const Complex c = A.block(off, off, s, s).trace() / static_cast<double>(s);
    ce.coefficients.push_back(c);
    for (int r = off; r < off + s; ++r) ce.value(r, r) = c;
    off += s;
  }
  return ce;
}

bool within(const WilsonEstimate& e, Complex exact, double sigmas) {
  return std::abs(e.mean - exact) <= sigmas * e.stderr_ + 1e-12;
}

namespace {

Matrix matrix_power(const Matrix& P, int k) {
  const Eigen::Index N = P.rows();
  Matrix base = k < 0 ? Matrix(P.adjoint()) : P;
  Matrix r = Matrix::Identity(N, N);
  for (int i = 0; i < std::abs(k); ++i) r = r * base;
  return r;
}

Complex observe(const Matrix& P, const Observable& o) {
  Matrix Pk = matrix_power(P, o.power);
  if (o.blocks <= 1) return normalized_trace(Pk);
  const Eigen::Index N = P.rows();
  if (N % o.blocks != 0) throw Error("observable: N is not a multiple of the block count");
  const Eigen::Index d = N / o.blocks;
  if (o.row < 0 || o.row >= o.blocks || o.col < 0 || o.col >= o.blocks) throw Error("observable: block index out of range");
  return Pk.block(o.row * d, o.col * d, d, d).trace() / static_cast<double>(d);
}

constexpr std::uint64_t kStreamsPerSample = 1024;

}  // namespace

std::vector<std::vector<WilsonEstimate>> estimate_batch(const std::vector<WilsonJob>& jobs,
                                                        const MatrixSamplerConfig& cfg) {
  validate(cfg);
  std::size_t slots = 0;
  for (const auto& job : jobs) {
    slots = std::max(slots, job.lassos.size());
    for (const auto& l : job.word)
      if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= job.lassos.size())
        throw Error("word refers to lasso " + std::to_string(l.gen + 1) + ", only " +
                    std::to_string(job.lassos.size()) + " given");
    for (const auto& l : job.lassos)
      if (l.area < 0) throw Error("negative lasso area");
  }
  if (slots + 1 >= kStreamsPerSample) throw Error("too many lassos in one job");
  std::vector<std::vector<double>> slot_times(slots);
  for (const auto& job : jobs)
    for (std::size_t l = 0; l < job.lassos.size(); ++l) slot_times[l].push_back(job.lassos[l].area);
  for (auto& t : slot_times) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  std::vector<std::size_t> offset{0};
  for (const auto& job : jobs) offset.push_back(offset.back() + job.observables.size());
  const std::size_t width = offset.back();
  const auto S = static_cast<std::size_t>(cfg.samples);
  std::vector<Complex> values(S * width);

  auto run_sample = [&](std::size_t s) {
    std::vector<std::map<double, Matrix>> snaps(slots);
    for (std::size_t l = 0; l < slots; ++l) {
      Rng rng(cfg.seed, s * kStreamsPerSample + l);
      auto path = sample_path(cfg, slot_times[l], rng);
      for (std::size_t i = 0; i < path.size(); ++i) snaps[l].emplace(slot_times[l][i], std::move(path[i]));
    }
    Matrix V;
    bool have_gauge = false;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const auto& job = jobs[j];
      if (job.gauge_conjugate && !have_gauge) {
        Rng rng(cfg.seed, s * kStreamsPerSample + kStreamsPerSample - 1);
        V = haar_unitary(cfg.N, rng);
        have_gauge = true;
      }
      std::vector<Matrix> H;
      for (std::size_t l = 0; l < job.lassos.size(); ++l) {
        Matrix h = snaps[l].at(job.lassos[l].area);
        if (job.lassos[l].orientation == planar::Orientation::clockwise) h = h.adjoint().eval();
        if (job.gauge_conjugate) h = (V * h * V.adjoint()).eval();
        H.push_back(std::move(h));
      }
      Matrix P = Matrix::Identity(cfg.N, cfg.N);
      for (const auto& letter : job.word) {
        const Matrix& h = H[static_cast<std::size_t>(letter.gen)];
        if (letter.exp > 0)
          P = P * h;
        else
          P = P * h.adjoint();
      }
      for (std::size_t o = 0; o < job.observables.size(); ++o)
        values[s * width + offset[j] + o] = observe(P, job.observables[o]);
    }
  };

  const int W = std::min<int>(resolve_workers(cfg.workers), cfg.samples);
  if (W <= 1) {
    for (std::size_t s = 0; s < S; ++s) run_sample(s);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(W));
    for (int w = 0; w < W; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t s = static_cast<std::size_t>(w); s < S; s += static_cast<std::size_t>(W)) run_sample(s);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Serial reduction in sample order: bit-exact for any worker count.
  std::vector<std::vector<WilsonEstimate>> out(jobs.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (std::size_t o = 0; o < jobs[j].observables.size(); ++o) {
      const std::size_t c = offset[j] + o;
      Complex sum = 0.0;
      for (std::size_t s = 0; s < S; ++s) sum += values[s * width + c];
      WilsonEstimate e;
      e.samples = cfg.samples;
      e.mean = sum / static_cast<double>(S);
      double ss = 0.0;
      for (std::size_t s = 0; s < S; ++s) ss += std::norm(values[s * width + c] - e.mean);
      e.stderr_ = S > 1 ? std::sqrt(ss / static_cast<double>(S - 1)) / std::sqrt(static_cast<double>(S)) : 0.0;
      out[j].push_back(e);
    }
  }
  return out;
}

WilsonEstimate estimate_wilson(const std::vector<LassoSpec>& lassos, const FreeWord& word,
                               const MatrixSamplerConfig& cfg, Observable obs) {
  WilsonJob job{lassos, word, {obs}, false};
  return estimate_batch({job}, cfg).front().front();
}

}  // namespace mf::mc
