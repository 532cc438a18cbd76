#include "crossnet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "crossnet/error.hpp"
#include "crossnet/parallel.hpp"
#include "crossnet/rng.hpp"

namespace crossnet {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = p + 1; q < a.size(); ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

// Zero a(p, q) with one plane rotation, updating the eigenvector basis if given.
void rotate(DenseMatrix& a, DenseMatrix* v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::hypot(t, 1.0);
  const double s = t * c;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;
  if (v == nullptr) return;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = (*v)(k, p);
    const double vkq = (*v)(k, q);
    (*v)(k, p) = c * vkp - s * vkq;
    (*v)(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

Spectrum eig_symmetric(const DenseMatrix& input, bool want_vectors, const JacobiOptions& opts) {
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (input(i, j) != input(j, i))
        throw ParameterError("eig_symmetric: matrix is not symmetric at (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")");

  DenseMatrix a = input;
  std::optional<DenseMatrix> v;
  if (want_vectors) {
    v.emplace(n);
    for (std::size_t i = 0; i < n; ++i) (*v)(i, i) = 1.0;
  }

  const double threshold = opts.relative_threshold * input.frobenius_norm();
  int sweep = 0;
  for (; off_diagonal_norm(a) > threshold; ++sweep) {
    if (sweep >= opts.max_sweeps)
      throw NumericalError("eig_symmetric: no convergence after " +
                           std::to_string(opts.max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (a(p, q) != 0.0) rotate(a, v ? &*v : nullptr, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  Spectrum out;
  out.sweeps = sweep;
  out.eigenvalues.reserve(n);
  for (std::size_t idx : order) out.eigenvalues.push_back(a(idx, idx));
  if (v) {
    DenseMatrix sorted(n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t row = 0; row < n; ++row) sorted(row, col) = (*v)(row, order[col]);
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

Spectrum eig_symmetric(const LaplacianMatrix& l, bool want_vectors, const JacobiOptions& opts) {
  return eig_symmetric(l.dense(), want_vectors, opts);
}

// 2 - 2cos(x) is evaluated as 4 sin^2(x/2) so the small eigenvalues keep full
// relative precision.
std::vector<double> ring_spectrum_closed_form(std::size_t n, std::size_t k) {
  GraphSpec{.family = GraphFamily::ring, .n = n, .k = k}.validate();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double lambda = 0.0;
    for (std::size_t m = 1; m <= k; ++m) {
      const double half_angle = std::numbers::pi * static_cast<double>((m * j) % n) / n;
      const double s = std::sin(half_angle);
      lambda += 4.0 * s * s;
    }
    out[j] = lambda;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> path_spectrum_closed_form(std::size_t n) {
  GraphSpec{.family = GraphFamily::path, .n = n}.validate();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(j) / (2.0 * n));
    out[j] = 4.0 * s * s;
  }
  return out;
}

double algebraic_connectivity(const Spectrum& s) {
  if (s.eigenvalues.size() < 2) throw ParameterError("algebraic_connectivity: requires N >= 2");
  return s.eigenvalues[1];
}

bool check_connectivity_bound(const Graph& g, const Spectrum& s, double tol) {
  const double n = static_cast<double>(g.n_nodes());
  return algebraic_connectivity(s) <= 2.0 * static_cast<double>(g.n_edges()) / (n - 1.0) + tol;
}

void SpectralAccumulator::add(std::span<const double> values) {
  if (count_ == 0) {
    mean_.assign(values.size(), 0.0);
    m2_.assign(values.size(), 0.0);
  } else if (values.size() != mean_.size()) {
    throw ParameterError("SpectralAccumulator: spectrum length mismatch");
  }
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double delta = values[i] - mean_[i];
    mean_[i] += delta * inv;
    m2_[i] += delta * (values[i] - mean_[i]);
  }
}

void SpectralAccumulator::merge(const SpectralAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  if (other.mean_.size() != mean_.size())
    throw ParameterError("SpectralAccumulator: spectrum length mismatch");
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double delta = other.mean_[i] - mean_[i];
    mean_[i] += delta * nb / n;
    m2_[i] += other.m2_[i] + delta * delta * na * nb / n;
  }
  count_ += other.count_;
}

SpectralStats SpectralAccumulator::stats() const {
  SpectralStats s;
  s.realizations = count_;
  s.mean = mean_;
  s.variance.resize(m2_.size());
  for (std::size_t i = 0; i < m2_.size(); ++i)
    s.variance[i] = count_ > 0 ? std::max(0.0, m2_[i] / static_cast<double>(count_)) : 0.0;
  return s;
}

std::vector<std::vector<double>> ensemble_spectra(const GraphSpec& spec, std::size_t realizations,
                                                  std::uint64_t master_seed, unsigned threads) {
  if (realizations == 0) throw ParameterError("ensemble: realizations must be >= 1");
  spec.validate();
  std::vector<std::vector<double>> out(realizations);
  parallel_for(realizations, threads, [&](std::size_t r) {
    GraphSpec draw = spec;
    draw.seed = derive_seed(master_seed, r);
    out[r] = eig_symmetric(build_laplacian(generate(draw)), false).eigenvalues;
  });
  return out;
}

SpectralStats spectral_stats(const std::vector<std::vector<double>>& spectra) {
  SpectralAccumulator acc;
  for (const auto& s : spectra) acc.add(s);
  return acc.stats();
}

SpectralStats ensemble_spectrum_stats(const GraphSpec& spec, std::size_t realizations,
                                      std::uint64_t master_seed, unsigned threads) {
  return spectral_stats(ensemble_spectra(spec, realizations, master_seed, threads));
}

}  // namespace crossnet
