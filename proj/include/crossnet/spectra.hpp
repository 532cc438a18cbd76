#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crossnet/graph.hpp"
#include "crossnet/matrix.hpp"

namespace crossnet {

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  // Column a holds the unit eigenvector for eigenvalues[a].
  std::optional<DenseMatrix> eigenvectors;
  int sweeps = 0;
};

struct JacobiOptions {
  // Stop once the off-diagonal Frobenius norm drops below this fraction of ||A||_F.
  double relative_threshold = 1e-12;
  int max_sweeps = 100;
};

// Cyclic Jacobi rotations on a dense symmetric matrix. Throws NumericalError
// if the off-diagonal mass has not converged within max_sweeps.
Spectrum eig_symmetric(const DenseMatrix& a, bool want_vectors, const JacobiOptions& opts = {});
Spectrum eig_symmetric(const LaplacianMatrix& l, bool want_vectors,
                       const JacobiOptions& opts = {});

// Laplacian spectrum of the 2K-regular ring, sorted ascending.
std::vector<double> ring_spectrum_closed_form(std::size_t n, std::size_t k);

// Laplacian spectrum of the N-node path (corner diagonal entries 1).
std::vector<double> path_spectrum_closed_form(std::size_t n);

// Second-smallest eigenvalue. Throws ParameterError for N < 2.
double algebraic_connectivity(const Spectrum& s);

// lambda_2 <= 2|E| / (N - 1) + tol
bool check_connectivity_bound(const Graph& g, const Spectrum& s, double tol = 1e-9);

struct SpectralStats {
  std::vector<double> mean;      // per sorted index
  std::vector<double> variance;  // population variance per sorted index
  std::size_t realizations = 0;
};

// Per-index running mean / variance (Welford), mergeable with Chan's update.
class SpectralAccumulator {
 public:
  void add(std::span<const double> sorted_eigenvalues);
  void merge(const SpectralAccumulator& other);
  SpectralStats stats() const;
  std::size_t count() const { return count_; }

 private:
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

// Sorted Laplacian eigenvalues of `realizations` independent draws of `spec`;
// realization r uses derive_seed(master_seed, r). The result does not depend
// on `threads`.
std::vector<std::vector<double>> ensemble_spectra(const GraphSpec& spec, std::size_t realizations,
                                                  std::uint64_t master_seed,
                                                  unsigned threads = 1);

SpectralStats ensemble_spectrum_stats(const GraphSpec& spec, std::size_t realizations,
                                      std::uint64_t master_seed, unsigned threads = 1);

SpectralStats spectral_stats(const std::vector<std::vector<double>>& spectra);

}  // namespace crossnet
