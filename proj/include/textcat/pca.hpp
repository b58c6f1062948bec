#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "textcat/matrix.hpp"

namespace textcat {

// Fraction of total variance to retain, in (0, 1].
struct VarianceThreshold {
  double value = 0.95;
  explicit VarianceThreshold(double v);
};

struct PcaOptions {
  VarianceThreshold threshold{0.95};
  // Divide centered features by their sample standard deviation before the
  // eigendecomposition (correlation-matrix PCA). This is what the reference
  // tool does by default and what reproduces the reported reduced dimensions;
  // covariance-only PCA is available by turning it off.
  bool standardize = true;
  // When nonzero, overrides the variance threshold with an explicit k.
  std::size_t explicit_k = 0;
};

struct PcaModel {
  std::vector<double> mean;          // length n_features
  std::vector<double> scale;         // empty when centering only
  DenseMatrix components;            // k x n_features, orthonormal rows
  std::vector<double> eigenvalues;   // length k, nonincreasing, >= 0
  double total_variance = 0.0;       // trace of the (scaled) covariance

  std::size_t k() const { return components.n_rows; }
  std::size_t n_features() const { return mean.size(); }
};

// Smallest k with (sum of the leading k eigenvalues) / (sum of all) >=
// threshold. Eigenvalues must be nonincreasing and nonnegative; an all-zero
// spectrum is a DomainError.
std::size_t choose_k(const std::vector<double>& eigenvalues,
                     VarianceThreshold threshold);

// Mean-centered (optionally standardized) covariance eigendecomposition.
// Uses the covariance (f x f) or Gram (n x n) route, whichever is smaller.
// Labels are ignored. Component signs are canonicalized so the
// largest-magnitude entry of each row is nonnegative.
PcaModel fit_pca(const LabeledSparseMatrix& train, const PcaOptions& options);

// Rows become (x - mean) . components^T, stored as dense k-vectors in the
// sparse container; labels and class names pass through unchanged.
LabeledSparseMatrix project(const PcaModel& model,
                            const LabeledSparseMatrix& data);

// Versioned text dump, exact round trip.
void save_pca(const PcaModel& model, const std::filesystem::path& path);
PcaModel load_pca(const std::filesystem::path& path);
void save_pca(const PcaModel& model, std::ostream& os);
PcaModel load_pca(std::istream& is);

// OpenMP kernels behind fit_pca, exposed for the serial/parallel equivalence
// tests and the benchmark. `centered` is row-major n x f.
DenseMatrix covariance_matrix(const DenseMatrix& centered);  // f x f
DenseMatrix gram_matrix(const DenseMatrix& centered);        // n x n

namespace ref {
// Plain serial reference implementations; must match the OpenMP kernels
// bit for bit.
DenseMatrix covariance_matrix(const DenseMatrix& centered);
DenseMatrix gram_matrix(const DenseMatrix& centered);
}  // namespace ref

}  // namespace textcat
