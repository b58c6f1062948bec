#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace textcat {

struct FeatureWeight {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const FeatureWeight&, const FeatureWeight&) = default;
};

using SparseRow = std::vector<FeatureWeight>;

// Document-term weight matrix plus per-document class labels. Rows keep
// ascending feature indices with no duplicates; labels index class_names.
struct LabeledSparseMatrix {
  std::size_t n_docs = 0;
  std::size_t n_features = 0;
  std::vector<SparseRow> rows;
  std::vector<std::uint32_t> labels;
  std::vector<std::string> class_names;

  std::size_t n_classes() const { return class_names.size(); }

  // Throws DomainError/ArityError if any structural invariant is broken.
  void validate() const;

  friend bool operator==(const LabeledSparseMatrix&,
                         const LabeledSparseMatrix&) = default;
};

// Row-major dense matrix used at classification and PCA boundaries.
struct DenseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : n_rows(rows), n_cols(cols), data(rows * cols, 0.0) {}

  double* row(std::size_t r) { return data.data() + r * n_cols; }
  const double* row(std::size_t r) const { return data.data() + r * n_cols; }
  double& at(std::size_t r, std::size_t c) { return data[r * n_cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * n_cols + c]; }
};

DenseMatrix densify(const LabeledSparseMatrix& m);
void scatter_row(const SparseRow& row, double* out, std::size_t n_features);

// Canonical sparse text format: optional "# classes: a b c" header, then one
// document per line as "label idx:weight idx:weight ..." with ascending
// indices. Weights use shortest round-trip formatting, so save/load is exact.
void save_sparse(const LabeledSparseMatrix& m, std::ostream& os);
void save_sparse(const LabeledSparseMatrix& m,
                 const std::filesystem::path& path);
LabeledSparseMatrix load_sparse(std::istream& is);
LabeledSparseMatrix load_sparse(const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace textcat
