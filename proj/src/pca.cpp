#include "textcat/pca.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "textcat/errors.hpp"

namespace textcat {

namespace {

// Eigenvalues this far below the leading one are numerical noise, not
// directions of the data.
constexpr double kRankCutoff = 1e-12;

}  // namespace

VarianceThreshold::VarianceThreshold(double v) : value(v) {
  if (!(v > 0.0) || v > 1.0)
    throw DomainError("variance threshold must be in (0, 1]");
}

std::size_t choose_k(const std::vector<double>& eigenvalues,
                     VarianceThreshold threshold) {
  double total = 0.0;
  for (double ev : eigenvalues) total += ev;
  if (!(total > 0.0))
    throw DomainError("choose_k: all-zero eigenvalue spectrum");
  double cum = 0.0;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    cum += eigenvalues[k];
    if (cum / total >= threshold.value) return k + 1;
  }
  return eigenvalues.size();
}

DenseMatrix covariance_matrix(const DenseMatrix& centered) {
  const std::size_t n = centered.n_rows, f = centered.n_cols;
  // Column-contiguous copy so each entry is a cache-friendly dot product.
  DenseMatrix cols(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < f; ++a) cols.at(a, i) = centered.at(i, a);

  DenseMatrix c(f, f);
  const double divisor = static_cast<double>(n - 1);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(f); ++a) {
    const double* ca = cols.row(static_cast<std::size_t>(a));
    for (std::size_t b = static_cast<std::size_t>(a); b < f; ++b) {
      const double* cb = cols.row(b);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += ca[i] * cb[i];
      const double v = dot / divisor;
      c.at(static_cast<std::size_t>(a), b) = v;
      c.at(b, static_cast<std::size_t>(a)) = v;
    }
  }
  return c;
}

DenseMatrix gram_matrix(const DenseMatrix& centered) {
  const std::size_t n = centered.n_rows, f = centered.n_cols;
  DenseMatrix g(n, n);
  const double divisor = static_cast<double>(n - 1);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const double* ri = centered.row(static_cast<std::size_t>(i));
    for (std::size_t j = static_cast<std::size_t>(i); j < n; ++j) {
      const double* rj = centered.row(j);
      double dot = 0.0;
      for (std::size_t a = 0; a < f; ++a) dot += ri[a] * rj[a];
      const double v = dot / divisor;
      g.at(static_cast<std::size_t>(i), j) = v;
      g.at(j, static_cast<std::size_t>(i)) = v;
    }
  }
  return g;
}

namespace ref {

DenseMatrix covariance_matrix(const DenseMatrix& centered) {
  const std::size_t n = centered.n_rows, f = centered.n_cols;
  DenseMatrix cols(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < f; ++a) cols.at(a, i) = centered.at(i, a);

  DenseMatrix c(f, f);
  const double divisor = static_cast<double>(n - 1);
  for (std::size_t a = 0; a < f; ++a) {
    const double* ca = cols.row(a);
    for (std::size_t b = a; b < f; ++b) {
      const double* cb = cols.row(b);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += ca[i] * cb[i];
      const double v = dot / divisor;
      c.at(a, b) = v;
      c.at(b, a) = v;
    }
  }
  return c;
}

DenseMatrix gram_matrix(const DenseMatrix& centered) {
  const std::size_t n = centered.n_rows, f = centered.n_cols;
  DenseMatrix g(n, n);
  const double divisor = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = centered.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const double* rj = centered.row(j);
      double dot = 0.0;
      for (std::size_t a = 0; a < f; ++a) dot += ri[a] * rj[a];
      const double v = dot / divisor;
      g.at(i, j) = v;
      g.at(j, i) = v;
    }
  }
  return g;
}

}  // namespace ref

namespace {

void canonicalize_sign(DenseMatrix& components) {
  for (std::size_t r = 0; r < components.n_rows; ++r) {
    double* row = components.row(r);
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t a = 0; a < components.n_cols; ++a) {
      const double mag = std::abs(row[a]);
      if (mag > best) {
        best = mag;
        arg = a;
      }
    }
    if (row[arg] < 0.0)
      for (std::size_t a = 0; a < components.n_cols; ++a) row[a] = -row[a];
  }
}

}  // namespace

PcaModel fit_pca(const LabeledSparseMatrix& train, const PcaOptions& options) {
  const std::size_t n = train.n_docs, f = train.n_features;
  if (n < 2) throw DomainError("fit_pca: need at least 2 documents");
  if (f == 0) throw DomainError("fit_pca: no features");

  PcaModel model;
  model.mean.assign(f, 0.0);
  for (const auto& row : train.rows)
    for (const auto& fw : row) {
      if (!std::isfinite(fw.value))
        throw DomainError("fit_pca: non-finite input value");
      model.mean[fw.index] += fw.value;
    }
  for (double& m : model.mean) m /= static_cast<double>(n);

  if (options.standardize) {
    std::vector<double> sq(f, 0.0);
    std::vector<std::uint32_t> nnz(f, 0);
    for (const auto& row : train.rows)
      for (const auto& fw : row) {
        const double d = fw.value - model.mean[fw.index];
        sq[fw.index] += d * d;
        ++nnz[fw.index];
      }
    model.scale.assign(f, 1.0);
    for (std::size_t a = 0; a < f; ++a) {
      // zeros contribute (0 - mean)^2 each
      const double zero_part =
          static_cast<double>(n - nnz[a]) * model.mean[a] * model.mean[a];
      const double var = (sq[a] + zero_part) / static_cast<double>(n - 1);
      model.scale[a] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
  }

  // Centered (and scaled) dense view of the training data.
  DenseMatrix x(n, f);
  for (std::size_t d = 0; d < n; ++d) {
    double* out = x.row(d);
    for (std::size_t a = 0; a < f; ++a) out[a] = -model.mean[a];
    for (const auto& fw : train.rows[d]) out[fw.index] += fw.value;
    if (!model.scale.empty())
      for (std::size_t a = 0; a < f; ++a) out[a] /= model.scale[a];
  }

  double total_variance = 0.0;
  for (std::size_t a = 0; a < f; ++a) {
    double sq = 0.0;
    for (std::size_t d = 0; d < n; ++d) sq += x.at(d, a) * x.at(d, a);
    total_variance += sq / static_cast<double>(n - 1);
  }
  if (!(total_variance > 0.0))
    throw DomainError("fit_pca: degenerate all-constant matrix");
  model.total_variance = total_variance;

  std::vector<double> spectrum;
  DenseMatrix components;

  if (f <= n) {
    // Covariance route: eigenvectors are the components directly.
    const DenseMatrix c = covariance_matrix(x);
    Eigen::Map<const Eigen::MatrixXd> cm(c.data.data(),
                                         static_cast<Eigen::Index>(f),
                                         static_cast<Eigen::Index>(f));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cm);
    if (solver.info() != Eigen::Success)
      throw DomainError("fit_pca: eigendecomposition failed");
    const auto& values = solver.eigenvalues();    // ascending
    const auto& vectors = solver.eigenvectors();  // columns
    spectrum.resize(f);
    components = DenseMatrix(f, f);
    for (std::size_t r = 0; r < f; ++r) {
      const auto src = static_cast<Eigen::Index>(f - 1 - r);
      spectrum[r] = std::max(0.0, values(src));
      for (std::size_t a = 0; a < f; ++a)
        components.at(r, a) = vectors(static_cast<Eigen::Index>(a), src);
    }
  } else {
    // Gram route: n < f. Eigenvectors v of the Gram matrix map to
    // components u = X^T v / sqrt((n-1) lambda).
    const DenseMatrix g = gram_matrix(x);
    Eigen::Map<const Eigen::MatrixXd> gm(g.data.data(),
                                         static_cast<Eigen::Index>(n),
                                         static_cast<Eigen::Index>(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gm);
    if (solver.info() != Eigen::Success)
      throw DomainError("fit_pca: eigendecomposition failed");
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    spectrum.resize(n);
    for (std::size_t r = 0; r < n; ++r)
      spectrum[r] = std::max(0.0, values(static_cast<Eigen::Index>(n - 1 - r)));

    const double lead = spectrum.empty() ? 0.0 : spectrum[0];
    std::size_t usable = 0;
    while (usable < n && spectrum[usable] > lead * kRankCutoff) ++usable;

    components = DenseMatrix(usable, f);
    for (std::size_t r = 0; r < usable; ++r) {
      const auto src = static_cast<Eigen::Index>(n - 1 - r);
      const double norm =
          std::sqrt(static_cast<double>(n - 1) * spectrum[r]);
      double* out = components.row(r);
      for (std::size_t a = 0; a < f; ++a) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          dot += x.at(i, a) * vectors(static_cast<Eigen::Index>(i), src);
        out[a] = dot / norm;
      }
    }
    spectrum.resize(usable);
  }

  const double lead = spectrum.empty() ? 0.0 : spectrum[0];
  if (!(lead > 0.0))
    throw DomainError("fit_pca: degenerate all-constant matrix");

  std::size_t rank = 0;
  while (rank < spectrum.size() && spectrum[rank] > lead * kRankCutoff)
    ++rank;

  std::size_t k;
  if (options.explicit_k > 0) {
    k = std::min(options.explicit_k, rank);
  } else {
    k = std::min(choose_k(spectrum, options.threshold), rank);
  }
  // k never exceeds min(n_docs - 1, n_features)
  k = std::min(k, std::min(n - 1, f));

  PcaModel out = std::move(model);
  out.eigenvalues.assign(spectrum.begin(),
                         spectrum.begin() + static_cast<std::ptrdiff_t>(k));
  out.components = DenseMatrix(k, f);
  for (std::size_t r = 0; r < k; ++r)
    std::copy(components.row(r), components.row(r) + f,
              out.components.row(r));
  canonicalize_sign(out.components);
  return out;
}

LabeledSparseMatrix project(const PcaModel& model,
                            const LabeledSparseMatrix& data) {
  const std::size_t f = model.n_features();
  if (data.n_features != f)
    throw ArityError("project: data has " + std::to_string(data.n_features) +
                     " features, model expects " + std::to_string(f));
  const std::size_t k = model.k();

  // Scaled components and per-component offsets let the projection walk only
  // the nonzeros of each row: y_j = sum_a x_a * s[j][a] - offset_j.
  DenseMatrix scaled(k, f);
  std::vector<double> offset(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double* srow = scaled.row(j);
    const double* crow = model.components.row(j);
    for (std::size_t a = 0; a < f; ++a) {
      srow[a] = model.scale.empty() ? crow[a] : crow[a] / model.scale[a];
      offset[j] += model.mean[a] * srow[a];
    }
  }

  LabeledSparseMatrix out;
  out.n_docs = data.n_docs;
  out.n_features = k;
  out.labels = data.labels;
  out.class_names = data.class_names;
  out.rows.resize(data.n_docs);
  for (std::size_t d = 0; d < data.n_docs; ++d) {
    SparseRow& row = out.rows[d];
    row.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      double y = -offset[j];
      const double* srow = scaled.row(j);
      for (const auto& fw : data.rows[d]) y += fw.value * srow[fw.index];
      row.push_back({static_cast<std::uint32_t>(j), y});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

void write_values(std::ostream& os, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? " " : "") << format_double(v[i]);
  os << '\n';
}

std::vector<double> read_values(std::istream& is, std::size_t count,
                                const char* what) {
  std::vector<double> out(count);
  std::string tok;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(is >> tok))
      throw ParseError(std::string("pca model: truncated ") + what);
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{})
      throw ParseError(std::string("pca model: bad number in ") + what);
    out[i] = v;
  }
  return out;
}

}  // namespace

void save_pca(const PcaModel& model, std::ostream& os) {
  os << "textcat-pca 1\n";
  os << "features " << model.n_features() << '\n';
  os << "components " << model.k() << '\n';
  os << "standardize " << (model.scale.empty() ? 0 : 1) << '\n';
  os << "total_variance " << format_double(model.total_variance) << '\n';
  write_values(os, model.mean);
  if (!model.scale.empty()) write_values(os, model.scale);
  write_values(os, model.eigenvalues);
  for (std::size_t r = 0; r < model.k(); ++r) {
    std::vector<double> row(model.components.row(r),
                            model.components.row(r) + model.n_features());
    write_values(os, row);
  }
}

void save_pca(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  save_pca(model, os);
  if (!os) throw IoError("write failed: " + path.string());
}

PcaModel load_pca(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "textcat-pca" || version != 1)
    throw ParseError("pca model: unrecognized header");
  std::string key;
  std::size_t f = 0, k = 0;
  int standardize = 0;
  std::string tv;
  is >> key >> f >> key >> k >> key >> standardize >> key >> tv;

  PcaModel model;
  auto res = std::from_chars(tv.data(), tv.data() + tv.size(),
                             model.total_variance);
  if (res.ec != std::errc{})
    throw ParseError("pca model: bad total_variance");
  model.mean = read_values(is, f, "mean");
  if (standardize) model.scale = read_values(is, f, "scale");
  model.eigenvalues = read_values(is, k, "eigenvalues");
  model.components = DenseMatrix(k, f);
  for (std::size_t r = 0; r < k; ++r) {
    auto row = read_values(is, f, "components");
    std::copy(row.begin(), row.end(), model.components.row(r));
  }
  return model;
}

PcaModel load_pca(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  return load_pca(is);
}

}  // namespace textcat
