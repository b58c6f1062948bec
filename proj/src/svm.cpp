#include <algorithm>
#include <cmath>

#include "textcat/classifiers.hpp"
#include "textcat/errors.hpp"
#include "textcat/rng.hpp"

namespace textcat {

namespace {

// Soft-margin linear SVM via dual coordinate descent (exact single-variable
// maximization per step, so the dual objective never decreases). The bias is
// an augmented always-one feature, regularized with the weights.
BinarySvm train_binary_svm(const LabeledSparseMatrix& data,
                           const std::vector<double>& y, double c,
                           std::uint32_t max_epochs, double tolerance,
                           std::uint64_t seed) {
  const std::size_t n = data.n_docs;
  const std::size_t f = data.n_features;

  BinarySvm svm;
  svm.w.assign(f, 0.0);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> qii(n);
  for (std::size_t i = 0; i < n; ++i) {
    double q = 1.0;  // the bias feature
    for (const auto& fw : data.rows[i]) q += fw.value * fw.value;
    qii[i] = q;
  }

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);

  const auto dual_objective = [&] {
    double wsq = svm.bias * svm.bias;
    for (double v : svm.w) wsq += v * v;
    double asum = 0.0;
    for (double a : alpha) asum += a;
    return asum - 0.5 * wsq;
  };
  const auto primal_objective = [&] {
    double wsq = svm.bias * svm.bias;
    for (double v : svm.w) wsq += v * v;
    double hinge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double score = svm.bias;
      for (const auto& fw : data.rows[i]) score += svm.w[fw.index] * fw.value;
      hinge += std::max(0.0, 1.0 - y[i] * score);
    }
    return 0.5 * wsq + c * hinge;
  };

  for (std::uint32_t epoch = 0; epoch < max_epochs; ++epoch) {
    shuffle(order, rng);
    double max_violation = 0.0;
    for (const auto i : order) {
      double score = svm.bias;
      for (const auto& fw : data.rows[i]) score += svm.w[fw.index] * fw.value;
      const double gradient = y[i] * score - 1.0;

      // Projected gradient: zero when the box constraint is already active
      // in the gradient's direction.
      double pg = gradient;
      if (alpha[i] <= 0.0 && gradient >= 0.0) pg = 0.0;
      if (alpha[i] >= c && gradient <= 0.0) pg = 0.0;
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;

      const double old = alpha[i];
      alpha[i] = std::clamp(old - gradient / qii[i], 0.0, c);
      const double delta = (alpha[i] - old) * y[i];
      if (delta == 0.0) continue;
      for (const auto& fw : data.rows[i]) svm.w[fw.index] += delta * fw.value;
      svm.bias += delta;
    }
    svm.objective_trace.push_back(dual_objective());
    svm.primal_trace.push_back(primal_objective());
    if (max_violation < tolerance) break;
  }
  return svm;
}

std::vector<double> one_vs_rest_targets(const LabeledSparseMatrix& data,
                                        std::uint32_t positive_class) {
  std::vector<double> y(data.n_docs);
  for (std::size_t i = 0; i < data.n_docs; ++i)
    y[i] = data.labels[i] == positive_class ? 1.0 : -1.0;
  return y;
}

SvmModel train_svm_impl(const LabeledSparseMatrix& data,
                        const TrainConfig& cfg, bool parallel) {
  cfg.validate();
  if (data.n_docs == 0) throw DomainError("train_svm: empty training set");

  std::vector<bool> present(data.n_classes(), false);
  for (auto l : data.labels) present[l] = true;
  if (std::count(present.begin(), present.end(), true) < 2)
    throw DomainError("train_svm: need at least 2 classes present");

  SvmModel model;
  model.n_classes = static_cast<std::uint32_t>(data.n_classes());
  model.n_features = static_cast<std::uint32_t>(data.n_features);
  model.machines.resize(model.n_classes);

  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t cls = 0;
         cls < static_cast<std::ptrdiff_t>(model.n_classes); ++cls)
      model.machines[static_cast<std::size_t>(cls)] = train_binary_svm(
          data, one_vs_rest_targets(data, static_cast<std::uint32_t>(cls)),
          cfg.svm_c, cfg.svm_epochs, cfg.svm_tolerance,
          Rng::derive(cfg.rng_seed, static_cast<std::uint64_t>(cls)));
  } else {
    for (std::uint32_t cls = 0; cls < model.n_classes; ++cls)
      model.machines[cls] = train_binary_svm(
          data, one_vs_rest_targets(data, cls), cfg.svm_c, cfg.svm_epochs,
          cfg.svm_tolerance, Rng::derive(cfg.rng_seed, cls));
  }
  return model;
}

}  // namespace

SvmModel train_svm(const LabeledSparseMatrix& data, const TrainConfig& cfg) {
  return train_svm_impl(data, cfg, true);
}

namespace ref {
SvmModel train_svm(const LabeledSparseMatrix& data, const TrainConfig& cfg) {
  return train_svm_impl(data, cfg, false);
}
}  // namespace ref

std::uint32_t svm_classify(const SvmModel& model, const double* x) {
  if (model.machines.empty()) throw DomainError("svm_classify: untrained model");
  std::uint32_t winner = 0;
  double best = 0.0;
  for (std::uint32_t cls = 0; cls < model.machines.size(); ++cls) {
    const auto& m = model.machines[cls];
    double score = m.bias;
    for (std::size_t a = 0; a < m.w.size(); ++a) score += m.w[a] * x[a];
    if (cls == 0 || score > best) {  // ties -> lower class index
      best = score;
      winner = cls;
    }
  }
  return winner;
}

}  // namespace textcat
