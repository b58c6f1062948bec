#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "textcat/classifiers.hpp"
#include "textcat/corpus.hpp"
#include "textcat/matrix.hpp"
#include "textcat/pca.hpp"

namespace textcat {

// One fold index per document. Fold sizes differ by at most 1, and so do the
// per-class counts across folds (stratification).
struct FoldPlan {
  std::uint32_t k = 0;
  std::vector<std::uint32_t> assignment;
  std::uint64_t seed = 0;
};

FoldPlan stratified_kfold(const std::vector<std::uint32_t>& labels,
                          std::uint32_t k, std::uint64_t seed);

class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t n_classes)
      : n_(n_classes), counts_(n_classes * n_classes, 0) {}

  std::size_t n_classes() const { return n_; }
  std::uint64_t at(std::size_t truth, std::size_t pred) const {
    return counts_[truth * n_ + pred];
  }
  void add(std::size_t truth, std::size_t pred, std::uint64_t count = 1) {
    counts_[truth * n_ + pred] += count;
  }
  void merge(const ConfusionMatrix& other);

  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(std::size_t i) const;   // true class i support
  std::uint64_t col_sum(std::size_t j) const;

  // One-vs-rest reductions per Table-style definitions.
  std::uint64_t tp(std::size_t c) const { return at(c, c); }
  std::uint64_t fn(std::size_t c) const { return row_sum(c) - at(c, c); }
  std::uint64_t fp(std::size_t c) const { return col_sum(c) - at(c, c); }
  std::uint64_t tn(std::size_t c) const {
    return total() - tp(c) - fn(c) - fp(c);
  }

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> counts_;
};

ConfusionMatrix confusion(const std::vector<std::uint32_t>& truth,
                          const std::vector<std::uint32_t>& predicted,
                          std::size_t n_classes);

// Percentages. Per-class metrics return nullopt when their denominator is
// zero (undefined; excluded from averages with a warning).
double accuracy(const ConfusionMatrix& cm);
std::optional<double> sensitivity(const ConfusionMatrix& cm, std::size_t c);
std::optional<double> specificity(const ConfusionMatrix& cm, std::size_t c);
std::optional<double> precision(const ConfusionMatrix& cm, std::size_t c);

// Harmonic mean of two percentages: 2ab/(a+b); defined as 0 when a = b = 0.
double f_measure(double a, double b);

struct PipelineOptions {
  bool use_pca = false;
  PcaOptions pca;
  // Fit PCA on the training folds only (default) or once on the whole
  // dataset before splitting (the leaky variant, for comparison).
  bool pca_whole_dataset = false;
  TrainConfig train;
};

struct ClassMetrics {
  std::string name;
  std::uint64_t support = 0;
  std::optional<double> precision;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> f_sens_spec;  // harmonic(sensitivity, specificity)
  std::optional<double> f_prec_sens;  // harmonic(precision, sensitivity)
};

struct EvalReport {
  std::string dataset_name;
  std::size_t n_docs = 0;
  std::size_t n_features_input = 0;
  // Features actually consumed by the classifier; with per-fold PCA this is
  // the mean of the fold dimensions.
  double features_used = 0.0;
  std::vector<std::size_t> fold_feature_counts;

  ConfusionMatrix pooled;
  std::vector<ConfusionMatrix> per_fold;
  std::vector<ClassMetrics> per_class;

  // Class-support-weighted averages over the defined classes.
  std::optional<double> precision_avg;
  std::optional<double> sensitivity_avg;
  std::optional<double> specificity_avg;
  std::optional<double> f_sens_spec_avg;
  std::optional<double> f_prec_sens_avg;
  double accuracy_pct = 0.0;

  double runtime_seconds = 0.0;  // reported on the console, not in files
  std::vector<std::string> warnings;
  // Resolved configuration, ordered key=value; re-parsing it reproduces the
  // exact experiment.
  std::vector<std::pair<std::string, std::string>> config_echo;
};

// Per-class metric table + weighted averages from a pooled matrix.
void finalize_report(EvalReport& report, const std::vector<std::string>& class_names,
                     const WarningSink& warn);

// Stratified k-fold protocol: per fold, fit PCA (when enabled) and the
// classifier on the training folds, predict the held-out fold, pool all
// held-out predictions into one confusion matrix.
EvalReport cross_validate(const LabeledSparseMatrix& data,
                          const PipelineOptions& pipeline, std::uint32_t k,
                          std::uint64_t seed,
                          const WarningSink& warn = stderr_warnings());

}  // namespace textcat
