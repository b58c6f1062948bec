#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "textcat/matrix.hpp"

namespace textcat {

enum class Algorithm { Knn, J48, RandomForest, Svm };

Algorithm parse_algorithm(const std::string& name);  // knn|j48|rf|svm
std::string to_string(Algorithm a);

enum class SplitCriterion { GainRatio, InfoGain };

struct TrainConfig {
  Algorithm algorithm = Algorithm::RandomForest;

  // KNN
  std::uint32_t knn_k = 1;

  // J48 / forest trees
  std::uint32_t tree_min_leaf = 2;
  double tree_confidence = 0.25;  // pessimistic-error pruning CF, in (0,1)
  bool tree_prune = true;         // J48 only; forest trees are never pruned

  // Random forest
  std::uint32_t forest_trees = 100;
  std::uint32_t forest_subspace = 0;  // 0 -> floor(log2(features)) + 1
  bool forest_bootstrap = true;       // test hook: false = identity sample

  // SVM (one-vs-rest soft-margin linear machines)
  double svm_c = 1.0;
  std::uint32_t svm_epochs = 1000;
  double svm_tolerance = 1e-4;

  std::uint64_t rng_seed = 1;

  void validate() const;  // throws DomainError on out-of-range settings
};

// ---------------------------------------------------------------------------
// Models

struct KnnModel {
  DenseMatrix train;                 // stored training rows
  std::vector<std::uint32_t> labels;
  std::uint32_t k = 1;
  std::string metric = "euclidean";
  std::uint32_t n_classes = 0;
};

struct TreeNode {
  // internal node when left != nullptr, leaf otherwise
  std::uint32_t feature = 0;
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;   // value <= threshold
  std::unique_ptr<TreeNode> right;  // value >  threshold
  std::uint32_t class_index = 0;
  std::vector<double> counts;       // leaf training distribution

  bool is_leaf() const { return left == nullptr; }
};

struct TreeModel {
  std::unique_ptr<TreeNode> root;
  std::uint32_t n_classes = 0;
  std::uint32_t n_features = 0;
};

struct ForestModel {
  std::vector<std::unique_ptr<TreeNode>> trees;
  std::vector<std::uint64_t> tree_seeds;  // bootstrap/subspace stream per tree
  std::uint32_t n_classes = 0;
  std::uint32_t n_features = 0;
};

struct BinarySvm {
  std::vector<double> w;
  double bias = 0.0;
  // Dual objective value after each optimization epoch; nondecreasing by
  // construction of the coordinate updates. Not persisted.
  std::vector<double> objective_trace;
  std::vector<double> primal_trace;  // primal objective per epoch
};

struct SvmModel {
  std::vector<BinarySvm> machines;  // one per class (one-vs-rest)
  std::uint32_t n_classes = 0;
  std::uint32_t n_features = 0;
};

// ---------------------------------------------------------------------------
// Split scoring (C4.5 machinery, exposed for the brute-force oracle tests)

struct SplitEval {
  double info_gain = 0.0;   // bits
  double split_info = 0.0;  // bits
  double gain_ratio = 0.0;  // 0 when split_info == 0 (split rejected)
  std::size_t n_left = 0;
  std::size_t n_right = 0;
};

SplitEval evaluate_split(const std::vector<std::uint32_t>& labels,
                         const std::vector<double>& values, double threshold,
                         std::size_t n_classes);

double gain_ratio(const std::vector<std::uint32_t>& labels,
                  const std::vector<double>& values, double threshold,
                  std::size_t n_classes);

// ---------------------------------------------------------------------------
// Training

KnnModel train_knn(const LabeledSparseMatrix& data, const TrainConfig& cfg);
TreeModel train_tree(const LabeledSparseMatrix& data, const TrainConfig& cfg);
ForestModel train_forest(const LabeledSparseMatrix& data,
                         const TrainConfig& cfg);
SvmModel train_svm(const LabeledSparseMatrix& data, const TrainConfig& cfg);

// Bootstrap sample of n indices (with replacement) drawn from the given
// seed; exposed so out-of-bag evaluation can reconstruct tree membership.
std::vector<std::uint32_t> bootstrap_indices(std::uint64_t seed,
                                             std::uint32_t n);

// ---------------------------------------------------------------------------
// Classification (x must match the model's feature count)

std::uint32_t knn_classify(const KnnModel& model, const double* x);
std::uint32_t tree_classify(const TreeNode& root, const double* x);
std::uint32_t forest_classify(const ForestModel& model, const double* x);
std::uint32_t svm_classify(const SvmModel& model, const double* x);

// Tagged union over the four model kinds, so the evaluation loop stays
// algorithm-agnostic.
struct TrainedModel {
  Algorithm algorithm = Algorithm::Knn;
  std::optional<KnnModel> knn;
  std::optional<TreeModel> tree;
  std::optional<ForestModel> forest;
  std::optional<SvmModel> svm;
};

TrainedModel train_classifier(const LabeledSparseMatrix& data,
                              const TrainConfig& cfg);

// Batch prediction, parallel over query rows (bit-identical to the serial
// reference for any thread count).
std::vector<std::uint32_t> classify_all(const TrainedModel& model,
                                        const DenseMatrix& queries);

namespace ref {
std::vector<std::uint32_t> classify_all(const TrainedModel& model,
                                        const DenseMatrix& queries);
ForestModel train_forest(const LabeledSparseMatrix& data,
                         const TrainConfig& cfg);
SvmModel train_svm(const LabeledSparseMatrix& data, const TrainConfig& cfg);
}  // namespace ref

// ---------------------------------------------------------------------------
// Persistence: versioned text dumps, exact round trip of every number.

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace textcat
