#include <algorithm>
#include <cmath>
#include <limits>

#include "textcat/errors.hpp"
#include "tree_growth.hpp"

namespace textcat {

namespace {

double log2_safe(double v) { return v > 0.0 ? std::log2(v) : 0.0; }

double entropy_bits(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) h -= (c / total) * log2_safe(c / total);
  return h;
}

}  // namespace

SplitEval evaluate_split(const std::vector<std::uint32_t>& labels,
                         const std::vector<double>& values, double threshold,
                         std::size_t n_classes) {
  if (labels.size() != values.size())
    throw ArityError("evaluate_split: labels/values size mismatch");
  std::vector<double> left(n_classes, 0.0), right(n_classes, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    (values[i] <= threshold ? left : right)[labels[i]] += 1.0;

  SplitEval eval;
  double nl = 0.0, nr = 0.0;
  for (double c : left) nl += c;
  for (double c : right) nr += c;
  eval.n_left = static_cast<std::size_t>(nl);
  eval.n_right = static_cast<std::size_t>(nr);
  const double total = nl + nr;
  if (nl == 0.0 || nr == 0.0) return eval;  // not a partition; rejected

  std::vector<double> parent(n_classes, 0.0);
  for (std::size_t c = 0; c < n_classes; ++c)
    parent[c] = left[c] + right[c];
  eval.info_gain = entropy_bits(parent, total) -
                   (nl / total) * entropy_bits(left, nl) -
                   (nr / total) * entropy_bits(right, nr);
  eval.split_info =
      -(nl / total) * log2_safe(nl / total) -
      (nr / total) * log2_safe(nr / total);
  eval.gain_ratio =
      eval.split_info > 0.0 ? eval.info_gain / eval.split_info : 0.0;
  return eval;
}

double gain_ratio(const std::vector<std::uint32_t>& labels,
                  const std::vector<double>& values, double threshold,
                  std::size_t n_classes) {
  return evaluate_split(labels, values, threshold, n_classes).gain_ratio;
}

}  // namespace textcat

namespace textcat::detail {

double inverse_normal(double p) {
  // Acklam's rational approximation, |relative error| < 1.2e-9.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    const double q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

double pessimistic_added_errors(double n, double e, double confidence) {
  if (confidence > 0.5) return 0.0;
  if (e < 1.0) {
    const double base = n * (1.0 - std::pow(confidence, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (pessimistic_added_errors(n, 1.0, confidence) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = inverse_normal(1.0 - confidence);
  const double f = (e + 0.5) / n;
  const double r =
      (f + z * z / (2 * n) +
       z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
      (1 + z * z / n);
  return r * n - e;
}

namespace {

struct BestSplit {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double info_gain = 0.0;
  double gain_ratio = 0.0;
};

struct FeatureSplit {
  bool usable = false;
  double threshold = 0.0;
  double info_gain = 0.0;
  double split_info = 0.0;
};

// Best threshold for one feature by information gain, C4.5 numeric-attribute
// rules optional (dynamic minimum branch size + MDL charge on the gain).
FeatureSplit best_numeric_split(
    const DenseMatrix& x, const std::vector<std::uint32_t>& labels,
    const std::vector<std::uint32_t>& indices, std::uint32_t feature,
    std::size_t n_classes, const GrowthOptions& options,
    std::vector<std::pair<double, std::uint32_t>>& scratch) {
  const std::size_t n = indices.size();
  scratch.clear();
  scratch.reserve(n);
  for (const auto idx : indices)
    scratch.emplace_back(x.at(idx, feature), labels[idx]);
  std::sort(scratch.begin(), scratch.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double min_branch = static_cast<double>(options.min_leaf);
  if (options.c45_numeric_rules) {
    const double dynamic =
        0.1 * static_cast<double>(n) / static_cast<double>(n_classes);
    min_branch = std::clamp(dynamic, static_cast<double>(options.min_leaf),
                            25.0);
  }

  std::vector<double> left(n_classes, 0.0), right(n_classes, 0.0);
  for (const auto& [value, label] : scratch) right[label] += 1.0;
  const double total = static_cast<double>(n);
  const double parent_entropy = entropy_bits(right, total);

  FeatureSplit best;
  double best_gain = 0.0;
  std::size_t candidates = 0;
  double nl = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& [value, label] = scratch[i];
    left[label] += 1.0;
    right[label] -= 1.0;
    nl += 1.0;
    if (value >= scratch[i + 1].first) continue;  // not a boundary
    const double nr = total - nl;
    if (nl < min_branch || nr < min_branch) continue;
    ++candidates;
    const double gain = parent_entropy -
                        (nl / total) * entropy_bits(left, nl) -
                        (nr / total) * entropy_bits(right, nr);
    if (gain > best_gain) {
      best_gain = gain;
      best.threshold = (value + scratch[i + 1].first) / 2.0;
      best.split_info = -(nl / total) * log2_safe(nl / total) -
                        (nr / total) * log2_safe(nr / total);
    }
  }
  if (candidates == 0 || best_gain <= 0.0) return best;

  if (options.c45_numeric_rules)
    best_gain -= std::log2(static_cast<double>(candidates)) / total;
  if (best_gain <= 0.0) return best;

  best.usable = true;
  best.info_gain = best_gain;
  return best;
}

std::unique_ptr<TreeNode> make_leaf(const std::vector<double>& counts) {
  auto leaf = std::make_unique<TreeNode>();
  leaf->counts = counts;
  std::size_t arg = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[arg]) arg = c;  // ties break to the lower index
  leaf->class_index = static_cast<std::uint32_t>(arg);
  return leaf;
}

}  // namespace

GrowthResult grow_tree(const DenseMatrix& x,
                       const std::vector<std::uint32_t>& labels,
                       std::vector<std::uint32_t>& indices,
                       std::size_t n_classes, const GrowthOptions& options,
                       Rng& rng) {
  const std::size_t n = indices.size();
  std::vector<double> counts(n_classes, 0.0);
  for (const auto idx : indices) counts[labels[idx]] += 1.0;

  double max_count = 0.0;
  for (double c : counts) max_count = std::max(max_count, c);
  const double node_errors = static_cast<double>(n) - max_count;

  const auto leaf_result = [&]() {
    GrowthResult res;
    res.node = make_leaf(counts);
    res.estimated_errors =
        node_errors + (options.prune
                           ? pessimistic_added_errors(
                                 static_cast<double>(n), node_errors,
                                 options.confidence)
                           : 0.0);
    return res;
  };

  if (n < 2 * options.min_leaf || node_errors == 0.0) return leaf_result();

  // Candidate features: everything, or a per-node random subspace.
  std::vector<std::uint32_t> features;
  if (options.subspace > 0 &&
      static_cast<std::size_t>(options.subspace) < x.n_cols) {
    features = sample_without_replacement(
        static_cast<std::uint32_t>(x.n_cols), options.subspace, rng);
    std::sort(features.begin(), features.end());
  } else {
    features.resize(x.n_cols);
    for (std::uint32_t a = 0; a < x.n_cols; ++a) features[a] = a;
  }

  std::vector<std::pair<double, std::uint32_t>> scratch;
  std::vector<FeatureSplit> splits(features.size());
  double gain_sum = 0.0;
  std::size_t usable = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    splits[i] = best_numeric_split(x, labels, indices, features[i], n_classes,
                                   options, scratch);
    if (splits[i].usable) {
      gain_sum += splits[i].info_gain;
      ++usable;
    }
  }
  if (usable == 0) return leaf_result();

  // Eligibility filter: attributes with at least average gain compete on the
  // configured criterion.
  const double min_gain = options.c45_numeric_rules
                              ? gain_sum / static_cast<double>(usable) - 1e-3
                              : 0.0;
  BestSplit best;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& s = splits[i];
    if (!s.usable || s.info_gain < min_gain) continue;
    const double score = options.criterion == SplitCriterion::GainRatio
                             ? (s.split_info > 0.0
                                    ? s.info_gain / s.split_info
                                    : 0.0)
                             : s.info_gain;
    const double best_score = options.criterion == SplitCriterion::GainRatio
                                  ? best.gain_ratio
                                  : best.info_gain;
    if (score <= 0.0) continue;
    if (!best.found || score > best_score) {
      best.found = true;
      best.feature = features[i];
      best.threshold = s.threshold;
      best.info_gain = s.info_gain;
      best.gain_ratio =
          s.split_info > 0.0 ? s.info_gain / s.split_info : 0.0;
    }
  }
  if (!best.found) return leaf_result();

  std::vector<std::uint32_t> left_idx, right_idx;
  left_idx.reserve(n);
  right_idx.reserve(n);
  for (const auto idx : indices)
    (x.at(idx, best.feature) <= best.threshold ? left_idx : right_idx)
        .push_back(idx);

  GrowthResult left = grow_tree(x, labels, left_idx, n_classes, options, rng);
  GrowthResult right =
      grow_tree(x, labels, right_idx, n_classes, options, rng);

  GrowthResult res;
  res.estimated_errors = left.estimated_errors + right.estimated_errors;
  if (options.prune) {
    const double as_leaf =
        node_errors + pessimistic_added_errors(static_cast<double>(n),
                                               node_errors,
                                               options.confidence);
    if (as_leaf <= res.estimated_errors + 0.1) return leaf_result();
  }

  res.node = std::make_unique<TreeNode>();
  res.node->feature = best.feature;
  res.node->threshold = best.threshold;
  res.node->left = std::move(left.node);
  res.node->right = std::move(right.node);
  return res;
}

}  // namespace textcat::detail

namespace textcat {

TreeModel train_tree(const LabeledSparseMatrix& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.n_docs == 0) throw DomainError("train_tree: empty training set");

  const DenseMatrix x = densify(data);
  std::vector<std::uint32_t> indices(data.n_docs);
  for (std::uint32_t i = 0; i < data.n_docs; ++i) indices[i] = i;

  detail::GrowthOptions options;
  options.min_leaf = cfg.tree_min_leaf;
  options.prune = cfg.tree_prune;
  options.confidence = cfg.tree_confidence;
  Rng rng(cfg.rng_seed);

  TreeModel model;
  model.n_classes = static_cast<std::uint32_t>(data.n_classes());
  model.n_features = static_cast<std::uint32_t>(data.n_features);
  model.root = detail::grow_tree(x, data.labels, indices, data.n_classes(),
                                 options, rng)
                   .node;
  return model;
}

std::uint32_t tree_classify(const TreeNode& root, const double* x) {
  const TreeNode* node = &root;
  while (!node->is_leaf())
    node = x[node->feature] <= node->threshold ? node->left.get()
                                               : node->right.get();
  return node->class_index;
}

}  // namespace textcat
