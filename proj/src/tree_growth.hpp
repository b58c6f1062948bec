#pragma once

// Internal C4.5-style growth machinery shared by the single-tree and forest
// trainers. Not part of the public API.

#include <cstdint>
#include <memory>
#include <vector>

#include "textcat/classifiers.hpp"
#include "textcat/matrix.hpp"
#include "textcat/rng.hpp"

namespace textcat::detail {

struct GrowthOptions {
  std::uint32_t min_leaf = 2;
  // Numeric-split admissibility and scoring as in the reference tool's C4.5:
  // dynamic minimum branch size 0.1*n/classes clamped to [min_leaf, 25],
  // an MDL charge of log2(candidates)/n against the gain, and the
  // average-gain eligibility filter before the gain-ratio argmax.
  bool c45_numeric_rules = true;
  SplitCriterion criterion = SplitCriterion::GainRatio;
  std::uint32_t subspace = 0;  // features sampled per node; 0 = all
  bool prune = false;          // pessimistic-error pruning
  double confidence = 0.25;
};

struct GrowthResult {
  std::unique_ptr<TreeNode> node;
  double estimated_errors = 0.0;
};

// Grows (and optionally prunes) a tree over data.rows[indices]. `rng` drives
// per-node subspace sampling and is consumed in depth-first order, so equal
// seeds give bit-identical trees.
GrowthResult grow_tree(const DenseMatrix& x,
                       const std::vector<std::uint32_t>& labels,
                       std::vector<std::uint32_t>& indices,
                       std::size_t n_classes, const GrowthOptions& options,
                       Rng& rng);

// Upper confidence bound on the error count of a leaf with n instances and
// e training errors (the pessimistic-error estimate).
double pessimistic_added_errors(double n, double e, double confidence);

double inverse_normal(double p);  // quantile of the standard normal

}  // namespace textcat::detail
