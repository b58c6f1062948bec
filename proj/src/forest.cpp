#include <algorithm>
#include <cmath>

#include "textcat/errors.hpp"
#include "tree_growth.hpp"

namespace textcat {

std::vector<std::uint32_t> bootstrap_indices(std::uint64_t seed,
                                             std::uint32_t n) {
  Rng rng(seed);
  std::vector<std::uint32_t> out(n);
  for (std::uint32_t i = 0; i < n; ++i)
    out[i] = static_cast<std::uint32_t>(rng.below(n));
  return out;
}

namespace {

std::unique_ptr<TreeNode> grow_forest_tree(const DenseMatrix& x,
                                           const LabeledSparseMatrix& data,
                                           const TrainConfig& cfg,
                                           std::uint32_t subspace,
                                           std::uint64_t tree_seed) {
  std::vector<std::uint32_t> sample;
  if (cfg.forest_bootstrap) {
    sample = bootstrap_indices(tree_seed, static_cast<std::uint32_t>(data.n_docs));
    std::sort(sample.begin(), sample.end());
  } else {
    sample.resize(data.n_docs);
    for (std::uint32_t i = 0; i < data.n_docs; ++i) sample[i] = i;
  }

  detail::GrowthOptions options;
  options.min_leaf = cfg.tree_min_leaf;
  options.subspace = subspace;
  options.prune = false;
  Rng rng(Rng::derive(tree_seed, 0x7472656573ULL));
  return detail::grow_tree(x, data.labels, sample, data.n_classes(), options,
                           rng)
      .node;
}

}  // namespace

ForestModel train_forest(const LabeledSparseMatrix& data,
                         const TrainConfig& cfg) {
  cfg.validate();
  if (data.n_docs == 0) throw DomainError("train_forest: empty training set");

  std::uint32_t subspace = cfg.forest_subspace;
  if (subspace == 0)
    subspace = static_cast<std::uint32_t>(
                   std::floor(std::log2(static_cast<double>(
                       std::max<std::size_t>(data.n_features, 1))))) +
               1;
  subspace = std::min<std::uint32_t>(subspace,
                                     static_cast<std::uint32_t>(data.n_features));

  ForestModel model;
  model.n_classes = static_cast<std::uint32_t>(data.n_classes());
  model.n_features = static_cast<std::uint32_t>(data.n_features);
  model.trees.resize(cfg.forest_trees);
  model.tree_seeds.resize(cfg.forest_trees);
  for (std::uint32_t t = 0; t < cfg.forest_trees; ++t)
    model.tree_seeds[t] = Rng::derive(cfg.rng_seed, t);

  const DenseMatrix x = densify(data);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(cfg.forest_trees);
       ++t)
    model.trees[static_cast<std::size_t>(t)] = grow_forest_tree(
        x, data, cfg, subspace,
        model.tree_seeds[static_cast<std::size_t>(t)]);
  return model;
}

namespace ref {

ForestModel train_forest(const LabeledSparseMatrix& data,
                         const TrainConfig& cfg) {
  cfg.validate();
  if (data.n_docs == 0) throw DomainError("train_forest: empty training set");

  std::uint32_t subspace = cfg.forest_subspace;
  if (subspace == 0)
    subspace = static_cast<std::uint32_t>(
                   std::floor(std::log2(static_cast<double>(
                       std::max<std::size_t>(data.n_features, 1))))) +
               1;
  subspace = std::min<std::uint32_t>(subspace,
                                     static_cast<std::uint32_t>(data.n_features));

  ForestModel model;
  model.n_classes = static_cast<std::uint32_t>(data.n_classes());
  model.n_features = static_cast<std::uint32_t>(data.n_features);
  model.trees.resize(cfg.forest_trees);
  model.tree_seeds.resize(cfg.forest_trees);
  for (std::uint32_t t = 0; t < cfg.forest_trees; ++t)
    model.tree_seeds[t] = Rng::derive(cfg.rng_seed, t);

  const DenseMatrix x = densify(data);
  for (std::uint32_t t = 0; t < cfg.forest_trees; ++t)
    model.trees[t] = grow_forest_tree(x, data, cfg, subspace,
                                      model.tree_seeds[t]);
  return model;
}

}  // namespace ref

std::uint32_t forest_classify(const ForestModel& model, const double* x) {
  if (model.trees.empty())
    throw DomainError("forest_classify: untrained model");
  std::vector<std::uint32_t> votes(model.n_classes, 0);
  for (const auto& tree : model.trees) ++votes[tree_classify(*tree, x)];
  std::uint32_t winner = 0;
  for (std::uint32_t c = 1; c < model.n_classes; ++c)
    if (votes[c] > votes[winner]) winner = c;  // ties -> lower class index
  return winner;
}

}  // namespace textcat
