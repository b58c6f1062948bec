#include <algorithm>
#include <cmath>

#include "textcat/classifiers.hpp"
#include "textcat/errors.hpp"

namespace textcat {

KnnModel train_knn(const LabeledSparseMatrix& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.n_docs == 0) throw DomainError("train_knn: empty training set");
  if (cfg.knn_k > data.n_docs)
    throw DomainError("train_knn: k exceeds the number of training rows");
  KnnModel model;
  model.train = densify(data);
  model.labels = data.labels;
  model.k = cfg.knn_k;
  model.n_classes = static_cast<std::uint32_t>(data.n_classes());
  return model;
}

std::uint32_t knn_classify(const KnnModel& model, const double* x) {
  const std::size_t n = model.train.n_rows;
  if (n == 0) throw DomainError("knn_classify: untrained model");
  const std::size_t f = model.train.n_cols;
  const std::size_t k = std::min<std::size_t>(model.k, n);

  std::vector<std::pair<double, std::uint32_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = model.train.row(i);
    double d2 = 0.0;
    for (std::size_t a = 0; a < f; ++a) {
      const double diff = row[a] - x[a];
      d2 += diff * diff;
    }
    dist[i] = {d2, static_cast<std::uint32_t>(i)};
  }
  std::sort(dist.begin(), dist.end());

  // The neighborhood is the k nearest plus anything tied with the k-th
  // distance, so boundary ties resolve by the documented vote rules
  // (majority, then smaller summed distance, then lower class index)
  // instead of by storage order.
  std::size_t m = k;
  while (m < n && dist[m].first == dist[k - 1].first) ++m;

  std::vector<std::uint32_t> votes(model.n_classes, 0);
  std::vector<double> summed(model.n_classes, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto label = model.labels[dist[i].second];
    ++votes[label];
    summed[label] += std::sqrt(dist[i].first);
  }
  std::uint32_t winner = 0;
  bool have = false;
  for (std::uint32_t c = 0; c < model.n_classes; ++c) {
    if (votes[c] == 0) continue;
    if (!have || votes[c] > votes[winner] ||
        (votes[c] == votes[winner] && summed[c] < summed[winner])) {
      winner = c;
      have = true;
    }
  }
  return winner;
}

}  // namespace textcat
