#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "textcat/evaluation.hpp"
#include "textcat/indexing.hpp"

namespace textcat {

enum class DatasetKind { Cnae9, DbWorld, TextDir, SparseFile };

DatasetKind parse_dataset_kind(const std::string& name);
std::string to_string(DatasetKind k);

struct DatasetRef {
  DatasetKind kind = DatasetKind::SparseFile;
  std::filesystem::path path;
  std::string name;  // defaults to the file/directory stem
};

// "kind:path", e.g. "cnae9:data/cnae-9/CNAE-9.data".
DatasetRef parse_dataset_ref(const std::string& text);

struct ExperimentSpec {
  DatasetRef dataset;

  // Raw-text corpora only; vectorized datasets bypass preprocess/indexing.
  WeightingScheme weighting = WeightingScheme::TfIdf;
  LogBase idf_base = LogBase::Natural;
  std::uint32_t min_df = 1;

  bool use_pca = false;
  double variance = 0.95;
  bool pca_standardize = true;
  std::uint32_t pca_k = 0;  // explicit component override, 0 = threshold rule
  bool pca_whole_dataset = false;

  TrainConfig train;

  std::uint32_t folds = 10;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";

  // Distinct per spec inside a matrix; defaults to
  // "<dataset>_<algorithm>_<pca|raw>".
  std::string id;

  std::string default_id() const;
  // Resolved config as ordered key=value pairs; parsing them back yields an
  // identical spec (round-trip guarantee for the report's config echo).
  std::vector<std::pair<std::string, std::string>> to_config() const;
  static ExperimentSpec from_config(
      const std::map<std::string, std::string>& kv);
};

// Loads the dataset, runs preprocess+indexing for raw text, cross-validates,
// and writes <out>/<id>/report.txt and report.tsv atomically.
EvalReport run(const ExperimentSpec& spec,
               const WarningSink& warn = stderr_warnings());

struct RunMatrix {
  std::vector<ExperimentSpec> specs;
};

// The paper-style study: {datasets} x {classifiers} x {pca on, off}.
RunMatrix make_run_matrix(const std::vector<DatasetRef>& datasets,
                          const std::vector<Algorithm>& algorithms,
                          const ExperimentSpec& base);

struct MatrixResult {
  std::vector<std::pair<std::string, EvalReport>> reports;  // spec id -> report
  std::vector<std::pair<std::string, std::string>> failures;  // spec id -> error
};

// Runs every spec (failures are recorded, the matrix continues), then writes
// per-classifier comparison tables and plotdata.tsv under base.out_dir.
MatrixResult run_matrix(const RunMatrix& matrix, unsigned workers = 1,
                        const WarningSink& warn = stderr_warnings());

struct DatasetSummary {
  std::string name;
  std::size_t n_docs = 0;
  std::size_t n_features = 0;
  std::size_t n_classes = 0;
  std::vector<std::pair<std::string, std::size_t>> class_distribution;
  std::size_t nonzeros = 0;
  double sparsity_pct = 0.0;  // share of zero cells
};

DatasetSummary describe_dataset(const DatasetRef& ref,
                                const WarningSink& warn = stderr_warnings());
std::string render_summary(const DatasetSummary& s);

// Trains the configured pipeline on the full dataset and dumps the model
// (plus the PCA model when enabled) under out_dir/<id>/. Returns the paths.
std::vector<std::filesystem::path> dump_model(const ExperimentSpec& spec);

// Loads any dataset kind into the uniform representation.
LabeledSparseMatrix load_dataset(const DatasetRef& ref,
                                 const ExperimentSpec& spec,
                                 const WarningSink& warn,
                                 bool* used_text_pipeline = nullptr);

}  // namespace textcat
