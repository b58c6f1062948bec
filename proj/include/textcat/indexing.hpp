#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "textcat/matrix.hpp"
#include "textcat/preprocess.hpp"

namespace textcat {

enum class WeightingScheme { Boolean, TermFrequency, TfIdf };
enum class LogBase { Natural, Base10, Base2 };

WeightingScheme parse_weighting(const std::string& name);  // bool|tf|tfidf
std::string to_string(WeightingScheme s);

// Ordered term list with document frequencies. Terms are unique and sorted
// lexicographically; index_of is the exact inverse of the list.
struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<std::uint32_t> df;  // DF(t): documents containing t at least once
  std::unordered_map<std::string, std::uint32_t> index_of;

  std::size_t size() const { return terms.size(); }

  // "index<TAB>term<TAB>df" lines.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);
};

// Terms with document frequency >= min_df (min_df >= 1). Throws DomainError
// if no term survives (empty corpus / degenerate streams).
Vocabulary build_vocabulary(const std::vector<TokenStream>& streams,
                            std::uint32_t min_df = 1);

// Raw occurrence counts of in-vocabulary terms; unknown tokens are ignored.
SparseRow term_frequency(const TokenStream& stream, const Vocabulary& vocab);

// log(n_docs / df_t). df_t = 0 is a DomainError.
double idf(std::size_t n_docs, std::size_t df_t,
           LogBase base = LogBase::Natural);

// W[d][t] per scheme: Boolean -> 1 if TF>0, TermFrequency -> TF,
// TfIdf -> TF * IDF. Exact zeros (shared-term TfIdf columns) are dropped.
LabeledSparseMatrix weight_matrix(const std::vector<TokenStream>& streams,
                                  const std::vector<std::uint32_t>& labels,
                                  const std::vector<std::string>& class_names,
                                  const Vocabulary& vocab,
                                  WeightingScheme scheme,
                                  LogBase base = LogBase::Natural);

}  // namespace textcat
