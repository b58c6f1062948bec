#include "textcat/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "textcat/errors.hpp"

namespace textcat {

WeightingScheme parse_weighting(const std::string& name) {
  if (name == "bool" || name == "boolean") return WeightingScheme::Boolean;
  if (name == "tf") return WeightingScheme::TermFrequency;
  if (name == "tfidf") return WeightingScheme::TfIdf;
  throw DomainError("unknown weighting scheme: " + name);
}

std::string to_string(WeightingScheme s) {
  switch (s) {
    case WeightingScheme::Boolean: return "bool";
    case WeightingScheme::TermFrequency: return "tf";
    case WeightingScheme::TfIdf: return "tfidf";
  }
  return "?";
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  for (std::size_t i = 0; i < terms.size(); ++i)
    os << i << '\t' << terms[i] << '\t' << df[i] << '\n';
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  Vocabulary v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw ParseError("vocabulary: expected index<TAB>term<TAB>df on line " +
                       std::to_string(line_no));
    v.terms.push_back(line.substr(t1 + 1, t2 - t1 - 1));
    v.df.push_back(static_cast<std::uint32_t>(
        std::stoul(line.substr(t2 + 1))));
    v.index_of[v.terms.back()] =
        static_cast<std::uint32_t>(v.terms.size() - 1);
  }
  return v;
}

Vocabulary build_vocabulary(const std::vector<TokenStream>& streams,
                            std::uint32_t min_df) {
  if (min_df < 1) throw DomainError("build_vocabulary: min_df must be >= 1");

  // Two-phase reduce: per-document presence sets merged into global counts.
  std::map<std::string, std::uint32_t> df_count;
  for (const auto& stream : streams) {
    std::vector<std::string> uniq(stream.tokens);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (auto& t : uniq) ++df_count[t];
  }

  Vocabulary v;
  for (auto& [term, df] : df_count) {
    if (df < min_df) continue;
    v.index_of[term] = static_cast<std::uint32_t>(v.terms.size());
    v.terms.push_back(term);  // std::map iteration is already lexicographic
    v.df.push_back(df);
  }
  if (v.terms.empty())
    throw DomainError("build_vocabulary: no term meets min_df " +
                      std::to_string(min_df) + " (empty corpus?)");
  return v;
}

SparseRow term_frequency(const TokenStream& stream, const Vocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const auto& t : stream.tokens) {
    const auto it = vocab.index_of.find(t);
    if (it != vocab.index_of.end()) counts[it->second] += 1.0;
  }
  SparseRow row;
  row.reserve(counts.size());
  for (auto& [idx, c] : counts) row.push_back({idx, c});
  return row;
}

double idf(std::size_t n_docs, std::size_t df_t, LogBase base) {
  if (df_t == 0)
    throw DomainError("idf: df = 0 (term never observed)");
  if (df_t > n_docs)
    throw DomainError("idf: df exceeds document count");
  const double ratio = static_cast<double>(n_docs) / static_cast<double>(df_t);
  switch (base) {
    case LogBase::Natural: return std::log(ratio);
    case LogBase::Base10: return std::log10(ratio);
    case LogBase::Base2: return std::log2(ratio);
  }
  return std::log(ratio);
}

LabeledSparseMatrix weight_matrix(const std::vector<TokenStream>& streams,
                                  const std::vector<std::uint32_t>& labels,
                                  const std::vector<std::string>& class_names,
                                  const Vocabulary& vocab,
                                  WeightingScheme scheme, LogBase base) {
  if (labels.size() != streams.size())
    throw ArityError("weight_matrix: labels/streams size mismatch");

  LabeledSparseMatrix m;
  m.n_docs = streams.size();
  m.n_features = vocab.size();
  m.labels = labels;
  m.class_names = class_names;
  m.rows.resize(m.n_docs);

  std::vector<double> idf_value(vocab.size(), 0.0);
  if (scheme == WeightingScheme::TfIdf)
    for (std::size_t t = 0; t < vocab.size(); ++t)
      idf_value[t] = idf(m.n_docs, vocab.df[t], base);

  for (std::size_t d = 0; d < m.n_docs; ++d) {
    SparseRow tf = term_frequency(streams[d], vocab);
    SparseRow& out = m.rows[d];
    for (const auto& [idx, count] : tf) {
      double w = 0.0;
      switch (scheme) {
        case WeightingScheme::Boolean: w = 1.0; break;
        case WeightingScheme::TermFrequency: w = count; break;
        case WeightingScheme::TfIdf: w = count * idf_value[idx]; break;
      }
      if (w != 0.0) out.push_back({idx, w});
    }
  }
  m.validate();
  return m;
}

}  // namespace textcat
