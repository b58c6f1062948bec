#include "textcat/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "textcat/arff.hpp"
#include "textcat/errors.hpp"

namespace textcat {

const WarningSink& stderr_warnings() {
  static const WarningSink sink = [](const std::string& msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return sink;
}

LabeledSparseMatrix load_cnae9(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());

  constexpr std::size_t kFeatures = 856;
  constexpr std::uint32_t kClasses = 9;

  LabeledSparseMatrix m;
  m.n_features = kFeatures;
  for (std::uint32_t c = 1; c <= kClasses; ++c)
    m.class_names.push_back(std::to_string(c));

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    SparseRow row;
    std::uint32_t label = 0;
    std::size_t field = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      std::int64_t v = 0;
      auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc{} || res.ptr != comma || p == comma)
        throw ParseError("cnae-9: non-integer field " +
                         std::to_string(field + 1) + " on line " +
                         std::to_string(line_no));
      if (field == 0) {
        if (v < 1 || v > kClasses)
          throw DomainError("cnae-9: label " + std::to_string(v) +
                            " outside 1-9 on line " + std::to_string(line_no));
        label = static_cast<std::uint32_t>(v - 1);
      } else if (v != 0) {
        row.push_back({static_cast<std::uint32_t>(field - 1),
                       static_cast<double>(v)});
      }
      ++field;
      if (comma == end) break;
      p = comma + 1;
    }
    if (field != kFeatures + 1)
      throw ParseError("cnae-9: expected " + std::to_string(kFeatures + 1) +
                       " fields, got " + std::to_string(field) + " on line " +
                       std::to_string(line_no));
    m.rows.push_back(std::move(row));
    m.labels.push_back(label);
  }
  m.n_docs = m.rows.size();
  m.validate();
  return m;
}

LabeledSparseMatrix load_dbworld(const std::filesystem::path& path,
                                 const WarningSink& warn) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  ArffRelation rel = parse_arff(is);

  if (rel.attributes.size() < 2)
    throw DomainError("dbworld: need at least one term attribute plus the "
                      "class attribute");
  const std::size_t n_terms = rel.attributes.size() - 1;
  const ArffAttribute& class_attr = rel.attributes.back();
  if (class_attr.kind != ArffKind::Nominal)
    throw DomainError("dbworld: final class attribute must be nominal");

  LabeledSparseMatrix m;
  m.n_features = n_terms;
  m.class_names = class_attr.values;

  std::vector<bool> seen_class(m.class_names.size(), false);
  for (std::size_t r = 0; r < rel.rows.size(); ++r) {
    const auto& row = rel.rows[r];
    SparseRow sparse;
    for (std::size_t a = 0; a < n_terms; ++a) {
      const std::string& v = row[a];
      if (v == "0") continue;
      if (v != "1")
        throw DomainError("dbworld: non-binary term value '" + v +
                          "' in row " + std::to_string(r + 1));
      sparse.push_back({static_cast<std::uint32_t>(a), 1.0});
    }
    const auto it = std::find(m.class_names.begin(), m.class_names.end(),
                              row.back());
    const auto label =
        static_cast<std::uint32_t>(it - m.class_names.begin());
    seen_class[label] = true;
    m.rows.push_back(std::move(sparse));
    m.labels.push_back(label);
  }
  m.n_docs = m.rows.size();

  const auto observed =
      std::count(seen_class.begin(), seen_class.end(), true);
  if (m.n_docs > 0 && observed < 2)
    warn("dbworld: all documents in " + path.filename().string() +
         " carry a single class");
  m.validate();
  return m;
}

std::vector<RawDocument> load_text_corpus(const std::filesystem::path& root,
                                          const WarningSink& warn) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root))
    throw IoError("corpus root is not a directory: " + root.string());

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());
  if (class_dirs.empty())
    throw DomainError("empty corpus: no class directories under " +
                      root.string());

  std::vector<RawDocument> docs;
  for (const auto& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      warn("corpus: class folder '" + dir.filename().string() + "' is empty");
    for (const auto& file : files) {
      std::ifstream is(file, std::ios::binary);
      if (!is) throw IoError("cannot read document: " + file.string());
      std::ostringstream text;
      text << is.rdbuf();
      if (is.bad()) throw IoError("read failed: " + file.string());
      docs.push_back({fs::relative(file, root).generic_string(), text.str(),
                      dir.filename().string()});
    }
  }
  return docs;
}

}  // namespace textcat
