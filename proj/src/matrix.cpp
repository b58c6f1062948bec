#include "textcat/matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "textcat/errors.hpp"

namespace textcat {

void LabeledSparseMatrix::validate() const {
  if (rows.size() != n_docs || labels.size() != n_docs)
    throw ArityError("matrix: rows/labels size does not match n_docs");
  for (std::size_t d = 0; d < n_docs; ++d) {
    if (labels[d] >= class_names.size())
      throw DomainError("matrix: label index out of range in document " +
                        std::to_string(d));
    std::int64_t prev = -1;
    for (const auto& fw : rows[d]) {
      if (fw.index >= n_features)
        throw DomainError("matrix: feature index out of range in document " +
                          std::to_string(d));
      if (static_cast<std::int64_t>(fw.index) <= prev)
        throw DomainError("matrix: feature indices not strictly increasing "
                          "in document " + std::to_string(d));
      if (!std::isfinite(fw.value))
        throw DomainError("matrix: non-finite weight in document " +
                          std::to_string(d));
      prev = fw.index;
    }
  }
}

DenseMatrix densify(const LabeledSparseMatrix& m) {
  DenseMatrix out(m.n_docs, m.n_features);
  for (std::size_t d = 0; d < m.n_docs; ++d)
    scatter_row(m.rows[d], out.row(d), m.n_features);
  return out;
}

void scatter_row(const SparseRow& row, double* out, std::size_t n_features) {
  std::fill(out, out + n_features, 0.0);
  for (const auto& fw : row) out[fw.index] = fw.value;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void save_sparse(const LabeledSparseMatrix& m, std::ostream& os) {
  os << "# classes:";
  for (const auto& name : m.class_names) os << ' ' << name;
  os << '\n';
  os << "# features: " << m.n_features << '\n';
  for (std::size_t d = 0; d < m.n_docs; ++d) {
    os << m.labels[d];
    for (const auto& fw : m.rows[d])
      os << ' ' << fw.index << ':' << format_double(fw.value);
    os << '\n';
  }
}

void save_sparse(const LabeledSparseMatrix& m,
                 const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  save_sparse(m, os);
  if (!os) throw IoError("write failed: " + path.string());
}

namespace {

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError("sparse format: bad number '" + s + "' on line " +
                     std::to_string(line_no));
  return v;
}

}  // namespace

LabeledSparseMatrix load_sparse(std::istream& is) {
  LabeledSparseMatrix m;
  std::string line;
  std::size_t line_no = 0;
  std::uint32_t max_index = 0;
  bool have_feature_count = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tag;
      hs >> tag;
      if (tag == "classes:") {
        std::string name;
        while (hs >> name) m.class_names.push_back(name);
      } else if (tag == "features:") {
        hs >> m.n_features;
        have_feature_count = true;
      }
      continue;
    }
    std::istringstream ls(line);
    std::uint32_t label = 0;
    if (!(ls >> label))
      throw ParseError("sparse format: missing label on line " +
                       std::to_string(line_no));
    SparseRow row;
    std::string tok;
    std::int64_t prev = -1;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError("sparse format: expected idx:weight on line " +
                         std::to_string(line_no));
      std::uint32_t idx = 0;
      const std::string idx_s = tok.substr(0, colon);
      auto res = std::from_chars(idx_s.data(), idx_s.data() + idx_s.size(), idx);
      if (res.ec != std::errc{})
        throw ParseError("sparse format: bad index on line " +
                         std::to_string(line_no));
      if (static_cast<std::int64_t>(idx) <= prev)
        throw ParseError("sparse format: indices not ascending on line " +
                         std::to_string(line_no));
      prev = idx;
      row.push_back({idx, parse_double(tok.substr(colon + 1), line_no)});
      max_index = std::max(max_index, idx);
    }
    m.rows.push_back(std::move(row));
    m.labels.push_back(label);
  }
  m.n_docs = m.rows.size();
  if (!have_feature_count)
    m.n_features = m.rows.empty() ? 0 : static_cast<std::size_t>(max_index) + 1;
  if (m.class_names.empty()) {
    std::uint32_t max_label = 0;
    for (auto l : m.labels) max_label = std::max(max_label, l);
    for (std::uint32_t c = 0; !m.labels.empty() && c <= max_label; ++c)
      m.class_names.push_back(std::to_string(c));
  }
  m.validate();
  return m;
}

LabeledSparseMatrix load_sparse(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path.string());
  return load_sparse(is);
}

}  // namespace textcat
