#include "textcat/arff.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "textcat/errors.hpp"

namespace textcat {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Reads one token off `pos`: quoted ('...' or "...") or bare (up to
// whitespace / the stop character).
std::string read_token(const std::string& line, std::size_t& pos,
                       char stop = '\0') {
  while (pos < line.size() &&
         std::isspace(static_cast<unsigned char>(line[pos])))
    ++pos;
  if (pos >= line.size()) return {};
  if (line[pos] == '\'' || line[pos] == '"') {
    const char q = line[pos++];
    std::string out;
    while (pos < line.size() && line[pos] != q) out.push_back(line[pos++]);
    if (pos < line.size()) ++pos;  // closing quote
    return out;
  }
  std::string out;
  while (pos < line.size() &&
         !std::isspace(static_cast<unsigned char>(line[pos])) &&
         line[pos] != stop)
    out.push_back(line[pos++]);
  return out;
}

std::vector<std::string> split_csv(const std::string& line,
                                   std::size_t row_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  char quote_char = 0;
  for (char c : line) {
    if (quoted) {
      if (c == quote_char)
        quoted = false;
      else
        cur.push_back(c);
    } else if (c == '\'' || c == '"') {
      quoted = true;
      quote_char = c;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted)
    throw ParseError("arff: unterminated quote in data row " +
                     std::to_string(row_no));
  out.push_back(trim(cur));
  return out;
}

}  // namespace

ArffRelation parse_arff(std::istream& is) {
  ArffRelation rel;
  std::string line;
  std::size_t line_no = 0;
  bool in_data = false;
  bool saw_relation = false;
  std::size_t row_no = 0;

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '%') continue;

    if (!in_data && stripped[0] == '@') {
      std::size_t pos = 0;
      const std::string keyword = lower(read_token(stripped, pos));
      if (keyword == "@relation") {
        rel.name = read_token(stripped, pos);
        saw_relation = true;
      } else if (keyword == "@attribute") {
        ArffAttribute attr;
        attr.name = read_token(stripped, pos, '{');
        while (pos < stripped.size() &&
               std::isspace(static_cast<unsigned char>(stripped[pos])))
          ++pos;
        if (pos < stripped.size() && stripped[pos] == '{') {
          attr.kind = ArffKind::Nominal;
          const auto close = stripped.find('}', pos);
          if (close == std::string::npos)
            throw ParseError("arff: unterminated nominal list on line " +
                             std::to_string(line_no));
          for (auto& v :
               split_csv(stripped.substr(pos + 1, close - pos - 1), line_no))
            attr.values.push_back(trim(v));
        } else {
          const std::string kind = lower(read_token(stripped, pos));
          if (kind == "numeric" || kind == "real" || kind == "integer") {
            attr.kind = ArffKind::Numeric;
          } else if (kind.empty()) {
            throw ParseError("arff: missing attribute type on line " +
                             std::to_string(line_no));
          } else {
            throw ParseError("arff: unsupported attribute type '" + kind +
                             "' on line " + std::to_string(line_no));
          }
        }
        rel.attributes.push_back(std::move(attr));
      } else if (keyword == "@data") {
        in_data = true;
      } else {
        throw ParseError("arff: unknown keyword '" + keyword + "' on line " +
                         std::to_string(line_no));
      }
      continue;
    }

    if (!in_data)
      throw ParseError("arff: data before @data on line " +
                       std::to_string(line_no));

    ++row_no;
    auto values = split_csv(stripped, row_no);
    if (values.size() != rel.attributes.size())
      throw ParseError("arff: row " + std::to_string(row_no) + " has " +
                       std::to_string(values.size()) + " values, expected " +
                       std::to_string(rel.attributes.size()));
    for (std::size_t a = 0; a < values.size(); ++a) {
      const auto& attr = rel.attributes[a];
      if (attr.kind == ArffKind::Nominal && values[a] != "?" &&
          std::find(attr.values.begin(), attr.values.end(), values[a]) ==
              attr.values.end())
        throw ParseError("arff: row " + std::to_string(row_no) + ": value '" +
                         values[a] + "' not in nominal domain of attribute '" +
                         attr.name + "'");
    }
    rel.rows.push_back(std::move(values));
  }

  if (!saw_relation) throw ParseError("arff: missing @relation");
  if (!in_data) throw ParseError("arff: missing @data section");
  return rel;
}

}  // namespace textcat
