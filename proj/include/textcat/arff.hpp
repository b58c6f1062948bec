#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace textcat {

enum class ArffKind { Numeric, Nominal };

struct ArffAttribute {
  std::string name;
  ArffKind kind = ArffKind::Numeric;
  std::vector<std::string> values;  // nominal only, declaration order
};

struct ArffRelation {
  std::string name;
  std::vector<ArffAttribute> attributes;
  std::vector<std::vector<std::string>> rows;  // tokenized @data lines
};

// ARFF text parser: '%' comments, case-insensitive @relation/@attribute/@data,
// quoted names, comma-separated data rows. Nominal values are checked against
// the declared value list. Throws ParseError with the offending line/row
// number; missing @data is a ParseError as well.
ArffRelation parse_arff(std::istream& is);

}  // namespace textcat
