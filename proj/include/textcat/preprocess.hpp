#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "textcat/corpus.hpp"

namespace textcat {

struct TokenStream {
  std::string doc_id;
  std::vector<std::string> tokens;  // lowercase, letters only
};

// Maximal runs of ASCII letters, lowercased. Digits, punctuation and any
// non-ASCII byte act as separators.
std::vector<std::string> tokenize(const std::string& text);

class StopList {
 public:
  StopList() = default;
  explicit StopList(std::vector<std::string> words);

  // The embedded SMART English list (571 entries).
  static const StopList& smart();
  // One word per line, '#' comments, UTF-8.
  static StopList from_file(const std::filesystem::path& path);

  bool contains(const std::string& lowercase_word) const {
    return words_.count(lowercase_word) != 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

std::vector<std::string> remove_stop_words(const std::vector<std::string>& tokens,
                                           const StopList& stops);

// Porter stemming algorithm (1980 paper, steps 1a-5b); exact on the
// published voc.txt -> output.txt reference pairs.
std::string porter_stem(const std::string& lowercase_word);

// tokenize -> remove stop words -> stem, in that order.
TokenStream preprocess_document(const RawDocument& doc, const StopList& stops);

}  // namespace textcat
