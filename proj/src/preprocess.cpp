#include "textcat/preprocess.hpp"

#include <cctype>
#include <fstream>

#include "textcat/errors.hpp"

namespace textcat {

extern const char* const kSmartStopWords[];
extern const std::size_t kSmartStopWordCount;

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (c < 0x80 && std::isalpha(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

StopList::StopList(std::vector<std::string> words) {
  for (auto& w : words) words_.insert(std::move(w));
}

const StopList& StopList::smart() {
  static const StopList list = [] {
    std::vector<std::string> words(kSmartStopWords,
                                   kSmartStopWords + kSmartStopWordCount);
    return StopList(std::move(words));
  }();
  return list;
}

StopList StopList::from_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open stop list: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string word;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)))
        word.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(c))));
    if (!word.empty()) words.push_back(std::move(word));
  }
  return StopList(std::move(words));
}

std::vector<std::string> remove_stop_words(const std::vector<std::string>& tokens,
                                           const StopList& stops) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stops.contains(t)) out.push_back(t);
  return out;
}

TokenStream preprocess_document(const RawDocument& doc,
                                const StopList& stops) {
  TokenStream stream;
  stream.doc_id = doc.id;
  for (auto& token : remove_stop_words(tokenize(doc.text), stops))
    stream.tokens.push_back(porter_stem(token));
  return stream;
}

}  // namespace textcat
