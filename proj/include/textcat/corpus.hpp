#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "textcat/matrix.hpp"

namespace textcat {

struct RawDocument {
  std::string id;     // unique within a corpus
  std::string text;   // full document text
  std::string label;  // class name
};

// Receives human-readable warnings (degenerate class sets, empty folders...).
// The default sink writes to stderr.
using WarningSink = std::function<void(const std::string&)>;
const WarningSink& stderr_warnings();

// UCI CNAE-9: one document per line, comma-separated integers, class label
// (1-9) first, followed by 856 term frequencies. Zero frequencies are left
// out of the sparse rows.
LabeledSparseMatrix load_cnae9(const std::filesystem::path& path);

// DBWorld ARFF: binary term attributes and a final class attribute.
// Presence weights are 1; feature count is the attribute count minus one.
LabeledSparseMatrix load_dbworld(const std::filesystem::path& path,
                                 const WarningSink& warn = stderr_warnings());

// Directory-per-class plain text corpus. One file = one document, label =
// subdirectory name, deterministic lexicographic order.
std::vector<RawDocument> load_text_corpus(
    const std::filesystem::path& root,
    const WarningSink& warn = stderr_warnings());

}  // namespace textcat
