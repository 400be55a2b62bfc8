#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/fragment.hpp"

namespace cloneval {

// Method and constructor bodies of a Java compilation unit, outermost only.
// Each fragment spans whole source lines from the declaration header to the
// closing brace. Methods shorter than `min_lines` are skipped.
std::vector<CodeFragment> extract_methods(std::string_view source, const std::string& file_path,
                                          int min_lines = 4);

// extract_methods over every *.java file below `dir`, in path order. Throws
// Error(kIo) when the directory does not exist.
std::vector<CodeFragment> load_corpus(const std::filesystem::path& dir, int min_lines = 4);

}  // namespace cloneval
