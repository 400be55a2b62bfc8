#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cloneval {

// A region of source code reported as one side of a clone pair.
struct CodeFragment {
  std::string source_text;
  std::string file_path;  // empty when the fragment was supplied inline
  int start_line = 1;     // 1-based, inclusive
  int end_line = 1;
  std::string language = "Java";

  // Builds a fragment from inline text; end_line is derived from the text.
  static CodeFragment from_text(std::string text, std::string language = "Java");

  bool operator==(const CodeFragment&) const = default;
};

// Number of lines in `text`. A trailing '\n' terminates the last line rather
// than opening a new one, so "a\nb\n" and "a\nb" both have two lines.
std::size_t count_lines(std::string_view text);

// Splits text into lines following the same convention as count_lines.
// "\r\n" and lone "\r" are accepted as line terminators.
std::vector<std::string> split_lines(std::string_view text);

// Joins lines with '\n', terminating each one, so split_lines(join_lines(x)) == x.
std::string join_lines(const std::vector<std::string>& lines);

}  // namespace cloneval
