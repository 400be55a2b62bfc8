#include "cloneval/fragment.hpp"

#include <utility>

namespace cloneval {

CodeFragment CodeFragment::from_text(std::string text, std::string language) {
  CodeFragment f;
  f.source_text = std::move(text);
  f.language = std::move(language);
  f.start_line = 1;
  const std::size_t n = count_lines(f.source_text);
  f.end_line = n == 0 ? 1 : static_cast<int>(n);
  return f;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  bool open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      lines.push_back(std::move(current));
      current.clear();
      open = false;
    } else {
      current.push_back(c);
      open = true;
    }
  }
  if (open) lines.push_back(std::move(current));
  return lines;
}

std::size_t count_lines(std::string_view text) { return split_lines(text).size(); }

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace cloneval
