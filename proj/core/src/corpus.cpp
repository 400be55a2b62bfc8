#include "cloneval/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cloneval/error.hpp"
#include "cloneval/lexer.hpp"
#include "java_syntax.hpp"

namespace cloneval {

namespace fs = std::filesystem;

std::vector<CodeFragment> extract_methods(std::string_view source, const std::string& file_path, int min_lines) {
  const std::vector<Token> code = detail::code_only(tokenize_java(source).tokens);
  const std::vector<std::string> lines = split_lines(source);
  std::vector<CodeFragment> out;

  for (std::size_t i = 0; i < code.size(); ++i) {
    if (!code[i].is("{") || !detail::opens_method_body(code, i)) continue;
    std::size_t close = i;
    int depth = 0;
    for (std::size_t j = i; j < code.size(); ++j) {
      if (code[j].is("{")) ++depth;
      if (code[j].is("}") && --depth == 0) {
        close = j;
        break;
      }
    }
    if (close == i) break;  // unbalanced tail

    // The header starts after the previous member boundary.
    std::size_t head = i;
    while (head > 0 && !detail::one_of(code[head - 1], {";", "}", "{"})) --head;
    const int first = code[head].line;
    const int last = code[close].line;
    if (last - first + 1 >= min_lines && last <= static_cast<int>(lines.size())) {
      std::vector<std::string> body(lines.begin() + first - 1, lines.begin() + last);
      CodeFragment f;
      f.source_text = join_lines(body);
      f.file_path = file_path;
      f.start_line = first;
      f.end_line = last;
      out.push_back(std::move(f));
    }
    i = close;
  }
  return out;
}

std::vector<CodeFragment> load_corpus(const fs::path& dir, int min_lines) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "corpus directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CodeFragment> corpus;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    auto methods = extract_methods(ss.str(), path.lexically_relative(dir).generic_string(), min_lines);
    corpus.insert(corpus.end(), std::make_move_iterator(methods.begin()), std::make_move_iterator(methods.end()));
  }
  return corpus;
}

}  // namespace cloneval
