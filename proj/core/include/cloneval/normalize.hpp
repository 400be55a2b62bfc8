#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cloneval/fragment.hpp"
#include "cloneval/lexer.hpp"

namespace cloneval {

// Cumulative normalization levels used to compute Type-1/2/3 similarity.
//
//   Type1: comments removed, one statement per line, block "{" kept on the
//          header line, block "}" on its own line, canonical intra-line
//          spacing, one tab of indentation per block depth. Line breaks
//          inside a statement and blank source lines are kept.
//   Type2: Type1 with every identifier -> X, string literal -> "string",
//          char literal -> 'c', numeric literal -> 0. Keywords (including
//          null/true/false and primitive types) are kept.
//   Type3: Type2 without blank lines, brace/semicolon-only lines and
//          import/package lines; indentation dropped.
enum class NormalizationLevel { kType1 = 1, kType2 = 2, kType3 = 3 };

std::string_view to_string(NormalizationLevel level);

struct NormalizedFragment {
  std::vector<std::string> lines;
  // Code tokens only (no comments or layout); Token::line is the 1-based
  // index into `lines`.
  std::vector<Token> tokens;
  NormalizationLevel level = NormalizationLevel::kType1;

  // The lines joined back into source form, each terminated by '\n'.
  std::string text() const { return join_lines(lines); }

  bool operator==(const NormalizedFragment&) const = default;
};

struct NormalizedLevels {
  NormalizedFragment type1;
  NormalizedFragment type2;
  NormalizedFragment type3;

  const NormalizedFragment& at(NormalizationLevel level) const;
};

// Throws Error(kUnsupportedLanguage); lexing problems degrade silently.
NormalizedFragment normalize(const CodeFragment& fragment, NormalizationLevel level);

// All three levels from a single lexing pass.
NormalizedLevels normalize_all(const CodeFragment& fragment);

// Same, starting from an existing token stream (as produced by tokenize).
NormalizedLevels normalize_tokens(const std::vector<Token>& tokens);

}  // namespace cloneval
