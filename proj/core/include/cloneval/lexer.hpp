#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/fragment.hpp"

namespace cloneval {

enum class TokenKind : std::uint8_t {
  kKeyword,
  kIdentifier,
  kStringLiteral,
  kCharLiteral,
  kNumberLiteral,
  kOperator,
  kPunctuation,
  kComment,
  kWhitespace,  // a run of spaces/tabs/form feeds, never containing a newline
  kNewline,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kWhitespace;
  std::string text;
  int line = 1;

  bool operator==(const Token&) const = default;

  bool is_layout() const { return kind == TokenKind::kWhitespace || kind == TokenKind::kNewline; }
  bool is_code() const { return !is_layout() && kind != TokenKind::kComment; }
  bool is(std::string_view s) const { return is_code() && text == s; }
};

// Recoverable lexing problems. The offending text is still emitted as a token
// (so concatenation stays lossless) and the pipeline carries on.
struct LexDiagnostic {
  enum class Kind { kUnterminatedString, kUnterminatedChar, kUnterminatedComment };
  Kind kind;
  int line;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<LexDiagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

bool is_supported_language(std::string_view language);
bool is_java_keyword(std::string_view word);

// Lossless Java tokenizer: concatenating token texts reproduces the input.
LexResult tokenize_java(std::string_view source);

// Throws Error(kUnsupportedLanguage) for anything but Java.
LexResult tokenize(const CodeFragment& fragment);

}  // namespace cloneval
