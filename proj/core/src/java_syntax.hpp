#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/lexer.hpp"

// Lexical heuristics over Java token streams shared by the normalizer, the
// feature extractor and the mutation operators.
namespace cloneval::detail {

inline bool one_of(const Token& t, std::initializer_list<std::string_view> texts) {
  return std::any_of(texts.begin(), texts.end(), [&](std::string_view s) { return t.text == s; });
}

// A "{" is an expression brace (array initializer and the like) when it
// follows one of these tokens or opens inside another expression brace.
inline bool opens_expression_brace(const Token& prev, bool enclosing_is_expression) {
  if (prev.is("{")) return enclosing_is_expression;
  return one_of(prev, {"=", "]", ",", "(", "return", "?"});
}

inline std::vector<Token> code_only(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const Token& t : tokens) {
    if (t.is_code()) out.push_back(t);
  }
  return out;
}

// Index of the "(" matching the ")" at `close`, or npos.
inline std::size_t matching_open_paren(const std::vector<Token>& toks, std::size_t close) {
  int depth = 0;
  for (std::size_t i = close + 1; i-- > 0;) {
    if (toks[i].is(")")) ++depth;
    if (toks[i].is("(") && --depth == 0) return i;
  }
  return std::string::npos;
}

// True when the "{" at `open` (an index into code tokens) starts a method or
// constructor body:  name ( ... ) [throws A, B.C] {
inline bool opens_method_body(const std::vector<Token>& toks, std::size_t open) {
  if (open == 0) return false;
  std::size_t i = open - 1;
  std::size_t j = i;
  while (j > 0 && (toks[j].kind == TokenKind::kIdentifier || toks[j].is(".") || toks[j].is(","))) --j;
  if (toks[j].is("throws") && j > 0) i = j - 1;
  if (!toks[i].is(")")) return false;
  const std::size_t lparen = matching_open_paren(toks, i);
  if (lparen == std::string::npos || lparen == 0) return false;
  if (toks[lparen - 1].kind != TokenKind::kIdentifier) return false;
  if (lparen >= 2) {
    // Declarations follow a type, a modifier or a statement boundary; calls
    // and instance creations do not.
    const Token& before = toks[lparen - 2];
    if (before.is("new") || before.is(".")) return false;
    if (before.kind != TokenKind::kIdentifier && before.kind != TokenKind::kKeyword &&
        !one_of(before, {">", "]", ";", "}", "{"})) {
      return false;
    }
  }
  return true;
}

}  // namespace cloneval::detail
