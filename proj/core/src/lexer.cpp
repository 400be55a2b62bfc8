#include "cloneval/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "cloneval/error.hpp"

namespace cloneval {
namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",     "case",
    "catch",    "char",       "class",     "const",     "continue", "default",
    "do",       "double",     "else",      "enum",      "extends",  "final",
    "finally",  "float",      "for",       "goto",      "if",       "implements",
    "import",   "instanceof", "int",       "interface", "long",     "native",
    "new",      "package",    "private",   "protected", "public",   "return",
    "short",    "static",     "strictfp",  "super",     "switch",   "synchronized",
    "this",     "throw",      "throws",    "transient", "try",      "void",
    "volatile", "while",      "true",      "false",     "null",
};

// Longest first so that a linear scan finds the maximal munch.
constexpr std::array<std::string_view, 38> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==",
    "!=",   "<=",  ">=",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=",
    "^=",   "<<",  ">>",  "=",   ">",  "<",  "!",  "~",  "?",  ":",
    "+",    "-",   "*",   "/",   "&",  "|",  "^",  "%",
};

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v'; }

bool is_newline(char c) { return c == '\n' || c == '\r'; }

class JavaLexer {
 public:
  explicit JavaLexer(std::string_view src) : src_(src) {}

  LexResult run() {
    while (pos_ < src_.size()) step();
    return std::move(result_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void emit(TokenKind kind, std::size_t begin, std::size_t end, int line) {
    result_.tokens.push_back(Token{kind, std::string(src_.substr(begin, end - begin)), line});
  }

  void step() {
    const std::size_t begin = pos_;
    const int line = line_;
    const char c = peek();

    if (is_newline(c)) {
      pos_ += (c == '\r' && peek(1) == '\n') ? 2 : 1;
      ++line_;
      emit(TokenKind::kNewline, begin, pos_, line);
      return;
    }
    if (is_blank(c)) {
      while (pos_ < src_.size() && is_blank(peek())) ++pos_;
      emit(TokenKind::kWhitespace, begin, pos_, line);
      return;
    }
    if (c == '/' && peek(1) == '/') {
      while (pos_ < src_.size() && !is_newline(peek())) ++pos_;
      emit(TokenKind::kComment, begin, pos_, line);
      return;
    }
    if (c == '/' && peek(1) == '*') {
      lex_block_comment(begin, line);
      return;
    }
    if (c == '"' || c == '\'') {
      lex_quoted(c, begin, line);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number(begin, line);
      return;
    }
    if (is_ident_start(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) ++pos_;
      const std::string_view word = src_.substr(begin, pos_ - begin);
      emit(is_java_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier, begin, pos_, line);
      return;
    }
    if (c == '.' && peek(1) == '.' && peek(2) == '.') {
      pos_ += 3;
      emit(TokenKind::kPunctuation, begin, pos_, line);
      return;
    }
    if (c == ':' && peek(1) == ':') {
      pos_ += 2;
      emit(TokenKind::kPunctuation, begin, pos_, line);
      return;
    }
    if (std::string_view("(){}[];,.@").find(c) != std::string_view::npos) {
      ++pos_;
      emit(TokenKind::kPunctuation, begin, pos_, line);
      return;
    }
    const std::string_view rest = src_.substr(pos_);
    for (const auto op : kOperators) {
      if (rest.starts_with(op)) {
        pos_ += op.size();
        emit(TokenKind::kOperator, begin, pos_, line);
        return;
      }
    }
    // Stray byte (backtick, '#', '\\', ...): keep it as a one-char operator.
    ++pos_;
    emit(TokenKind::kOperator, begin, pos_, line);
  }

  void lex_block_comment(std::size_t begin, int line) {
    pos_ += 2;
    while (pos_ < src_.size()) {
      if (peek() == '*' && peek(1) == '/') {
        pos_ += 2;
        emit(TokenKind::kComment, begin, pos_, line);
        return;
      }
      advance_counting_lines();
    }
    result_.diagnostics.push_back({LexDiagnostic::Kind::kUnterminatedComment, line});
    emit(TokenKind::kComment, begin, pos_, line);
  }

  void advance_counting_lines() {
    const char c = peek();
    if (c == '\r' && peek(1) == '\n') {
      pos_ += 2;
      ++line_;
    } else {
      ++pos_;
      if (is_newline(c)) ++line_;
    }
  }

  // Java string and char literals cannot span lines; an unterminated one ends
  // at the line break, which stays a separate newline token.
  void lex_quoted(char quote, std::size_t begin, int line) {
    ++pos_;
    while (pos_ < src_.size()) {
      const char c = peek();
      if (is_newline(c)) break;
      if (c == '\\') {
        pos_ += is_newline(peek(1)) || pos_ + 1 >= src_.size() ? 1 : 2;
        continue;
      }
      ++pos_;
      if (c == quote) {
        emit(quote == '"' ? TokenKind::kStringLiteral : TokenKind::kCharLiteral, begin, pos_, line);
        return;
      }
    }
    result_.diagnostics.push_back({quote == '"' ? LexDiagnostic::Kind::kUnterminatedString
                                                : LexDiagnostic::Kind::kUnterminatedChar,
                                   line});
    emit(quote == '"' ? TokenKind::kStringLiteral : TokenKind::kCharLiteral, begin, pos_, line);
  }

  void lex_number(std::size_t begin, int line) {
    const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    while (pos_ < src_.size()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        ++pos_;
        const bool exponent = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
        if (exponent && (peek() == '+' || peek() == '-')) ++pos_;
      } else if (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        ++pos_;
      } else if (c == '.' && !(peek(1) == '.') &&
                 !is_ident_start(static_cast<unsigned char>(peek(1)))) {
        ++pos_;  // "1." is a valid double literal
      } else {
        break;
      }
    }
    emit(TokenKind::kNumberLiteral, begin, pos_, line);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  LexResult result_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kStringLiteral: return "literal-string";
    case TokenKind::kCharLiteral: return "literal-char";
    case TokenKind::kNumberLiteral: return "literal-number";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kComment: return "comment";
    case TokenKind::kWhitespace: return "whitespace-run";
    case TokenKind::kNewline: return "newline";
  }
  return "unknown";
}

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_supported_language(std::string_view language) {
  if (language.size() != 4) return false;
  std::string lower;
  for (const char c : language) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower == "java";
}

LexResult tokenize_java(std::string_view source) { return JavaLexer(source).run(); }

LexResult tokenize(const CodeFragment& fragment) {
  if (!is_supported_language(fragment.language)) {
    throw Error(ErrorCode::kUnsupportedLanguage, "language '" + fragment.language + "' is not supported");
  }
  return tokenize_java(fragment.source_text);
}

}  // namespace cloneval
