#include "cloneval/normalize.hpp"

#include <algorithm>

#include "java_syntax.hpp"

namespace cloneval {
namespace {

using detail::one_of;
using detail::opens_expression_brace;

struct LayoutLine {
  int indent = 0;
  std::vector<Token> tokens;  // empty for a blank line
};

struct SourceLine {
  std::vector<Token> code;
  bool had_comment = false;
};

std::vector<SourceLine> split_source_lines(const std::vector<Token>& tokens) {
  std::vector<SourceLine> lines(1);
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kNewline) {
      lines.emplace_back();
    } else if (t.kind == TokenKind::kComment) {
      lines.back().had_comment = true;
    } else if (t.kind != TokenKind::kWhitespace) {
      lines.back().code.push_back(t);
    }
  }
  // A trailing newline terminates the last line instead of opening one.
  if (lines.back().code.empty() && !lines.back().had_comment) lines.pop_back();
  return lines;
}

// Pretty-printer state machine. Statement and block boundaries always start a
// new line; source line breaks are otherwise respected.
class Layouter {
 public:
  std::vector<LayoutLine> run(const std::vector<Token>& tokens) {
    for (const SourceLine& src : split_source_lines(tokens)) {
      if (src.code.empty()) {
        if (!src.had_comment) out_.push_back(LayoutLine{});
        continue;
      }
      bool first_in_source_line = true;
      for (const Token& tok : src.code) {
        place(tok, first_in_source_line);
        first_in_source_line = false;
      }
      flush();
    }
    return std::move(out_);
  }

 private:
  enum class Break { kNone, kHard, kAfterClose };

  void flush() {
    if (!current_.tokens.empty()) out_.push_back(std::move(current_));
    current_ = LayoutLine{};
    pending_ = Break::kNone;
  }

  void place(const Token& tok, bool first_in_source_line) {
    const bool is_open = tok.is("{");
    const bool is_close = tok.is("}");
    bool block_open = false;
    if (is_open) {
      const bool enclosing_expr = !braces_.empty() && braces_.back().expression;
      block_open = !(have_prev_ && opens_expression_brace(prev_, enclosing_expr));
    }
    const bool block_close = is_close && (braces_.empty() || !braces_.back().expression);

    // Allman style: a block "{" opening a source line joins the header line.
    if (first_in_source_line && block_open && current_.tokens.empty() && !out_.empty() &&
        !out_.back().tokens.empty()) {
      const Token& last = out_.back().tokens.back();
      if (!one_of(last, {";", "{", "}"})) {
        current_ = std::move(out_.back());
        out_.pop_back();
      }
    }

    if (pending_ == Break::kHard) {
      flush();
    } else if (pending_ == Break::kAfterClose) {
      if (one_of(tok, {")", ";", ",", "."})) {
        pending_ = Break::kNone;
      } else {
        flush();
      }
    }
    if (block_close && !current_.tokens.empty()) flush();
    if (current_.tokens.empty()) current_.indent = block_close ? std::max(0, depth_ - 1) : depth_;
    current_.tokens.push_back(tok);

    if (tok.is("(")) {
      ++parens_;
    } else if (tok.is(")")) {
      parens_ = std::max(0, parens_ - 1);
    } else if (is_open) {
      braces_.push_back({!block_open, parens_});
      if (block_open) {
        ++depth_;
        parens_ = 0;
        pending_ = Break::kHard;
      }
    } else if (is_close) {
      if (!braces_.empty()) {
        const Brace b = braces_.back();
        braces_.pop_back();
        if (!b.expression) parens_ = b.saved_parens;
      }
      if (block_close) {
        depth_ = std::max(0, depth_ - 1);
        pending_ = Break::kAfterClose;
      }
    } else if (tok.is(";") && parens_ == 0) {
      pending_ = Break::kHard;
    }
    prev_ = tok;
    have_prev_ = true;
  }

  struct Brace {
    bool expression;
    int saved_parens;
  };

  std::vector<LayoutLine> out_;
  LayoutLine current_;
  Break pending_ = Break::kNone;
  int depth_ = 0;
  int parens_ = 0;
  std::vector<Brace> braces_;
  Token prev_;
  bool have_prev_ = false;
};

bool is_word(const Token& t) {
  return t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kKeyword;
}

bool is_operand_end(const Token& t) {
  return t.kind == TokenKind::kIdentifier || t.is(")") || t.is("]");
}

bool needs_space(const Token& prev, const Token& cur) {
  if (one_of(cur, {".", ",", ";", ")", "]", "...", "::"})) return false;
  if (one_of(prev, {".", "(", "[", "@", "::", "!", "~"})) return false;
  if (cur.is("(")) {
    if (prev.kind == TokenKind::kIdentifier || prev.is(")") || prev.is("]")) return false;
    if (prev.is("this") || prev.is("super")) return false;
    return true;
  }
  if (cur.is("[")) {
    return !(is_word(prev) || prev.is("]") || prev.is(")") ||
             prev.kind == TokenKind::kStringLiteral);
  }
  if ((cur.is("++") || cur.is("--")) && is_operand_end(prev)) return false;
  return true;
}

std::string render(const LayoutLine& line) {
  std::string out(static_cast<std::size_t>(line.indent), '\t');
  for (std::size_t i = 0; i < line.tokens.size(); ++i) {
    if (i > 0 && needs_space(line.tokens[i - 1], line.tokens[i])) out.push_back(' ');
    out += line.tokens[i].text;
  }
  return out;
}

Token abstract_token(Token t) {
  switch (t.kind) {
    case TokenKind::kIdentifier: t.text = "X"; break;
    case TokenKind::kStringLiteral: t.text = "\"string\""; break;
    case TokenKind::kCharLiteral: t.text = "'c'"; break;
    case TokenKind::kNumberLiteral: t.text = "0"; break;
    default: break;
  }
  return t;
}

bool is_structural_only(const LayoutLine& line) {
  return std::all_of(line.tokens.begin(), line.tokens.end(),
                     [](const Token& t) { return one_of(t, {"{", "}", ";"}); });
}

bool is_import_or_package(const LayoutLine& line) {
  return !line.tokens.empty() && (line.tokens.front().is("import") || line.tokens.front().is("package"));
}

NormalizedFragment assemble(const std::vector<LayoutLine>& layout, NormalizationLevel level) {
  NormalizedFragment out;
  out.level = level;
  out.lines.reserve(layout.size());
  for (const LayoutLine& line : layout) {
    out.lines.push_back(render(line));
    const int number = static_cast<int>(out.lines.size());
    for (Token t : line.tokens) {
      t.line = number;
      out.tokens.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(NormalizationLevel level) {
  switch (level) {
    case NormalizationLevel::kType1: return "Type1";
    case NormalizationLevel::kType2: return "Type2";
    case NormalizationLevel::kType3: return "Type3";
  }
  return "Type?";
}

const NormalizedFragment& NormalizedLevels::at(NormalizationLevel level) const {
  switch (level) {
    case NormalizationLevel::kType1: return type1;
    case NormalizationLevel::kType2: return type2;
    case NormalizationLevel::kType3: break;
  }
  return type3;
}

NormalizedLevels normalize_tokens(const std::vector<Token>& tokens) {
  const std::vector<LayoutLine> type1 = Layouter().run(tokens);

  std::vector<LayoutLine> type2 = type1;
  for (LayoutLine& line : type2) {
    for (Token& t : line.tokens) t = abstract_token(std::move(t));
  }

  std::vector<LayoutLine> type3;
  for (const LayoutLine& line : type2) {
    if (line.tokens.empty() || is_structural_only(line) || is_import_or_package(line)) continue;
    LayoutLine kept = line;
    kept.indent = 0;
    type3.push_back(std::move(kept));
  }

  return NormalizedLevels{assemble(type1, NormalizationLevel::kType1),
                          assemble(type2, NormalizationLevel::kType2),
                          assemble(type3, NormalizationLevel::kType3)};
}

NormalizedLevels normalize_all(const CodeFragment& fragment) {
  return normalize_tokens(tokenize(fragment).tokens);
}

NormalizedFragment normalize(const CodeFragment& fragment, NormalizationLevel level) {
  NormalizedLevels all = normalize_all(fragment);
  switch (level) {
    case NormalizationLevel::kType1: return std::move(all.type1);
    case NormalizationLevel::kType2: return std::move(all.type2);
    case NormalizationLevel::kType3: break;
  }
  return std::move(all.type3);
}

}  // namespace cloneval
