#include "cloneval/mutation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "cloneval/csv.hpp"
#include "cloneval/diff.hpp"
#include "cloneval/error.hpp"
#include "cloneval/lexer.hpp"
#include "java_syntax.hpp"
#include "random.hpp"

namespace cloneval {
namespace {

namespace fs = std::filesystem;
using detail::one_of;
using detail::Rng;

constexpr std::array<std::string_view, 9> kOperatorNames = {
    "WS_ADD_REMOVE",      "COMMENT_CHANGE",          "NEWLINE_ADD_REMOVE",
    "RENAME_SYSTEMATIC",  "RENAME_ARBITRARY",        "LITERAL_VALUE_CHANGE",
    "INTRALINE_INSERT_DELETE", "LINE_INSERT_DELETE", "LINE_MODIFY",
};

// Token stream being edited; rendered back to text at the end.
using Tokens = std::vector<Token>;

std::string join(const Tokens& toks) {
  std::string s;
  for (const auto& t : toks) s += t.text;
  return s;
}

std::vector<std::pair<TokenKind, std::string>> code_signature(std::string_view text) {
  std::vector<std::pair<TokenKind, std::string>> sig;
  for (const Token& t : tokenize_java(text).tokens) {
    if (t.is_code()) sig.emplace_back(t.kind, t.text);
  }
  return sig;
}

Token make(TokenKind kind, std::string text) { return Token{kind, std::move(text), 0}; }

// Per-code-token layout facts, computed with the same brace rules the
// normalizer uses.
struct CodeInfo {
  std::size_t index;     // position in the full token vector
  bool block_open = false;
  bool block_close = false;
  bool statement_end = false;  // ";" at paren depth 0 inside a block
};

std::vector<CodeInfo> analyze(const Tokens& toks) {
  struct Brace {
    bool expression;
    int saved_parens;
  };
  std::vector<CodeInfo> info;
  std::vector<Brace> braces;
  int parens = 0;
  const Token* prev = nullptr;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (!t.is_code()) continue;
    CodeInfo ci{i};
    const bool in_expr = !braces.empty() && braces.back().expression;
    if (t.is("(")) {
      ++parens;
    } else if (t.is(")")) {
      parens = std::max(0, parens - 1);
    } else if (t.is("{")) {
      const bool expr = prev != nullptr && detail::opens_expression_brace(*prev, in_expr);
      ci.block_open = !expr;
      braces.push_back({expr, parens});
      if (!expr) parens = 0;
    } else if (t.is("}")) {
      ci.block_close = braces.empty() || !braces.back().expression;
      if (!braces.empty()) {
        if (!braces.back().expression) parens = braces.back().saved_parens;
        braces.pop_back();
      }
    } else if (t.is(";")) {
      ci.statement_end = parens == 0 && !in_expr;
    }
    info.push_back(ci);
    prev = &t;
  }
  return info;
}

struct SourceLineInfo {
  std::size_t first = 0;  // first token index of the line
  std::size_t end = 0;    // index of the terminating newline token, or size()
  std::vector<std::size_t> code;  // code token indices on this line
  bool has_comment = false;
  bool multiline_token = false;   // a block comment spans into another line
};

std::vector<SourceLineInfo> source_lines(const Tokens& toks) {
  std::vector<SourceLineInfo> lines(1);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind == TokenKind::kNewline) {
      lines.back().end = i;
      lines.emplace_back();
      lines.back().first = i + 1;
      continue;
    }
    if (t.kind == TokenKind::kComment) {
      lines.back().has_comment = true;
      if (t.text.find('\n') != std::string::npos || t.text.find('\r') != std::string::npos) {
        lines.back().multiline_token = true;
      }
    }
    if (t.is_code()) lines.back().code.push_back(i);
  }
  lines.back().end = toks.size();
  if (lines.back().first == toks.size()) lines.pop_back();
  return lines;
}

std::string indentation_of(const Tokens& toks, const SourceLineInfo& line) {
  if (line.first < toks.size() && toks[line.first].kind == TokenKind::kWhitespace) return toks[line.first].text;
  return "";
}

std::string newline_style(const Tokens& toks) {
  for (const auto& t : toks) {
    if (t.kind == TokenKind::kNewline) return t.text;
  }
  return "\n";
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[detail::uniform_index(rng, v.size())];
}

[[noreturn]] void no_site(MutationOperator op) {
  throw Error(ErrorCode::kNoMutableSite, "fragment offers no site for " + std::string(to_string(op)));
}

// ---- Type1 operators -------------------------------------------------------

std::optional<std::string> ws_add_remove(const Tokens& toks, Rng& rng) {
  const auto original = code_signature(join(toks));
  struct Site {
    std::size_t index;
    bool insert;  // insert before toks[index] rather than edit toks[index]
  };
  std::vector<Site> sites;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind == TokenKind::kWhitespace) {
      sites.push_back({i, false});
    } else if (i > 0 && toks[i].is_code() && toks[i - 1].is_code()) {
      sites.push_back({i, true});
    }
  }
  detail::shuffle(sites, rng);
  for (const Site& s : sites) {
    Tokens out = toks;
    if (s.insert) {
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(s.index),
                 make(TokenKind::kWhitespace, detail::uniform01(rng) < 0.5 ? " " : "  "));
    } else {
      const std::string& w = toks[s.index].text;
      const bool leading = s.index == 0 || toks[s.index - 1].kind == TokenKind::kNewline;
      if (leading) {
        out[s.index].text = w.find('\t') != std::string::npos ? std::string(w.size() * 4, ' ') : w + "  ";
      } else if (w == " ") {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(s.index));
      } else {
        out[s.index].text = " ";
      }
    }
    std::string text = join(out);
    if (text != join(toks) && code_signature(text) == original) return text;
  }
  return std::nullopt;
}

std::optional<std::string> comment_change(const Tokens& toks, Rng& rng) {
  static const std::vector<std::string> kNotes = {"TODO check bounds", "see caller", "keep in sync",
                                                  "fast path",         "legacy",     "FIXME"};
  const auto lines = source_lines(toks);
  const std::string nl = newline_style(toks);
  std::vector<std::function<std::optional<std::string>()>> edits;

  // Remove or reword an existing single-line comment.
  for (const auto& line : lines) {
    if (!line.has_comment || line.multiline_token) continue;
    for (std::size_t i = line.first; i < line.end; ++i) {
      if (toks[i].kind != TokenKind::kComment) continue;
      edits.push_back([&, i, line]() -> std::optional<std::string> {
        Tokens out = toks;
        if (line.code.empty()) {
          // Comment-only line: drop the whole line including its newline.
          const std::size_t stop = std::min(line.end + 1, out.size());
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(line.first),
                    out.begin() + static_cast<std::ptrdiff_t>(stop));
        } else {
          std::size_t from = i;
          if (from > line.first && out[from - 1].kind == TokenKind::kWhitespace) --from;
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(from), out.begin() + static_cast<std::ptrdiff_t>(i + 1));
        }
        return join(out);
      });
      edits.push_back([&, i]() -> std::optional<std::string> {
        Tokens out = toks;
        const bool line_comment = out[i].text.rfind("//", 0) == 0;
        const std::string note = pick(kNotes, rng);
        out[i].text = line_comment ? "// " + note : "/* " + note + " */";
        if (out[i].text == toks[i].text) out[i].text += " (revised)";
        return join(out);
      });
    }
  }
  // Append a trailing comment to a code line, or add a comment-only line.
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.code.empty() || line.has_comment || line.multiline_token) continue;
    edits.push_back([&, line]() -> std::optional<std::string> {
      Tokens out = toks;
      const std::size_t at = line.code.back() + 1;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(at),
                 {make(TokenKind::kWhitespace, " "), make(TokenKind::kComment, "// " + pick(kNotes, rng))});
      return join(out);
    });
    edits.push_back([&, line]() -> std::optional<std::string> {
      Tokens out = toks;
      const std::string indent = indentation_of(toks, line);
      Tokens ins;
      if (!indent.empty()) ins.push_back(make(TokenKind::kWhitespace, indent));
      ins.push_back(make(TokenKind::kComment, "// " + pick(kNotes, rng)));
      ins.push_back(make(TokenKind::kNewline, nl));
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(line.first), ins.begin(), ins.end());
      return join(out);
    });
  }
  if (edits.empty()) return std::nullopt;
  const auto original = code_signature(join(toks));
  detail::shuffle(edits, rng);
  for (auto& e : edits) {
    auto text = e();
    if (text && *text != join(toks) && code_signature(*text) == original) return text;
  }
  return std::nullopt;
}

std::optional<std::string> newline_add_remove(const Tokens& toks, Rng& rng) {
  const auto info = analyze(toks);
  std::map<std::size_t, CodeInfo> by_index;
  for (const auto& ci : info) by_index[ci.index] = ci;
  const auto lines = source_lines(toks);
  const std::string nl = newline_style(toks);
  std::vector<std::function<std::string()>> edits;

  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.code.empty() || line.multiline_token) continue;
    const std::size_t last = line.code.back();
    const CodeInfo& ci = by_index[last];

    // Join this line with the next one when the break is a statement or
    // block boundary the pretty-printer restores on its own.
    const bool ends_with_comment =
        std::any_of(toks.begin() + static_cast<std::ptrdiff_t>(last) + 1, toks.begin() + static_cast<std::ptrdiff_t>(line.end),
                    [](const Token& t) { return t.kind == TokenKind::kComment; });
    if (!ends_with_comment && l + 1 < lines.size() && line.end < toks.size()) {
      const auto& next = lines[l + 1];
      const bool next_ok = !next.code.empty() && !next.multiline_token &&
                           !one_of(toks[next.code.front()], {")", ";", ",", "."}) &&
                           !toks[next.code.front()].is("{");
      const bool boundary = ci.statement_end || ci.block_open || ci.block_close;
      if (next_ok && boundary) {
        edits.push_back([&, line, next]() {
          Tokens out = toks;
          std::size_t stop = next.first;
          while (stop < out.size() && out[stop].kind == TokenKind::kWhitespace) ++stop;
          std::size_t from = line.end;
          while (from > line.first && out[from - 1].kind == TokenKind::kWhitespace) --from;
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(from), out.begin() + static_cast<std::ptrdiff_t>(stop));
          out.insert(out.begin() + static_cast<std::ptrdiff_t>(from), make(TokenKind::kWhitespace, " "));
          return join(out);
        });
      }
    }
    // Move a trailing block "{" onto its own line.
    if (ci.block_open && line.code.size() >= 2) {
      const Token& before = toks[line.code[line.code.size() - 2]];
      if (!one_of(before, {";", "{", "}"})) {
        edits.push_back([&, line, last]() {
          Tokens out = toks;
          std::size_t from = last;
          while (from > line.first && out[from - 1].kind == TokenKind::kWhitespace) --from;
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(from), out.begin() + static_cast<std::ptrdiff_t>(last));
          Tokens ins{make(TokenKind::kNewline, nl)};
          const std::string indent = indentation_of(toks, line);
          if (!indent.empty()) ins.push_back(make(TokenKind::kWhitespace, indent));
          out.insert(out.begin() + static_cast<std::ptrdiff_t>(from), ins.begin(), ins.end());
          return join(out);
        });
      }
    }
  }
  if (edits.empty()) return std::nullopt;
  return pick(edits, rng)();
}

// ---- Type2 operators -------------------------------------------------------

std::string fresh_identifier(const Tokens& toks, Rng& rng) {
  static const std::vector<std::string> kBases = {"item", "value", "tmp", "node", "entry", "count", "buf", "ref"};
  std::set<std::string> used;
  for (const auto& t : toks) {
    if (t.kind == TokenKind::kIdentifier) used.insert(t.text);
  }
  for (int attempt = 0;; ++attempt) {
    std::string name = pick(kBases, rng);
    if (attempt > 0) name += std::to_string(detail::uniform_index(rng, 1000));
    if (!used.count(name) && !is_java_keyword(name)) return name;
  }
}

std::optional<std::string> rename(const Tokens& toks, Rng& rng, bool systematic) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind == TokenKind::kIdentifier) ids.push_back(i);
  }
  if (ids.empty()) return std::nullopt;
  Tokens out = toks;
  const std::size_t chosen = pick(ids, rng);
  const std::string old_name = toks[chosen].text;
  const std::string new_name = fresh_identifier(toks, rng);
  if (systematic) {
    for (const std::size_t i : ids) {
      if (out[i].text == old_name) out[i].text = new_name;
    }
  } else {
    out[chosen].text = new_name;
  }
  return join(out);
}

std::optional<std::string> literal_value_change(const Tokens& toks, Rng& rng) {
  static const std::vector<std::string> kStrings = {"\"alpha\"", "\"result: \"", "\"\"", "\"n/a\"", "\"done\""};
  static const std::vector<std::string> kChars = {"'a'", "'x'", "' '", "'\\n'", "'0'"};
  std::vector<std::size_t> lits;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto k = toks[i].kind;
    if (k == TokenKind::kNumberLiteral || k == TokenKind::kStringLiteral || k == TokenKind::kCharLiteral) {
      lits.push_back(i);
    }
  }
  if (lits.empty()) return std::nullopt;
  Tokens out = toks;
  const std::size_t i = pick(lits, rng);
  std::string& text = out[i].text;
  const std::string old = text;
  for (int attempt = 0; text == old && attempt < 16; ++attempt) {
    switch (toks[i].kind) {
      case TokenKind::kNumberLiteral: text = std::to_string(detail::uniform_index(rng, 1000)); break;
      case TokenKind::kStringLiteral: text = pick(kStrings, rng); break;
      default: text = pick(kChars, rng); break;
    }
  }
  if (text == old) text = toks[i].kind == TokenKind::kNumberLiteral ? old + "1" : old;
  if (text == old) return std::nullopt;
  return join(out);
}

// ---- Type3 operators -------------------------------------------------------

bool is_operand(const Token& t) {
  return t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kNumberLiteral ||
         t.kind == TokenKind::kStringLiteral || t.kind == TokenKind::kCharLiteral;
}

std::optional<std::string> intraline_insert_delete(const Tokens& toks, Rng& rng) {
  std::vector<std::size_t> code;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].is_code()) code.push_back(i);
  }
  std::vector<std::function<std::string()>> edits;
  for (std::size_t c = 1; c + 1 < code.size(); ++c) {
    const Token& prev = toks[code[c - 1]];
    const Token& cur = toks[code[c]];
    const Token& next = toks[code[c + 1]];
    // Append "+ 1" to a right-hand operand: "= a;" -> "= a + 1;".
    if (is_operand(cur) && one_of(prev, {"=", "(", ",", "return", "+", "-", "*", "<", ">"}) &&
        one_of(next, {";", ")", ","}) && cur.line == next.line) {
      const std::size_t at = code[c] + 1;
      edits.push_back([&, at]() {
        Tokens out = toks;
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(at),
                   {make(TokenKind::kWhitespace, " "), make(TokenKind::kOperator, "+"),
                    make(TokenKind::kWhitespace, " "), make(TokenKind::kNumberLiteral, "1")});
        return join(out);
      });
    }
    // Drop a trailing "op operand": "a + b;" -> "a;".
    if (c + 2 < code.size() && one_of(cur, {"+", "-", "*", "/", "&&", "||"}) && is_operand(prev) &&
        is_operand(next) && one_of(toks[code[c + 2]], {";", ")", ","}) && prev.line == next.line) {
      const std::size_t from = code[c - 1] + 1, to = code[c + 1] + 1;
      edits.push_back([&, from, to]() {
        Tokens out = toks;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(from), out.begin() + static_cast<std::ptrdiff_t>(to));
        return join(out);
      });
    }
  }
  if (edits.empty()) return std::nullopt;
  return pick(edits, rng)();
}

std::optional<std::string> line_insert_delete(const Tokens& toks, Rng& rng) {
  static const std::vector<std::string> kTemplates = {"{v} = {v};", "{v} = {v} + 0;", "{v} = {v} * 1;",
                                                      "{v} += 0;"};
  const auto info = analyze(toks);
  std::map<std::size_t, CodeInfo> by_index;
  for (const auto& ci : info) by_index[ci.index] = ci;
  const auto lines = source_lines(toks);
  const std::string nl = newline_style(toks);

  std::vector<std::string> vars;
  for (const auto& t : toks) {
    if (t.kind == TokenKind::kIdentifier) vars.push_back(t.text);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) vars.push_back("tmp");

  std::vector<std::function<std::string()>> edits;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.code.empty() || line.multiline_token) continue;
    const CodeInfo& last = by_index[line.code.back()];
    const bool statement_line = last.statement_end;
    // Insert a no-op statement after a statement or block-opening line.
    if ((statement_line || last.block_open) && line.end < toks.size()) {
      edits.push_back([&, l, line, block = last.block_open]() {
        std::string stmt = pick(kTemplates, rng);
        const std::string v = pick(vars, rng);
        for (std::size_t p; (p = stmt.find("{v}")) != std::string::npos;) stmt.replace(p, 3, v);
        std::string indent = indentation_of(toks, line);
        if (block) {
          indent += "\t";
          if (l + 1 < lines.size() && !lines[l + 1].code.empty()) indent = indentation_of(toks, lines[l + 1]);
        }
        Tokens out = toks;
        Tokens ins;
        if (!indent.empty()) ins.push_back(make(TokenKind::kWhitespace, indent));
        ins.push_back(make(TokenKind::kIdentifier, stmt));
        ins.push_back(make(TokenKind::kNewline, nl));
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(line.end + 1), ins.begin(), ins.end());
        return join(out);
      });
    }
    // Delete a whole single-line statement.
    const bool starts_clean = l == 0 || [&] {
      for (std::size_t k = l; k-- > 0;) {
        if (!lines[k].code.empty()) {
          const CodeInfo& prev = by_index[lines[k].code.back()];
          return prev.statement_end || prev.block_open || prev.block_close;
        }
      }
      return true;
    }();
    const bool has_brace = std::any_of(line.code.begin(), line.code.end(),
                                       [&](std::size_t i) { return toks[i].is("{") || toks[i].is("}"); });
    if (statement_line && starts_clean && !has_brace && lines.size() > 1) {
      edits.push_back([&, line]() {
        Tokens out = toks;
        const std::size_t stop = std::min(line.end + 1, out.size());
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(line.first), out.begin() + static_cast<std::ptrdiff_t>(stop));
        return join(out);
      });
    }
  }
  if (edits.empty()) return std::nullopt;
  return pick(edits, rng)();
}

std::optional<std::string> line_modify(const Tokens& toks, Rng& rng) {
  static const std::vector<std::vector<std::string>> kGroups = {
      {"+", "-"}, {"*", "/"}, {"<", "<=", ">", ">="}, {"==", "!="}, {"&&", "||"}, {"++", "--"}, {"+=", "-="}};
  std::vector<std::pair<std::size_t, const std::vector<std::string>*>> sites;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::kOperator) continue;
    for (const auto& g : kGroups) {
      if (std::find(g.begin(), g.end(), toks[i].text) != g.end()) sites.emplace_back(i, &g);
    }
  }
  if (sites.empty()) return std::nullopt;
  const auto& [i, group] = pick(sites, rng);
  std::vector<std::string> options;
  for (const auto& s : *group) {
    if (s != toks[i].text) options.push_back(s);
  }
  Tokens out = toks;
  out[i].text = pick(options, rng);
  return join(out);
}

std::optional<std::string> apply(const Tokens& toks, MutationOperator op, Rng& rng) {
  switch (op) {
    case MutationOperator::kWsAddRemove: return ws_add_remove(toks, rng);
    case MutationOperator::kCommentChange: return comment_change(toks, rng);
    case MutationOperator::kNewlineAddRemove: return newline_add_remove(toks, rng);
    case MutationOperator::kRenameSystematic: return rename(toks, rng, true);
    case MutationOperator::kRenameArbitrary: return rename(toks, rng, false);
    case MutationOperator::kLiteralValueChange: return literal_value_change(toks, rng);
    case MutationOperator::kIntralineInsertDelete: return intraline_insert_delete(toks, rng);
    case MutationOperator::kLineInsertDelete: return line_insert_delete(toks, rng);
    case MutationOperator::kLineModify: return line_modify(toks, rng);
  }
  return std::nullopt;
}

double line_similarity_t1(const CodeFragment& a, const CodeFragment& b) {
  try {
    return fragment_similarity(normalize(a, NormalizationLevel::kType1), normalize(b, NormalizationLevel::kType1),
                               Granularity::kLine)
        .value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyFragment) throw;
    return 0.0;
  }
}

std::string label_text(Label l) { return std::string(to_short_string(l)); }

void write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingSourceFile, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(MutationOperator op) { return kOperatorNames[static_cast<std::size_t>(op)]; }

std::optional<MutationOperator> parse_operator(std::string_view name) {
  for (std::size_t i = 0; i < kOperatorNames.size(); ++i) {
    if (kOperatorNames[i] == name) return kAllOperators[i];
  }
  return std::nullopt;
}

NormalizationLevel clone_type(MutationOperator op) {
  const auto i = static_cast<int>(op);
  return static_cast<NormalizationLevel>(i / 3 + 1);
}

CodeFragment mutate_fragment(const CodeFragment& fragment, MutationOperator op, std::uint64_t seed) {
  const Tokens toks = tokenize(fragment).tokens;
  Rng rng(seed);
  auto text = apply(toks, op, rng);
  if (!text || *text == fragment.source_text) no_site(op);
  CodeFragment out = fragment;
  out.source_text = std::move(*text);
  out.file_path.clear();
  out.start_line = 1;
  out.end_line = static_cast<int>(std::max<std::size_t>(1, count_lines(out.source_text)));
  return out;
}

std::size_t BenchmarkManifest::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [&](const BenchmarkEntry& e) { return e.label == label; }));
}

std::size_t BenchmarkManifest::count_operation(std::string_view operation) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [&](const BenchmarkEntry& e) { return e.operation == operation; }));
}

std::string fragment_origin(const CodeFragment& f) {
  return f.file_path + ":" + std::to_string(f.start_line) + "-" + std::to_string(f.end_line);
}

Benchmark generate_benchmark(const std::vector<CodeFragment>& corpus, const BenchmarkConfig& cfg) {
  std::map<std::string, std::vector<std::size_t>> by_file;
  for (std::size_t i = 0; i < corpus.size(); ++i) by_file[corpus[i].file_path].push_back(i);
  if (corpus.size() < 2 || (cfg.false_count > 0 && by_file.size() < 2)) {
    throw Error(ErrorCode::kCorpusTooSmall, "corpus needs at least two fragments from two different files");
  }
  const std::vector<double> weights(cfg.operator_weights.begin(), cfg.operator_weights.end());
  if (cfg.true_count > 0 && std::none_of(weights.begin(), weights.end(), [](double w) { return w > 0; })) {
    throw Error(ErrorCode::kInvalidArgument, "at least one operator weight must be positive");
  }

  const std::size_t total = cfg.true_count + cfg.false_count;
  std::vector<ClonePair> pairs(total);
  std::vector<BenchmarkEntry> entries(total);
  std::vector<std::exception_ptr> errors(total);

  auto make_id = [](char prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%cp%05zu", prefix, n);
    return std::string(buf);
  };

  auto build = [&](std::size_t idx) {
    const std::uint64_t pair_seed = detail::splitmix64(cfg.seed ^ static_cast<std::uint64_t>(idx));
    Rng rng(pair_seed);
    BenchmarkEntry& e = entries[idx];
    ClonePair& p = pairs[idx];
    e.seed = pair_seed;
    if (idx < cfg.true_count) {
      e.id = make_id('t', idx + 1);
      for (int attempt = 0;; ++attempt) {
        if (attempt >= cfg.max_rejections) {
          throw Error(ErrorCode::kExhaustedResampling, "no mutable fragment found for " + e.id);
        }
        const CodeFragment& original = corpus[detail::uniform_index(rng, corpus.size())];
        const MutationOperator op = kAllOperators[detail::weighted_index(rng, weights)];
        try {
          p.fragment2 = mutate_fragment(original, op, rng());
        } catch (const Error& err) {
          if (err.code() == ErrorCode::kNoMutableSite) continue;
          throw;
        }
        p.fragment1 = original;
        e.operation = std::string(to_string(op));
        e.clone_type = std::string(to_string(clone_type(op)));
        e.source_a = fragment_origin(original);
        e.source_b = "mutant of " + e.source_a;
        break;
      }
      p.label = Label::kTruePositive;
    } else {
      e.id = make_id('f', idx - cfg.true_count + 1);
      for (int rejected = 0;; ++rejected) {
        if (rejected >= cfg.max_rejections) {
          throw Error(ErrorCode::kExhaustedResampling, "no dissimilar cross-file pair found for " + e.id);
        }
        const CodeFragment& a = corpus[detail::uniform_index(rng, corpus.size())];
        const CodeFragment& b = corpus[detail::uniform_index(rng, corpus.size())];
        if (a.file_path == b.file_path) continue;
        if (line_similarity_t1(a, b) > cfg.negative_max_similarity) continue;
        p.fragment1 = a;
        p.fragment2 = b;
        break;
      }
      e.operation = "negative";
      e.clone_type = "none";
      e.source_a = fragment_origin(p.fragment1);
      e.source_b = fragment_origin(p.fragment2);
      p.label = Label::kFalsePositive;
    }
    e.label = p.label;
    p.id = e.id;
    p.detector = "mutation-bench";
    p.labeler = "mutation-bench";
  };

  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, total)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        build(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  Benchmark bench;
  bench.pairs = std::move(pairs);
  bench.manifest.seed = cfg.seed;
  bench.manifest.entries = std::move(entries);
  for (const auto& f : corpus) bench.manifest.corpus_ids.push_back(fragment_origin(f));
  return bench;
}

void write_benchmark(const Benchmark& bench, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "pairs", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + (dir / "pairs").string() + ": " + ec.message());
  std::ostringstream manifest, sources;
  csv::write_row(manifest, {"id", "operator", "clone_type", "label", "seed"});
  csv::write_row(sources, {"id", "source_a", "source_b"});
  for (std::size_t i = 0; i < bench.pairs.size(); ++i) {
    const auto& p = bench.pairs[i];
    const auto& e = bench.manifest.entries[i];
    const fs::path pdir = dir / "pairs" / p.id;
    fs::create_directories(pdir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + pdir.string());
    write_file(pdir / "a.java", p.fragment1.source_text);
    write_file(pdir / "b.java", p.fragment2.source_text);
    csv::write_row(manifest, {e.id, e.operation, e.clone_type, label_text(e.label), std::to_string(e.seed)});
    csv::write_row(sources, {e.id, e.source_a, e.source_b});
  }
  write_file(dir / "manifest.csv", manifest.str());
  write_file(dir / "sources.csv", sources.str());
}

Benchmark read_benchmark(const fs::path& dir) {
  const auto rows = csv::read_string(read_file(dir / "manifest.csv"));
  if (rows.empty() || rows.front() != csv::Row{"id", "operator", "clone_type", "label", "seed"}) {
    throw Error(ErrorCode::kMalformedDocument, "manifest.csv header must be id,operator,clone_type,label,seed");
  }
  std::map<std::string, std::pair<std::string, std::string>> origins;
  if (fs::exists(dir / "sources.csv")) {
    for (const auto& r : csv::read_string(read_file(dir / "sources.csv"))) {
      if (r.size() == 3 && r[0] != "id") origins[r[0]] = {r[1], r[2]};
    }
  }
  Benchmark bench;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 5) throw Error(ErrorCode::kMalformedRow, "manifest row " + std::to_string(i) + " has wrong width");
    BenchmarkEntry e;
    e.id = r[0];
    e.operation = r[1];
    e.clone_type = r[2];
    const auto label = parse_label(r[3]);
    if (!label) throw Error(ErrorCode::kMalformedRow, "bad label '" + r[3] + "'");
    e.label = *label;
    e.seed = static_cast<std::uint64_t>(std::stoull(r[4]));
    if (const auto it = origins.find(e.id); it != origins.end()) {
      e.source_a = it->second.first;
      e.source_b = it->second.second;
    }
    const fs::path pdir = dir / "pairs" / e.id;
    ClonePair p;
    p.id = e.id;
    p.fragment1 = CodeFragment::from_text(read_file(pdir / "a.java"));
    p.fragment2 = CodeFragment::from_text(read_file(pdir / "b.java"));
    p.fragment1.file_path = (pdir / "a.java").string();
    p.fragment2.file_path = (pdir / "b.java").string();
    p.detector = "mutation-bench";
    p.label = e.label;
    if (is_binary(p.label)) p.labeler = "mutation-bench";
    bench.pairs.push_back(std::move(p));
    bench.manifest.entries.push_back(std::move(e));
  }
  return bench;
}

}  // namespace cloneval
