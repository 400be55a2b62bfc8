#include <random>
#include <string>

#include "cloneval/error.hpp"
#include "cloneval/lexer.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cloneval;

namespace {

std::string concat(const std::vector<Token>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += t.text;
  return s;
}

std::vector<Token> code_tokens(std::string_view src) {
  std::vector<Token> out;
  for (auto& t : tokenize_java(src).tokens) {
    if (!t.is_layout()) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_SUITE("lexer") {
  TEST_CASE("simple declaration") {
    const auto toks = code_tokens("int x = 0;");
    REQUIRE(toks.size() == 5);
    CHECK(toks[0].kind == TokenKind::kKeyword);
    CHECK(toks[0].text == "int");
    CHECK(toks[1].kind == TokenKind::kIdentifier);
    CHECK(toks[2].kind == TokenKind::kOperator);
    CHECK(toks[3].kind == TokenKind::kNumberLiteral);
    CHECK(toks[4].kind == TokenKind::kPunctuation);
    const auto all = tokenize_java("int x = 0;").tokens;
    CHECK(all.size() == 8);
    CHECK(all[1].kind == TokenKind::kWhitespace);
  }

  TEST_CASE("empty input") { CHECK(tokenize_java("").tokens.empty()); }

  TEST_CASE("block comment then identifier") {
    const auto toks = tokenize_java("/*c*/x").tokens;
    REQUIRE(toks.size() == 2);
    CHECK(toks[0].kind == TokenKind::kComment);
    CHECK(toks[0].text == "/*c*/");
    CHECK(toks[1].kind == TokenKind::kIdentifier);
  }

  TEST_CASE("line comments stop at the newline") {
    const auto toks = tokenize_java("a // note\nb").tokens;
    REQUIRE(toks.size() == 5);
    CHECK(toks[2].kind == TokenKind::kComment);
    CHECK(toks[2].text == "// note");
    CHECK(toks[3].kind == TokenKind::kNewline);
    CHECK(toks[4].line == 2);
  }

  TEST_CASE("literals") {
    const auto toks = code_tokens(R"(s = "a\"b" + 'c' + '\n' + 0x1F + 1.5e3 + 10L;)");
    CHECK(toks[2].kind == TokenKind::kStringLiteral);
    CHECK(toks[2].text == R"("a\"b")");
    CHECK(toks[4].kind == TokenKind::kCharLiteral);
    CHECK(toks[6].kind == TokenKind::kCharLiteral);
    CHECK(toks[8].text == "0x1F");
    CHECK(toks[10].text == "1.5e3");
    CHECK(toks[12].text == "10L");
    CHECK(toks[12].kind == TokenKind::kNumberLiteral);
  }

  TEST_CASE("multi-character operators are single tokens") {
    const auto toks = code_tokens("a >>>= b && c != d ++ -> e :: f");
    std::vector<std::string> texts;
    for (const auto& t : toks) texts.push_back(t.text);
    CHECK(texts == std::vector<std::string>{"a", ">>>=", "b", "&&", "c", "!=", "d", "++", "->", "e", "::", "f"});
  }

  TEST_CASE("keywords are not identifiers") {
    CHECK(is_java_keyword("null"));
    CHECK(is_java_keyword("while"));
    CHECK_FALSE(is_java_keyword("String"));
    CHECK(code_tokens("null")[0].kind == TokenKind::kKeyword);
    CHECK(code_tokens("String")[0].kind == TokenKind::kIdentifier);
  }

  TEST_CASE("unterminated constructs degrade without losing text") {
    for (const std::string src : {"x = \"open", "c = 'a", "/* never closed\nx"}) {
      const auto r = tokenize_java(src);
      CHECK_FALSE(r.ok());
      CHECK(concat(r.tokens) == src);
    }
  }

  TEST_CASE("line numbers follow newlines") {
    const auto toks = code_tokens("a\r\nb\rc\n/* x\ny */ d");
    REQUIRE(toks.size() == 5);
    CHECK(toks[0].line == 1);
    CHECK(toks[1].line == 2);
    CHECK(toks[2].line == 3);
    CHECK(toks[3].line == 4);
    CHECK(toks[4].line == 5);
  }

  TEST_CASE("unsupported language") {
    CodeFragment f = CodeFragment::from_text("x = 1", "Python");
    CHECK_THROWS_AS(tokenize(f), Error);
    CHECK(is_supported_language("Java"));
    CHECK_FALSE(is_supported_language("C"));
  }

  TEST_CASE("round trip over random programs and random bytes") {
    std::mt19937_64 rng(11);
    testsupport::Style style{true, true, true, true};
    for (int i = 0; i < 200; ++i) {
      const auto src = testsupport::render(testsupport::random_program(rng), style, rng);
      const auto r = tokenize_java(src);
      CHECK(r.ok());
      CHECK(concat(r.tokens) == src);
    }
    const std::string alphabet = "ab1 \t\n\"'/*{}();.=+-\\x";
    for (int i = 0; i < 500; ++i) {
      std::string src;
      const auto len = rng() % 40;
      for (std::size_t k = 0; k < len; ++k) src += alphabet[rng() % alphabet.size()];
      CHECK(concat(tokenize_java(src).tokens) == src);
    }
  }
}
