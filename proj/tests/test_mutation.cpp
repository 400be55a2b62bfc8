#include <functional>
#include <map>
#include <set>

#include "cloneval/corpus.hpp"
#include "cloneval/error.hpp"
#include "cloneval/features.hpp"
#include "cloneval/mutation.hpp"
#include "cloneval/normalize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cloneval;

namespace {

const std::vector<CodeFragment>& corpus() {
  static const auto c = load_corpus(testsupport::corpus_dir());
  return c;
}

std::vector<Token> code_tokens(const CodeFragment& f) {
  std::vector<Token> out;
  for (auto& t : tokenize(f).tokens) {
    if (t.is_code()) out.push_back(t);
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

BenchmarkConfig small_config() {
  BenchmarkConfig cfg;
  cfg.true_count = 60;
  cfg.false_count = 40;
  cfg.seed = 3;
  return cfg;
}

}  // namespace

TEST_SUITE("mutation") {
  TEST_CASE("operator table") {
    CHECK(kAllOperators.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(static_cast<int>(clone_type(kAllOperators[i])) == static_cast<int>(i / 3) + 1);
      CHECK(parse_operator(to_string(kAllOperators[i])) == kAllOperators[i]);
    }
    CHECK(to_string(MutationOperator::kRenameSystematic) == "RENAME_SYSTEMATIC");
    CHECK_FALSE(parse_operator("SWAP").has_value());
  }

  TEST_CASE("every mutant keeps the similarities of its clone type") {
    REQUIRE(corpus().size() >= 20);
    int produced = 0;
    for (std::size_t i = 0; i < corpus().size(); ++i) {
      const auto& original = corpus()[i];
      for (const auto op : kAllOperators) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          CodeFragment mutant;
          try {
            mutant = mutate_fragment(original, op, seed * 7919 + i);
          } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kNoMutableSite);
            continue;
          }
          ++produced;
          INFO(to_string(op), "\n", original.source_text, "\n----\n", mutant.source_text);
          CHECK(mutant.source_text != original.source_text);
          CHECK(tokenize(mutant).ok());
          ClonePair p;
          p.fragment1 = original;
          p.fragment2 = mutant;
          const auto v = extract_features(p);
          if (clone_type(op) == NormalizationLevel::kType1) {
            for (std::size_t k = 0; k < 6; ++k) CHECK(v[k] == 1.0);
          } else if (clone_type(op) == NormalizationLevel::kType2) {
            CHECK(v[kLineSimT2] == 1.0);
            CHECK(v[kTokSimT2] == 1.0);
          }
        }
      }
    }
    CHECK(produced > static_cast<int>(corpus().size()) * 20);
  }

  TEST_CASE("systematic renaming changes every occurrence of one name") {
    for (std::size_t i = 0; i < 30; ++i) {
      const auto& original = corpus()[i];
      const auto mutant = mutate_fragment(original, MutationOperator::kRenameSystematic, i);
      const auto a = code_tokens(original);
      const auto b = code_tokens(mutant);
      REQUIRE(a.size() == b.size());
      std::map<std::string, std::set<std::string>> mapping;
      std::set<std::string> changed;
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].kind == b[k].kind);
        if (a[k].text != b[k].text) {
          CHECK(a[k].kind == TokenKind::kIdentifier);
          changed.insert(a[k].text);
        }
        mapping[a[k].text].insert(b[k].text);
      }
      REQUIRE(changed.size() == 1);
      CHECK(mapping[*changed.begin()].size() == 1);
    }
  }

  TEST_CASE("arbitrary renaming changes one occurrence") {
    for (std::size_t i = 0; i < 30; ++i) {
      const auto a = code_tokens(corpus()[i]);
      const auto b = code_tokens(mutate_fragment(corpus()[i], MutationOperator::kRenameArbitrary, i));
      REQUIRE(a.size() == b.size());
      int diffs = 0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].text != b[k].text) {
          ++diffs;
          CHECK(a[k].kind == TokenKind::kIdentifier);
        }
      }
      CHECK(diffs == 1);
    }
  }

  TEST_CASE("line insertion and deletion follow the single-edit formula") {
    int inserts = 0, deletes = 0;
    for (std::size_t i = 0; i < corpus().size(); ++i) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto& original = corpus()[i];
        const auto mutant = mutate_fragment(original, MutationOperator::kLineInsertDelete, seed + 100 * i);
        const auto n1 = normalize(original, NormalizationLevel::kType1).lines.size();
        const auto n2 = normalize(mutant, NormalizationLevel::kType1).lines.size();
        ClonePair p;
        p.fragment1 = original;
        p.fragment2 = mutant;
        const double sim = extract_features(p)[kLineSimT1];
        if (n2 == n1 + 1) {
          ++inserts;
          CHECK(sim == doctest::Approx(1.0 - 1.0 / static_cast<double>(n1 + 1)).epsilon(1e-12));
        } else {
          REQUIRE(n2 + 1 == n1);
          ++deletes;
          CHECK(sim == doctest::Approx(1.0 - 1.0 / static_cast<double>(n1)).epsilon(1e-12));
        }
      }
    }
    CHECK(inserts > 0);
    CHECK(deletes > 0);
  }

  TEST_CASE("no mutable site") {
    const auto f = CodeFragment::from_text("return;\n");
    CHECK(code_of([&] { mutate_fragment(f, MutationOperator::kLiteralValueChange, 1); }) ==
          ErrorCode::kNoMutableSite);
    CHECK(code_of([&] { mutate_fragment(f, MutationOperator::kRenameSystematic, 1); }) == ErrorCode::kNoMutableSite);
  }

  TEST_CASE("benchmark accounting") {
    BenchmarkConfig none;
    none.true_count = 0;
    none.false_count = 0;
    const auto empty = generate_benchmark(corpus(), none);
    CHECK(empty.pairs.empty());
    CHECK(empty.manifest.count(Label::kTruePositive) == 0);

    BenchmarkConfig nine;
    nine.true_count = 9;
    nine.false_count = 0;
    const auto b = generate_benchmark(corpus(), nine);
    std::size_t sum = 0;
    for (const auto op : kAllOperators) sum += b.manifest.count_operation(to_string(op));
    CHECK(sum == 9);
    CHECK(b.manifest.entries.front().id == "tp00001");
  }

  TEST_CASE("benchmark pairs") {
    const auto b = generate_benchmark(corpus(), small_config());
    REQUIRE(b.pairs.size() == 100);
    CHECK(b.manifest.count(Label::kTruePositive) == 60);
    CHECK(b.manifest.count(Label::kFalsePositive) == 40);
    CHECK(b.manifest.count_operation("negative") == 40);
    for (std::size_t i = 0; i < b.pairs.size(); ++i) {
      const auto& p = b.pairs[i];
      const auto& e = b.manifest.entries[i];
      CHECK(p.id == e.id);
      CHECK(p.label == e.label);
      if (p.label == Label::kFalsePositive) {
        CHECK(p.fragment1.file_path != p.fragment2.file_path);
        CHECK(extract_features(p)[kLineSimT1] <= 0.5);
        CHECK(e.clone_type == "none");
      }
    }
  }

  TEST_CASE("benchmark is reproducible and survives a round trip") {
    const auto a = generate_benchmark(corpus(), small_config());
    auto cfg = small_config();
    cfg.threads = 1;
    const auto b = generate_benchmark(corpus(), cfg);
    CHECK(a.pairs == b.pairs);
    testsupport::TempDir d1, d2;
    write_benchmark(a, d1.path());
    write_benchmark(b, d2.path());
    CHECK(testsupport::read_file(d1 / "manifest.csv") == testsupport::read_file(d2 / "manifest.csv"));
    CHECK(testsupport::read_file(d1 / "manifest.csv").rfind("id,operator,clone_type,label,seed\n", 0) == 0);
    const auto back = read_benchmark(d1.path());
    REQUIRE(back.pairs.size() == a.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      CHECK(back.pairs[i].id == a.pairs[i].id);
      CHECK(back.pairs[i].label == a.pairs[i].label);
      CHECK(back.pairs[i].fragment1.source_text == a.pairs[i].fragment1.source_text);
      CHECK(back.pairs[i].fragment2.source_text == a.pairs[i].fragment2.source_text);
      CHECK(back.manifest.entries[i].operation == a.manifest.entries[i].operation);
      CHECK(back.manifest.entries[i].seed == a.manifest.entries[i].seed);
    }
    auto other = small_config();
    other.seed = 4;
    CHECK_FALSE(generate_benchmark(corpus(), other).pairs == a.pairs);
  }

  TEST_CASE("corpus errors") {
    CHECK(code_of([] { generate_benchmark({corpus()[0]}, small_config()); }) == ErrorCode::kCorpusTooSmall);
    auto a = corpus()[0];
    auto b = a;
    b.file_path = "Other.java";
    CHECK(code_of([&] { generate_benchmark({a, b}, small_config()); }) == ErrorCode::kExhaustedResampling);
  }
}
