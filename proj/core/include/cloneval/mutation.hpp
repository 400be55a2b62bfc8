#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/clone_pair.hpp"
#include "cloneval/normalize.hpp"

namespace cloneval {

enum class MutationOperator {
  kWsAddRemove,
  kCommentChange,
  kNewlineAddRemove,
  kRenameSystematic,
  kRenameArbitrary,
  kLiteralValueChange,
  kIntralineInsertDelete,
  kLineInsertDelete,
  kLineModify,
};

inline constexpr std::array<MutationOperator, 9> kAllOperators = {
    MutationOperator::kWsAddRemove,          MutationOperator::kCommentChange,
    MutationOperator::kNewlineAddRemove,     MutationOperator::kRenameSystematic,
    MutationOperator::kRenameArbitrary,      MutationOperator::kLiteralValueChange,
    MutationOperator::kIntralineInsertDelete, MutationOperator::kLineInsertDelete,
    MutationOperator::kLineModify,
};

// "WS_ADD_REMOVE", "COMMENT_CHANGE", ...
std::string_view to_string(MutationOperator op);
std::optional<MutationOperator> parse_operator(std::string_view name);

// Clone type produced: the first three operators give Type1 clones, the next
// three Type2 and the last three Type3.
NormalizationLevel clone_type(MutationOperator op);

// Applies one edit of the given kind at a seeded random site. The result
// differs from the input and still tokenizes. Throws Error(kNoMutableSite)
// when the fragment offers no site for the operator.
CodeFragment mutate_fragment(const CodeFragment& fragment, MutationOperator op, std::uint64_t seed);

struct BenchmarkConfig {
  std::size_t true_count = 500;
  std::size_t false_count = 500;
  // Relative operator frequencies, indexed like kAllOperators.
  std::array<double, 9> operator_weights{1, 1, 1, 1, 1, 1, 1, 1, 1};
  std::uint64_t seed = 7;
  // Negative pairs above this Type1 line similarity are redrawn.
  double negative_max_similarity = 0.5;
  int max_rejections = 100;
  unsigned threads = 0;
};

struct BenchmarkEntry {
  std::string id;
  std::string operation;  // operator name or "negative"
  std::string clone_type;  // "Type1".."Type3", or "none" for negatives
  Label label = Label::kUnlabeled;
  std::uint64_t seed = 0;
  std::string source_a;  // corpus provenance, file:start-end
  std::string source_b;
};

struct BenchmarkManifest {
  std::uint64_t seed = 0;
  std::vector<std::string> corpus_ids;
  std::vector<BenchmarkEntry> entries;

  std::size_t count(Label label) const;
  std::size_t count_operation(std::string_view operation) const;
};

struct Benchmark {
  std::vector<ClonePair> pairs;
  BenchmarkManifest manifest;
};

// Positives pair a corpus fragment with a single-operator mutant; negatives
// pair fragments from two different files. Fully determined by the corpus
// and the config. Throws Error(kCorpusTooSmall) and
// Error(kExhaustedResampling).
Benchmark generate_benchmark(const std::vector<CodeFragment>& corpus, const BenchmarkConfig& cfg);

// Writes pairs/<id>/a.java, pairs/<id>/b.java, manifest.csv
// (id,operator,clone_type,label,seed) and sources.csv.
void write_benchmark(const Benchmark& bench, const std::filesystem::path& dir);
// Reads a directory written by write_benchmark.
Benchmark read_benchmark(const std::filesystem::path& dir);

// Stable provenance string for a fragment: path:start-end.
std::string fragment_origin(const CodeFragment& fragment);

}  // namespace cloneval
