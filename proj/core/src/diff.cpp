#include "cloneval/diff.hpp"

#include <algorithm>

#include "cloneval/error.hpp"

namespace cloneval {
namespace detail {

std::string format_range(std::size_t first, std::size_t last) {
  if (first == last) return std::to_string(first);
  return std::to_string(first) + "," + std::to_string(last);
}

}  // namespace detail

namespace {

struct TokenKey {
  TokenKind kind = TokenKind::kWhitespace;
  std::string text;
  bool operator==(const TokenKey&) const = default;
};

std::vector<TokenKey> token_keys(const NormalizedFragment& f) {
  std::vector<TokenKey> keys;
  keys.reserve(f.tokens.size());
  for (const Token& t : f.tokens) {
    if (t.is_code()) keys.push_back({t.kind, t.text});
  }
  return keys;
}

template <typename T>
SimilarityScore score(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kEmptyFragment, "cannot compute similarity of an empty fragment");
  }
  const auto script = edit_script(a, b);
  SimilarityScore s;
  s.deletions = script.deletion_count();
  s.insertions = script.insertion_count();
  s.length1 = a.size();
  s.length2 = b.size();
  s.value = similarity_from_counts(s.deletions, s.insertions, s.length1, s.length2);
  return s;
}

}  // namespace

std::string_view to_string(Granularity g) { return g == Granularity::kLine ? "line" : "token"; }

std::string format_diff(const std::vector<std::string>& a, const EditScript<std::string>& script) {
  std::string out;
  std::size_t op = 0;
  for (const std::string& header : script.hunks) {
    out += header;
    out += '\n';
    const bool change = header.find('c') != std::string::npos;
    bool separated = false;
    // Consume this hunk's ops: deletions first, then insertions.
    const std::size_t start = op;
    std::size_t a_next = script.ops[start].a_index;
    std::size_t b_next = script.ops[start].b_index;
    while (op < script.ops.size() && script.ops[op].a_index == a_next && script.ops[op].b_index == b_next) {
      const auto& e = script.ops[op];
      if (e.kind == EditOp<std::string>::Kind::kDelete) {
        out += "< " + a[e.a_index] + "\n";
        ++a_next;
      } else {
        if (change && !separated) {
          out += "---\n";
          separated = true;
        }
        out += "> " + e.value + "\n";
        ++b_next;
      }
      ++op;
    }
  }
  return out;
}

double similarity_from_counts(std::size_t deletions, std::size_t insertions, std::size_t len1,
                              std::size_t len2) {
  if (len1 == 0 || len2 == 0) {
    throw Error(ErrorCode::kEmptyFragment, "cannot compute similarity of an empty fragment");
  }
  const double d = static_cast<double>(deletions) / static_cast<double>(len1);
  const double i = static_cast<double>(insertions) / static_cast<double>(len2);
  return std::clamp(1.0 - std::max(d, i), 0.0, 1.0);
}

SimilarityScore fragment_similarity(const NormalizedFragment& f1, const NormalizedFragment& f2,
                                    Granularity granularity) {
  SimilarityScore s = granularity == Granularity::kLine ? score(f1.lines, f2.lines)
                                                        : score(token_keys(f1), token_keys(f2));
  s.granularity = granularity;
  s.level = f1.level;
  return s;
}

}  // namespace cloneval
