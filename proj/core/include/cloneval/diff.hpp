#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/normalize.hpp"

namespace cloneval {

// One step of an insert/delete edit script. Deletions reference an element of
// the first sequence; insertions carry the inserted element from the second.
template <typename T>
struct EditOp {
  enum class Kind { kDelete, kInsert };
  Kind kind;
  std::size_t a_index;  // delete: element removed; insert: elements of A consumed so far
  std::size_t b_index;  // insert: element inserted; delete: elements of B produced so far
  T value{};            // inserted element (insert only)
};

template <typename T>
struct EditScript {
  std::vector<EditOp<T>> ops;  // in sequence order, deletions before insertions per hunk
  std::vector<std::string> hunks;  // classic diff headers, e.g. "4c4,5", "6d6", "7a8"
  std::size_t lcs_length = 0;

  std::size_t deletion_count() const {
    std::size_t n = 0;
    for (const auto& op : ops) n += op.kind == EditOp<T>::Kind::kDelete;
    return n;
  }
  std::size_t insertion_count() const { return ops.size() - deletion_count(); }
};

namespace detail {

std::string format_range(std::size_t first, std::size_t last);

// Hunk headers from a sorted op list, using 1-based positions like diff(1).
template <typename T>
std::vector<std::string> hunk_headers(const std::vector<EditOp<T>>& ops) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < ops.size()) {
    // A hunk is a maximal run of ops with no matched element in between.
    const std::size_t a_anchor = ops[i].a_index;
    const std::size_t b_anchor = ops[i].b_index;
    std::size_t a_next = a_anchor, b_next = b_anchor;
    std::size_t dels = 0, ins = 0;
    std::size_t j = i;
    while (j < ops.size() && ops[j].a_index == a_next && ops[j].b_index == b_next) {
      if (ops[j].kind == EditOp<T>::Kind::kDelete) {
        ++dels;
        ++a_next;
      } else {
        ++ins;
        ++b_next;
      }
      ++j;
    }
    std::string header;
    if (dels > 0 && ins > 0) {
      header = format_range(a_anchor + 1, a_next) + "c" + format_range(b_anchor + 1, b_next);
    } else if (dels > 0) {
      header = format_range(a_anchor + 1, a_next) + "d" + std::to_string(b_anchor);
    } else {
      header = std::to_string(a_anchor) + "a" + format_range(b_anchor + 1, b_next);
    }
    out.push_back(std::move(header));
    i = j;
  }
  return out;
}

}  // namespace detail

// Minimal (LCS-optimal) insert/delete script turning `a` into `b`. Ties are
// broken towards deleting from `a` first, which yields diff(1)-style "c" hunks.
template <typename T>
EditScript<T> edit_script(std::span<const T> a, std::span<const T> b) {
  const std::size_t n = a.size(), m = b.size();
  // suffix[i][j] = LCS length of a[i..] and b[j..]
  std::vector<std::uint32_t> suffix((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return suffix[i * (m + 1) + j]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1 : std::max(at(i + 1, j), at(i, j + 1));
    }
  }

  EditScript<T> script;
  script.lcs_length = n + m == 0 ? 0 : at(0, 0);
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      ++i;
      ++j;
    } else if (j == m || (i < n && at(i + 1, j) >= at(i, j + 1))) {
      script.ops.push_back({EditOp<T>::Kind::kDelete, i, j, T{}});
      ++i;
    } else {
      script.ops.push_back({EditOp<T>::Kind::kInsert, i, j, b[j]});
      ++j;
    }
  }
  script.hunks = detail::hunk_headers(script.ops);
  return script;
}

template <typename T>
EditScript<T> edit_script(const std::vector<T>& a, const std::vector<T>& b) {
  return edit_script(std::span<const T>(a), std::span<const T>(b));
}

// Replays a script on `a`. Replaying edit_script(a, b) on a yields b.
template <typename T>
std::vector<T> apply_edit_script(std::span<const T> a, const EditScript<T>& script) {
  std::vector<T> out;
  std::size_t next = 0;
  for (const auto& op : script.ops) {
    while (next < op.a_index && next < a.size()) out.push_back(a[next++]);
    if (op.kind == EditOp<T>::Kind::kDelete) {
      ++next;
    } else {
      out.push_back(op.value);
    }
  }
  while (next < a.size()) out.push_back(a[next++]);
  return out;
}

// Renders a script in the classic "<" / "---" / ">" notation.
std::string format_diff(const std::vector<std::string>& a, const EditScript<std::string>& script);

enum class Granularity { kLine, kToken };

std::string_view to_string(Granularity g);

struct SimilarityScore {
  double value = 0.0;
  Granularity granularity = Granularity::kLine;
  NormalizationLevel level = NormalizationLevel::kType1;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t length1 = 0;
  std::size_t length2 = 0;
};

// 1 - max(deletions / len1, insertions / len2).
double similarity_from_counts(std::size_t deletions, std::size_t insertions, std::size_t len1,
                              std::size_t len2);

// Lines are compared as exact strings; tokens as (kind, text) pairs. Throws
// Error(kEmptyFragment) when either side has no units at that granularity.
SimilarityScore fragment_similarity(const NormalizedFragment& f1, const NormalizedFragment& f2,
                                    Granularity granularity);

}  // namespace cloneval
