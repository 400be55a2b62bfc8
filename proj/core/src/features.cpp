#include "cloneval/features.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include "cloneval/csv.hpp"
#include "cloneval/diff.hpp"
#include "cloneval/error.hpp"
#include "java_syntax.hpp"

namespace cloneval {
namespace {

std::vector<Token> code_tokens(const CodeFragment& fragment) {
  std::vector<Token> out;
  for (Token& t : tokenize(fragment).tokens) {
    if (t.is_code()) out.push_back(std::move(t));
  }
  return out;
}

double similarity_or_zero(const NormalizedFragment& a, const NormalizedFragment& b, Granularity g) {
  try {
    return fragment_similarity(a, b, g).value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyFragment) throw;
    return 0.0;
  }
}

void append_feature(std::vector<double>& values, double v) { values.push_back(v); }

}  // namespace

std::vector<std::string> feature_names(std::size_t dims) {
  std::vector<std::string> names(kFeatureNames.begin(), kFeatureNames.end());
  if (dims == kExtendedFeatureCount) names.insert(names.end(), kExtraFeatureNames.begin(), kExtraFeatureNames.end());
  if (names.size() != dims) {
    throw Error(ErrorCode::kDimensionMismatch, "unsupported feature width " + std::to_string(dims));
  }
  return names;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string feature_fingerprint(std::size_t dims) {
  std::string joined;
  for (const auto& n : feature_names(dims)) joined += n + ";";
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
  return buf;
}

int count_unmatched_braces(const CodeFragment& fragment) {
  int open = 0, stray_close = 0;
  for (const Token& t : code_tokens(fragment)) {
    if (t.is("{")) {
      ++open;
    } else if (t.is("}")) {
      if (open > 0) {
        --open;
      } else {
        ++stray_close;
      }
    }
  }
  return open + stray_close;
}

int count_unmatched_braces(const CodeFragment& f1, const CodeFragment& f2) {
  return count_unmatched_braces(f1) + count_unmatched_braces(f2);
}

int functions_intersected(const CodeFragment& fragment) {
  const std::vector<Token> toks = code_tokens(fragment);
  std::vector<bool> open_is_method;
  bool left_enclosing_body = false;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].is("{")) {
      open_is_method.push_back(detail::opens_method_body(toks, i));
    } else if (toks[i].is("}")) {
      if (open_is_method.empty()) {
        left_enclosing_body = true;
      } else {
        open_is_method.pop_back();
      }
    }
  }
  const auto open_methods = std::count(open_is_method.begin(), open_is_method.end(), true);
  return static_cast<int>(open_methods) + (left_enclosing_body ? 1 : 0);
}

int functions_intersected(const ClonePair& pair) {
  return functions_intersected(pair.fragment1) + functions_intersected(pair.fragment2);
}

FeatureVector extract_features(const ClonePair& pair, bool include_extras) {
  if (pair.fragment1.source_text.empty() || pair.fragment2.source_text.empty()) {
    throw Error(ErrorCode::kEmptyFragment, "clone pair '" + pair.id + "' has an empty fragment");
  }
  const NormalizedLevels a = normalize_all(pair.fragment1);
  const NormalizedLevels b = normalize_all(pair.fragment2);

  FeatureVector fv;
  fv.values.reserve(include_extras ? kExtendedFeatureCount : kBaseFeatureCount);
  auto& v = fv.values;
  append_feature(v, similarity_or_zero(a.type1, b.type1, Granularity::kLine));
  append_feature(v, similarity_or_zero(a.type2, b.type2, Granularity::kLine));
  append_feature(v, similarity_or_zero(a.type3, b.type3, Granularity::kLine));
  append_feature(v, similarity_or_zero(a.type2, b.type2, Granularity::kToken));
  append_feature(v, similarity_or_zero(a.type1, b.type1, Granularity::kToken));
  append_feature(v, similarity_or_zero(a.type3, b.type3, Granularity::kToken));
  append_feature(v, functions_intersected(pair));
  append_feature(v, count_unmatched_braces(pair.fragment1, pair.fragment2));
  if (include_extras) {
    const double alpha = static_cast<double>(count_lines(pair.fragment1.source_text));
    const double beta = static_cast<double>(count_lines(pair.fragment2.source_text));
    append_feature(v, (alpha + beta) / 2.0);
    append_feature(v, std::abs(alpha - beta));
  }
  return fv;
}

std::vector<FeatureVector> extract_features_batch(const std::vector<ClonePair>& pairs,
                                                  bool include_extras, unsigned threads) {
  std::vector<FeatureVector> out(pairs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        out[i] = extract_features(pairs[i], include_extras);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  const std::size_t dims = table.rows.empty() ? kBaseFeatureCount : table.rows.front().size();
  csv::Row header{"id"};
  for (auto& n : feature_names(dims)) header.push_back(n);
  header.push_back("label");
  csv::write_row(out, header);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != dims) {
      throw Error(ErrorCode::kDimensionMismatch, "feature rows have mixed widths");
    }
    csv::Row row{table.ids[i]};
    for (const double x : table.rows[i].values) row.push_back(csv::format_exact(x));
    row.emplace_back(to_short_string(table.labels[i]));
    csv::write_row(out, row);
  }
}

FeatureTable read_feature_csv(std::istream& in) {
  const auto rows = csv::read(in);
  if (rows.empty()) throw Error(ErrorCode::kMalformedDocument, "feature CSV is empty");
  const auto& header = rows.front();
  if (header.size() < 3 || header.front() != "id" || header.back() != "label") {
    throw Error(ErrorCode::kMalformedDocument, "feature CSV header must be id,<features>,label");
  }
  const std::size_t dims = header.size() - 2;
  const auto names = feature_names(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    if (header[i + 1] != names[i]) {
      throw Error(ErrorCode::kFeatureOrderMismatch,
                  "column " + std::to_string(i + 1) + " is '" + header[i + 1] + "', expected '" + names[i] + "'");
    }
  }
  FeatureTable table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw Error(ErrorCode::kMalformedDocument, "feature CSV row " + std::to_string(r) + " has wrong width");
    }
    FeatureVector fv;
    for (std::size_t i = 0; i < dims; ++i) fv.values.push_back(csv::parse_double(row[i + 1]));
    const auto label = parse_label(row.back());
    if (!label) throw Error(ErrorCode::kMalformedDocument, "bad label '" + row.back() + "'");
    table.ids.push_back(row.front());
    table.rows.push_back(std::move(fv));
    table.labels.push_back(*label);
  }
  return table;
}

std::string_view to_short_string(Label label) {
  switch (label) {
    case Label::kTruePositive: return "TP";
    case Label::kFalsePositive: return "FP";
    case Label::kUnlabeled: break;
  }
  return "UNLABELED";
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kTruePositive: return "TruePositive";
    case Label::kFalsePositive: return "FalsePositive";
    case Label::kUnlabeled: break;
  }
  return "Unlabeled";
}

std::optional<Label> parse_label(std::string_view text) {
  std::string s;
  for (const char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "tp" || s == "truepositive" || s == "true_positive" || s == "true") return Label::kTruePositive;
  if (s == "fp" || s == "falsepositive" || s == "false_positive" || s == "false") return Label::kFalsePositive;
  if (s == "unlabeled" || s == "unlabelled") return Label::kUnlabeled;
  return std::nullopt;
}

}  // namespace cloneval
