#include "cloneval/store.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "cloneval/csv.hpp"
#include "cloneval/error.hpp"
#include "cloneval/features.hpp"
#include "cloneval/lexer.hpp"
#include "cloneval/mutation.hpp"
#include "json.hpp"

namespace cloneval {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const csv::Row kPathHeader = {"file1", "start1", "end1", "file2", "start2", "end2", "detector", "lang"};
const csv::Row kInlineHeader = {"code1", "code2", "detector", "lang"};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fragment_key(const CodeFragment& f) {
  if (!f.file_path.empty()) return f.file_path + ":" + std::to_string(f.start_line) + "-" + std::to_string(f.end_line);
  return "inline:" + hex64(fnv1a64(f.source_text)) + ":" + std::to_string(f.source_text.size());
}

std::string dedup_key(const ClonePair& p) { return fragment_key(p.fragment1) + "|" + fragment_key(p.fragment2); }

json fragment_json(const CodeFragment& f) {
  return json{{"file", f.file_path}, {"start", f.start_line}, {"end", f.end_line}, {"lang", f.language},
              {"code", f.source_text}};
}

CodeFragment fragment_from_json(const json& j) {
  CodeFragment f;
  f.file_path = j.at("file").get<std::string>();
  f.start_line = j.at("start").get<int>();
  f.end_line = j.at("end").get<int>();
  f.language = j.at("lang").get<std::string>();
  f.source_text = j.at("code").get<std::string>();
  return f;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

struct PendingPair {
  ClonePair pair;
  RecordSource source;
};

class SourceFiles {
 public:
  explicit SourceFiles(fs::path base) : base_(std::move(base)) {}

  const std::vector<std::string>& lines(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    fs::path p(name);
    if (p.is_relative() && !base_.empty() && fs::exists(base_ / p)) p = base_ / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::kMissingSourceFile, "cannot read source file " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return cache_.emplace(name, split_lines(ss.str())).first->second;
  }

 private:
  fs::path base_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

long long parse_line_number(const std::string& text) {
  const long long v = csv::parse_int(text);
  if (v < 1) throw Error(ErrorCode::kMalformedRow, "line numbers start at 1");
  return v;
}

}  // namespace

std::string_view to_string(RecordSource source) {
  switch (source) {
    case RecordSource::kDetectorImport: return "detector-import";
    case RecordSource::kMutationBench: return "mutation-bench";
    case RecordSource::kApiFeedback: return "api-feedback";
  }
  return "detector-import";
}

std::optional<RecordSource> parse_record_source(std::string_view text) {
  for (const auto s : {RecordSource::kDetectorImport, RecordSource::kMutationBench, RecordSource::kApiFeedback}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CloneStore::Impl {
  fs::path path;
  Clock clock;
  mutable std::shared_mutex mutex;
  std::map<std::string, StoreRecord> records;
  std::unordered_map<std::string, std::string> by_key;
  std::size_t next_seq = 1;

  mutable std::mutex cache_mutex;
  mutable std::unordered_map<std::uint64_t, FeatureVector> cache;

  void append(const json& event) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::kIo, "cannot append to store " + path.string());
    out << event.dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write to store " + path.string() + " failed");
  }

  std::string fresh_id() {
    for (;;) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "c%06zu", next_seq++);
      if (!records.count(buf)) return buf;
    }
  }

  void apply_pair(StoreRecord rec) {
    by_key.emplace(dedup_key(rec.pair), rec.pair.id);
    const std::string id = rec.pair.id;
    records[id] = std::move(rec);
  }

  void apply_label(const std::string& id, LabelEvent ev) {
    auto it = records.find(id);
    if (it == records.end()) throw Error(ErrorCode::kUnknownPair, "unknown pair '" + id + "'");
    StoreRecord& rec = it->second;
    rec.pair.label = ev.label;
    rec.pair.labeler = ev.labeler;
    rec.pair.labeled_at = ev.timestamp;
    rec.history.push_back(std::move(ev));
  }

  // Caller holds the unique lock.
  std::string insert(ClonePair pair, RecordSource source) {
    if (const auto it = by_key.find(dedup_key(pair)); it != by_key.end()) return it->second;
    if (pair.id.empty() || records.count(pair.id)) pair.id = fresh_id();
    const Label initial = pair.label;
    const std::string initial_labeler = pair.labeler.empty() ? std::string(to_string(source)) : pair.labeler;
    pair.label = Label::kUnlabeled;
    pair.labeler.clear();
    pair.labeled_at.clear();

    StoreRecord rec;
    rec.pair = std::move(pair);
    rec.created_at = clock();
    rec.source = source;
    append(json{{"event", "pair"},
                {"id", rec.pair.id},
                {"source", to_string(source)},
                {"created_at", rec.created_at},
                {"detector", rec.pair.detector},
                {"fragment1", fragment_json(rec.pair.fragment1)},
                {"fragment2", fragment_json(rec.pair.fragment2)}});
    const std::string id = rec.pair.id;
    apply_pair(std::move(rec));
    if (is_binary(initial)) label(id, initial_labeler, initial);
    return id;
  }

  StoreRecord label(const std::string& id, const std::string& labeler, Label value) {
    auto it = records.find(id);
    if (it == records.end()) throw Error(ErrorCode::kUnknownPair, "unknown pair '" + id + "'");
    const auto& history = it->second.history;
    if (!history.empty() && history.back().labeler == labeler && history.back().label == value) return it->second;
    LabelEvent ev{labeler, value, clock()};
    append(json{{"event", "label"},
                {"id", id},
                {"labeler", ev.labeler},
                {"label", to_short_string(ev.label)},
                {"timestamp", ev.timestamp}});
    apply_label(id, std::move(ev));
    return records.at(id);
  }

  void replay() {
    std::ifstream in(path, std::ios::binary);
    if (!in) return;
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) lines.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      json ev;
      try {
        ev = json::parse(lines[i]);
        const std::string kind = ev.at("event").get<std::string>();
        if (kind == "pair") {
          StoreRecord rec;
          rec.pair.id = ev.at("id").get<std::string>();
          const auto source = parse_record_source(ev.at("source").get<std::string>());
          if (!source) throw Error(ErrorCode::kMalformedDocument, "unknown source");
          rec.source = *source;
          rec.created_at = ev.at("created_at").get<std::string>();
          rec.pair.detector = ev.at("detector").get<std::string>();
          rec.pair.fragment1 = fragment_from_json(ev.at("fragment1"));
          rec.pair.fragment2 = fragment_from_json(ev.at("fragment2"));
          apply_pair(std::move(rec));
        } else if (kind == "label") {
          const auto label = parse_label(ev.at("label").get<std::string>());
          if (!label || !is_binary(*label)) throw Error(ErrorCode::kMalformedDocument, "bad label");
          apply_label(ev.at("id").get<std::string>(),
                      LabelEvent{ev.at("labeler").get<std::string>(), *label, ev.at("timestamp").get<std::string>()});
        } else {
          throw Error(ErrorCode::kMalformedDocument, "unknown event '" + kind + "'");
        }
      } catch (const std::exception& e) {
        // A torn final line from an interrupted append is dropped.
        if (i + 1 == lines.size() && dynamic_cast<const json::parse_error*>(&e) != nullptr) break;
        throw Error(ErrorCode::kMalformedDocument,
                    path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }

  std::vector<PendingPair> parse_csv(const ImportSpec& spec, ImportReport& report) const {
    std::ifstream in(spec.path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + spec.path.string());
    const auto rows = csv::read(in);
    std::vector<PendingPair> out;
    if (rows.empty()) return out;
    const bool path_variant = rows.front() == kPathHeader;
    if (!path_variant && rows.front() != kInlineHeader) {
      throw Error(ErrorCode::kMalformedDocument,
                  "generic-csv header must be file1,start1,end1,file2,start2,end2,detector,lang or "
                  "code1,code2,detector,lang");
    }
    SourceFiles files(spec.path.parent_path());
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      try {
        if (row.size() != rows.front().size()) {
          throw Error(ErrorCode::kMalformedRow, "expected " + std::to_string(rows.front().size()) + " fields, got " +
                                                    std::to_string(row.size()));
        }
        ClonePair p;
        const std::string& lang = row.back();
        if (!is_supported_language(lang)) throw Error(ErrorCode::kMalformedRow, "unsupported language '" + lang + "'");
        p.detector = row[row.size() - 2].empty() ? spec.detector : row[row.size() - 2];
        if (path_variant) {
          auto load = [&](const std::string& file, const std::string& s, const std::string& e) {
            const long long start = parse_line_number(s), end = parse_line_number(e);
            if (end < start) throw Error(ErrorCode::kMalformedRow, "end line before start line");
            const auto& lines = files.lines(file);
            if (end > static_cast<long long>(lines.size())) {
              throw Error(ErrorCode::kMalformedRow, file + " has only " + std::to_string(lines.size()) + " lines");
            }
            CodeFragment f;
            f.source_text = join_lines(std::vector<std::string>(lines.begin() + start - 1, lines.begin() + end));
            f.file_path = file;
            f.start_line = static_cast<int>(start);
            f.end_line = static_cast<int>(end);
            f.language = lang;
            return f;
          };
          p.fragment1 = load(row[0], row[1], row[2]);
          p.fragment2 = load(row[3], row[4], row[5]);
        } else {
          if (row[0].empty() || row[1].empty()) throw Error(ErrorCode::kMalformedRow, "empty code field");
          p.fragment1 = CodeFragment::from_text(row[0], lang);
          p.fragment2 = CodeFragment::from_text(row[1], lang);
        }
        out.push_back({std::move(p), RecordSource::kDetectorImport});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kMalformedRow) throw;
        ++report.malformed;
        report.messages.push_back("row " + std::to_string(r + 1) + ": " + e.what());
      }
    }
    return out;
  }
};

CloneStore::CloneStore(fs::path path, Clock clock) : impl_(std::make_unique<Impl>()) {
  impl_->path = std::move(path);
  impl_->clock = clock ? std::move(clock) : Clock(utc_timestamp);
  if (!impl_->path.empty()) {
    if (impl_->path.has_parent_path()) fs::create_directories(impl_->path.parent_path());
    impl_->replay();
  }
}

CloneStore::~CloneStore() = default;

const fs::path& CloneStore::path() const { return impl_->path; }

ImportReport CloneStore::import_pairs(const ImportSpec& spec) {
  ImportReport report;
  std::vector<PendingPair> pending;
  if (spec.format == ImportFormat::kGenericCsv) {
    pending = impl_->parse_csv(spec, report);
  } else {
    Benchmark bench = read_benchmark(spec.path);
    for (auto& p : bench.pairs) {
      if (!spec.detector.empty()) p.detector = spec.detector;
      pending.push_back({std::move(p), RecordSource::kMutationBench});
    }
  }
  std::unique_lock lock(impl_->mutex);
  for (auto& item : pending) {
    if (impl_->by_key.count(dedup_key(item.pair))) {
      ++report.duplicates;
      continue;
    }
    impl_->insert(std::move(item.pair), item.source);
    ++report.imported;
  }
  return report;
}

std::string CloneStore::add_pair(ClonePair pair, RecordSource source) {
  std::unique_lock lock(impl_->mutex);
  return impl_->insert(std::move(pair), source);
}

StoreRecord CloneStore::record_label(const std::string& id, const std::string& labeler, Label label) {
  if (!is_binary(label)) throw Error(ErrorCode::kInvalidArgument, "label must be TruePositive or FalsePositive");
  if (labeler.empty()) throw Error(ErrorCode::kInvalidArgument, "labeler must not be empty");
  std::unique_lock lock(impl_->mutex);
  return impl_->label(id, labeler, label);
}

std::optional<StoreRecord> CloneStore::get(const std::string& id) const {
  std::shared_lock lock(impl_->mutex);
  const auto it = impl_->records.find(id);
  if (it == impl_->records.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> CloneStore::find_equivalent(const ClonePair& pair) const {
  std::shared_lock lock(impl_->mutex);
  const auto it = impl_->by_key.find(dedup_key(pair));
  if (it == impl_->by_key.end()) return std::nullopt;
  return it->second;
}

std::vector<StoreRecord> CloneStore::records() const {
  std::shared_lock lock(impl_->mutex);
  std::vector<StoreRecord> out;
  out.reserve(impl_->records.size());
  for (const auto& [id, rec] : impl_->records) out.push_back(rec);
  return out;
}

std::vector<StoreRecord> CloneStore::unlabeled() const {
  std::shared_lock lock(impl_->mutex);
  std::vector<StoreRecord> out;
  for (const auto& [id, rec] : impl_->records) {
    if (rec.current_label() == Label::kUnlabeled) out.push_back(rec);
  }
  return out;
}

StoreCounts CloneStore::counts() const {
  std::shared_lock lock(impl_->mutex);
  StoreCounts c;
  for (const auto& [id, rec] : impl_->records) {
    switch (rec.current_label()) {
      case Label::kTruePositive: ++c.true_positive; break;
      case Label::kFalsePositive: ++c.false_positive; break;
      case Label::kUnlabeled: ++c.unlabeled; break;
    }
  }
  return c;
}

std::size_t CloneStore::size() const {
  std::shared_lock lock(impl_->mutex);
  return impl_->records.size();
}

namespace {

std::uint64_t cache_key(const ClonePair& p, bool extras) {
  std::uint64_t h = fnv1a64(p.fragment1.language);
  h = fnv1a64(std::string_view("\0", 1), h);
  h = fnv1a64(p.fragment1.source_text, h);
  h = fnv1a64(std::string_view("\0", 1), h);
  h = fnv1a64(p.fragment2.language, h);
  h = fnv1a64(std::string_view("\0", 1), h);
  h = fnv1a64(p.fragment2.source_text, h);
  return fnv1a64(extras ? "+x" : "-x", h);
}

}  // namespace

FeatureVector CloneStore::features(const ClonePair& pair, bool include_extras) const {
  const std::uint64_t key = cache_key(pair, include_extras);
  {
    std::lock_guard lock(impl_->cache_mutex);
    if (const auto it = impl_->cache.find(key); it != impl_->cache.end()) return it->second;
  }
  FeatureVector fv = extract_features(pair, include_extras);
  std::lock_guard lock(impl_->cache_mutex);
  impl_->cache.emplace(key, fv);
  return fv;
}

std::size_t CloneStore::cache_size() const {
  std::lock_guard lock(impl_->cache_mutex);
  return impl_->cache.size();
}

TrainingSet CloneStore::assemble_training_set(const TrainingFilter& filter) const {
  std::vector<ClonePair> selected;
  for (const StoreRecord& rec : records()) {
    if (!filter.detectors.empty() && !contains(filter.detectors, rec.pair.detector)) continue;
    if (!filter.sources.empty() &&
        std::find(filter.sources.begin(), filter.sources.end(), rec.source) == filter.sources.end()) {
      continue;
    }
    ClonePair p = rec.pair;
    if (!filter.labelers.empty()) {
      p.label = Label::kUnlabeled;
      for (auto it = rec.history.rbegin(); it != rec.history.rend(); ++it) {
        if (contains(filter.labelers, it->labeler)) {
          p.label = it->label;
          p.labeler = it->labeler;
          p.labeled_at = it->timestamp;
          break;
        }
      }
    }
    if (is_binary(p.label)) selected.push_back(std::move(p));
  }

  // Fill the cache for all misses in one parallel pass.
  std::vector<ClonePair> misses;
  std::vector<std::uint64_t> miss_keys;
  {
    std::lock_guard lock(impl_->cache_mutex);
    for (const auto& p : selected) {
      const auto key = cache_key(p, filter.include_extras);
      if (!impl_->cache.count(key)) {
        misses.push_back(p);
        miss_keys.push_back(key);
      }
    }
  }
  if (!misses.empty()) {
    const auto computed = extract_features_batch(misses, filter.include_extras);
    std::lock_guard lock(impl_->cache_mutex);
    for (std::size_t i = 0; i < computed.size(); ++i) impl_->cache.emplace(miss_keys[i], computed[i]);
  }

  TrainingSet ts;
  for (const auto& p : selected) ts.add(p.id, features(p, filter.include_extras), p.label, &p);
  return ts;
}

void CloneStore::export_generic_csv(std::ostream& out) const {
  const auto all = records();
  const bool paths = std::all_of(all.begin(), all.end(), [](const StoreRecord& r) {
    return !r.pair.fragment1.file_path.empty() && !r.pair.fragment2.file_path.empty();
  });
  csv::write_row(out, paths ? kPathHeader : kInlineHeader);
  for (const auto& r : all) {
    const auto& a = r.pair.fragment1;
    const auto& b = r.pair.fragment2;
    if (paths) {
      csv::write_row(out, {a.file_path, std::to_string(a.start_line), std::to_string(a.end_line), b.file_path,
                           std::to_string(b.start_line), std::to_string(b.end_line), r.pair.detector, a.language});
    } else {
      csv::write_row(out, {a.source_text, b.source_text, r.pair.detector, a.language});
    }
  }
}

}  // namespace cloneval
