#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloneval/clone_pair.hpp"
#include "cloneval/dataset.hpp"

namespace cloneval {

enum class RecordSource { kDetectorImport, kMutationBench, kApiFeedback };

// "detector-import", "mutation-bench", "api-feedback".
std::string_view to_string(RecordSource source);
std::optional<RecordSource> parse_record_source(std::string_view text);

struct LabelEvent {
  std::string labeler;
  Label label = Label::kUnlabeled;
  std::string timestamp;

  bool operator==(const LabelEvent&) const = default;
};

struct StoreRecord {
  ClonePair pair;  // pair.label/labeler/labeled_at mirror the latest event
  std::string created_at;
  RecordSource source = RecordSource::kDetectorImport;
  std::vector<LabelEvent> history;

  Label current_label() const { return history.empty() ? Label::kUnlabeled : history.back().label; }
};

enum class ImportFormat { kGenericCsv, kPairsDirectory };

struct ImportSpec {
  ImportFormat format = ImportFormat::kGenericCsv;
  std::filesystem::path path;
  // Used when a CSV row leaves the detector column empty.
  std::string detector;
};

struct ImportReport {
  std::size_t imported = 0;
  std::size_t duplicates = 0;
  std::size_t malformed = 0;
  std::vector<std::string> messages;  // one per skipped row
};

struct TrainingFilter {
  // Empty means no restriction. With labelers given, each record uses the
  // latest label set by one of them.
  std::vector<std::string> labelers;
  std::vector<std::string> detectors;
  std::vector<RecordSource> sources;
  bool include_extras = false;
};

struct StoreCounts {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t unlabeled = 0;

  std::size_t total() const { return true_positive + false_positive + unlabeled; }
};

// Clone pairs with their label history. Backed by an append-only JSON-lines
// file (one event per line) that is replayed on open; an empty path keeps
// everything in memory. Writers are serialized; readers work on a consistent
// snapshot.
class CloneStore {
 public:
  using Clock = std::function<std::string()>;

  explicit CloneStore(std::filesystem::path path = {}, Clock clock = {});
  ~CloneStore();
  CloneStore(const CloneStore&) = delete;
  CloneStore& operator=(const CloneStore&) = delete;

  const std::filesystem::path& path() const;

  // Throws Error(kMissingSourceFile) for a referenced file that cannot be
  // read and Error(kMalformedDocument) for an unknown header. Nothing is
  // stored when an error is thrown.
  ImportReport import_pairs(const ImportSpec& spec);

  // Adds a pair unless an equivalent one is stored; returns the id in use.
  // An empty pair.id gets a generated one. A binary pair.label is recorded as
  // the first history entry.
  std::string add_pair(ClonePair pair, RecordSource source);

  // Throws Error(kUnknownPair) and Error(kInvalidArgument) for a non-binary
  // label or an empty labeler.
  StoreRecord record_label(const std::string& id, const std::string& labeler, Label label);

  std::optional<StoreRecord> get(const std::string& id) const;
  std::optional<std::string> find_equivalent(const ClonePair& pair) const;
  // All records in id order.
  std::vector<StoreRecord> records() const;
  std::vector<StoreRecord> unlabeled() const;
  StoreCounts counts() const;
  std::size_t size() const;

  // Labeled records passing the filter, id order, features from the cache.
  TrainingSet assemble_training_set(const TrainingFilter& filter = {}) const;

  // generic-csv export: the path variant when every record refers to source
  // files, the inline variant otherwise.
  void export_generic_csv(std::ostream& out) const;

  // Feature vector through the fragment-hash cache.
  FeatureVector features(const ClonePair& pair, bool include_extras = false) const;
  std::size_t cache_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Current UTC time as 2024-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace cloneval
