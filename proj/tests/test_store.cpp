#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "cloneval/corpus.hpp"
#include "cloneval/csv.hpp"
#include "cloneval/error.hpp"
#include "cloneval/mutation.hpp"
#include "cloneval/store.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cloneval;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

const char* kPathHeader = "file1,start1,end1,file2,start2,end2,detector,lang\n";

CloneStore::Clock fixed_clock() {
  return [] { return std::string("2024-01-01T00:00:00Z"); };
}

void write_sources(const TempDir& dir) {
  write_file(dir / "src/A.java", "int a() {\n  return 1;\n}\nint b() {\n  return 2;\n}\n");
  write_file(dir / "src/B.java", "void c() {\n  x = y;\n  y = z;\n}\n");
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

ClonePair inline_pair(const std::string& a, const std::string& b, Label label = Label::kUnlabeled) {
  auto p = testsupport::make_pair(a, b, "");
  p.label = label;
  return p;
}

}  // namespace

TEST_SUITE("store") {
  TEST_CASE("generic csv with paths") {
    TempDir dir;
    write_sources(dir);
    write_file(dir / "report.csv", std::string(kPathHeader) +
                                       "src/A.java,1,3,src/A.java,4,6,NiCad 4.0,Java\n"
                                       "src/A.java,1,3,src/A.java,4,6,NiCad 4.0,Java\n"
                                       "src/A.java,1,3,src/B.java,1,4,,Java\n"
                                       "src/A.java,3,1,src/B.java,1,4,x,Java\n"
                                       "src/A.java,1,99,src/B.java,1,4,x,Java\n"
                                       "src/A.java,1,3,src/B.java,1,4,x,Cobol\n"
                                       "src/A.java,1,3\n");
    CloneStore store({}, fixed_clock());
    const auto r = store.import_pairs({ImportFormat::kGenericCsv, dir / "report.csv", "Simian"});
    CHECK(r.imported == 2);
    CHECK(r.duplicates == 1);
    CHECK(r.malformed == 4);
    CHECK(r.messages.size() == 4);
    const auto recs = store.records();
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].pair.fragment1.source_text == "int a() {\n  return 1;\n}\n");
    CHECK(recs[0].pair.fragment2.start_line == 4);
    CHECK(recs[0].pair.detector == "NiCad 4.0");
    CHECK(recs[1].pair.detector == "Simian");
    CHECK(recs[0].source == RecordSource::kDetectorImport);
    CHECK(recs[0].current_label() == Label::kUnlabeled);
  }

  TEST_CASE("empty csv and bad header") {
    TempDir dir;
    write_file(dir / "empty.csv", kPathHeader);
    CloneStore store;
    CHECK(store.import_pairs({ImportFormat::kGenericCsv, dir / "empty.csv", ""}).imported == 0);
    write_file(dir / "bad.csv", "a,b\n1,2\n");
    CHECK(code_of([&] { store.import_pairs({ImportFormat::kGenericCsv, dir / "bad.csv", ""}); }) ==
          ErrorCode::kMalformedDocument);
  }

  TEST_CASE("missing source file stores nothing") {
    TempDir dir;
    write_sources(dir);
    write_file(dir / "r.csv", std::string(kPathHeader) + "src/A.java,1,3,src/A.java,4,6,d,Java\n" +
                                  "src/A.java,1,3,src/Nope.java,1,2,d,Java\n");
    CloneStore store;
    CHECK(code_of([&] { store.import_pairs({ImportFormat::kGenericCsv, dir / "r.csv", ""}); }) ==
          ErrorCode::kMissingSourceFile);
    CHECK(store.size() == 0);
  }

  TEST_CASE("inline csv export round trip") {
    TempDir dir;
    std::ostringstream csv_text;
    csv::write_row(csv_text, {"code1", "code2", "detector", "lang"});
    csv::write_row(csv_text, {"a = 1;\nb(\"x, y\");\n", "a = 2;\n", "iClones", "Java"});
    csv::write_row(csv_text, {"while (x) {\n  y();\n}\n", "z();\n", "iClones", "Java"});
    write_file(dir / "in.csv", csv_text.str());
    CloneStore store;
    CHECK(store.import_pairs({ImportFormat::kGenericCsv, dir / "in.csv", ""}).imported == 2);
    std::ostringstream out;
    store.export_generic_csv(out);
    CHECK(out.str() == csv_text.str());
  }

  TEST_CASE("path csv export round trip") {
    TempDir dir;
    write_sources(dir);
    const std::string text = std::string(kPathHeader) + "src/A.java,1,3,src/A.java,4,6,NiCad,Java\n" +
                             "src/A.java,4,6,src/B.java,1,4,NiCad,Java\n";
    write_file(dir / "r.csv", text);
    CloneStore store;
    store.import_pairs({ImportFormat::kGenericCsv, dir / "r.csv", ""});
    std::ostringstream out;
    store.export_generic_csv(out);
    CHECK(out.str() == text);
  }

  TEST_CASE("labels and history") {
    CloneStore store({}, fixed_clock());
    const auto id = store.add_pair(inline_pair("a();", "b();"), RecordSource::kApiFeedback);
    CHECK(store.add_pair(inline_pair("a();", "b();"), RecordSource::kApiFeedback) == id);
    store.record_label(id, "ann", Label::kTruePositive);
    auto rec = store.record_label(id, "ann", Label::kFalsePositive);
    CHECK(rec.current_label() == Label::kFalsePositive);
    CHECK(rec.history.size() == 2);
    rec = store.record_label(id, "ann", Label::kFalsePositive);
    CHECK(rec.history.size() == 2);
    CHECK(rec.pair.labeler == "ann");
    CHECK(code_of([&] { store.record_label("nope", "ann", Label::kTruePositive); }) == ErrorCode::kUnknownPair);
    CHECK(code_of([&] { store.record_label(id, "ann", Label::kUnlabeled); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { store.record_label(id, "", Label::kTruePositive); }) == ErrorCode::kInvalidArgument);
    const auto c = store.counts();
    CHECK(c.false_positive == 1);
    CHECK(c.total() == store.size());
  }

  TEST_CASE("replay from disk") {
    TempDir dir;
    const auto file = dir / "store.jsonl";
    std::string id;
    {
      CloneStore store(file, fixed_clock());
      id = store.add_pair(inline_pair("x = 1;", "x = 2;"), RecordSource::kDetectorImport);
      store.add_pair(inline_pair("y();", "z();", Label::kTruePositive), RecordSource::kMutationBench);
      store.record_label(id, "bob", Label::kTruePositive);
      store.record_label(id, "eve", Label::kFalsePositive);
    }
    std::ofstream(file, std::ios::app) << "{\"event\":\"label\",\"id\":";  // torn final write
    CloneStore again(file, fixed_clock());
    REQUIRE(again.size() == 2);
    const auto rec = again.get(id);
    REQUIRE(rec.has_value());
    CHECK(rec->history.size() == 2);
    CHECK(rec->history[0] == LabelEvent{"bob", Label::kTruePositive, "2024-01-01T00:00:00Z"});
    CHECK(rec->current_label() == Label::kFalsePositive);
    CHECK(again.counts().true_positive == 1);
    CHECK(again.counts().false_positive == 1);
  }

  TEST_CASE("training set assembly and filters") {
    CloneStore store;
    std::vector<std::string> ids;
    for (int i = 0; i < 4; ++i) {
      auto p = inline_pair("a" + std::to_string(i) + "();\nreturn;", "b();\nreturn;");
      p.detector = i < 2 ? "NiCad" : "Simian";
      ids.push_back(store.add_pair(p, RecordSource::kDetectorImport));
    }
    store.add_pair(inline_pair("unlabeled();", "x();"), RecordSource::kDetectorImport);
    store.record_label(ids[0], "ann", Label::kTruePositive);
    store.record_label(ids[1], "ann", Label::kTruePositive);
    store.record_label(ids[2], "ann", Label::kTruePositive);
    store.record_label(ids[3], "bob", Label::kFalsePositive);
    store.record_label(ids[0], "bob", Label::kFalsePositive);

    const auto all = store.assemble_training_set();
    CHECK(all.size() == 4);
    CHECK(all.count(Label::kFalsePositive) == 2);
    CHECK(std::is_sorted(all.ids.begin(), all.ids.end()));

    TrainingFilter ann;
    ann.labelers = {"ann"};
    const auto by_ann = store.assemble_training_set(ann);
    CHECK(by_ann.size() == 3);
    CHECK(by_ann.count(Label::kTruePositive) == 3);

    TrainingFilter nobody;
    nobody.labelers = {"zed"};
    CHECK(store.assemble_training_set(nobody).empty());

    TrainingFilter simian;
    simian.detectors = {"Simian"};
    CHECK(store.assemble_training_set(simian).size() == 2);

    TrainingFilter bench;
    bench.sources = {RecordSource::kMutationBench};
    CHECK(store.assemble_training_set(bench).empty());

    TrainingFilter extras;
    extras.include_extras = true;
    CHECK(store.assemble_training_set(extras).dims() == 10);
    CHECK(store.unlabeled().size() == 1);
  }

  TEST_CASE("feature cache returns identical vectors") {
    CloneStore store;
    std::mt19937_64 rng(81);
    for (int i = 0; i < 20; ++i) {
      const auto a = testsupport::render(testsupport::random_program(rng), {}, rng);
      const auto b = testsupport::render(testsupport::random_program(rng), {}, rng);
      const auto pair = testsupport::make_pair(a, b);
      const auto first = store.features(pair);
      const auto cached = store.features(pair);
      CHECK(first == cached);
      CHECK(first == extract_features(pair));
    }
    CHECK(store.cache_size() == 20);
  }

  TEST_CASE("benchmark directory import keeps labels") {
    TempDir dir;
    BenchmarkConfig cfg;
    cfg.true_count = 500;
    cfg.false_count = 500;
    const auto bench = generate_benchmark(load_corpus(testsupport::corpus_dir()), cfg);
    write_benchmark(bench, dir / "bench");
    CloneStore store(dir / "s.jsonl");
    const auto r = store.import_pairs({ImportFormat::kPairsDirectory, dir / "bench", ""});
    CHECK(r.imported == 1000);
    const auto c = store.counts();
    CHECK(c.true_positive == 500);
    CHECK(c.false_positive == 500);
    CHECK(store.get("tp00001")->source == RecordSource::kMutationBench);
    CHECK(store.import_pairs({ImportFormat::kPairsDirectory, dir / "bench", ""}).duplicates == 1000);
  }

  TEST_CASE("concurrent readers and one writer") {
    CloneStore store;
    std::atomic<bool> done{false};
    std::thread writer([&] {
      for (int i = 0; i < 200; ++i) {
        const auto id = store.add_pair(inline_pair("w" + std::to_string(i) + "();", "v();"),
                                       RecordSource::kApiFeedback);
        store.record_label(id, "w", i % 2 ? Label::kTruePositive : Label::kFalsePositive);
      }
      done = true;
    });
    std::size_t last = 0;
    while (!done) {
      const auto c = store.counts();
      CHECK(c.total() >= last);
      last = c.total();
      const auto recs = store.records();
      CHECK(std::is_sorted(recs.begin(), recs.end(),
                           [](const StoreRecord& a, const StoreRecord& b) { return a.pair.id < b.pair.id; }));
    }
    writer.join();
    CHECK(store.size() == 200);
  }

  TEST_CASE("source names") {
    CHECK(to_string(RecordSource::kApiFeedback) == "api-feedback");
    CHECK(parse_record_source("mutation-bench") == RecordSource::kMutationBench);
    CHECK_FALSE(parse_record_source("x").has_value());
    CHECK(utc_timestamp().size() == 20);
  }
}
