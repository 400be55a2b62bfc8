#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cloneval/dataset.hpp"
#include "cloneval/model_io.hpp"
#include "cloneval/mutation.hpp"
#include "cloneval/store.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cloneval;
using testsupport::TempDir;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "cloneval");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  Result r;
  r.code = cloneval::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

TrainingSet read_features(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return TrainingSet::from_table(read_feature_csv(in));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({"train", "--model", "svm", "--bench", "x"}).code == 1);
    CHECK(run_cli({"mutate", "--out", "x"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
  }

  TEST_CASE("runtime errors") {
    TempDir dir;
    const auto r = run_cli({"train", "--bench", (dir / "missing").string()});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error", 0) == 0);
    CHECK(run_cli({"validate", "--model", (dir / "none.json").string(), "--a", "x", "--b", "y"}).code == 2);
  }

  TEST_CASE("mutate, features, train, validate") {
    TempDir dir;
    const auto bench = (dir / "bench").string();
    auto r = run_cli({"mutate", "--corpus", testsupport::corpus_dir().string(), "--true", "30", "--false", "30",
                      "--seed", "5", "--out", bench});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("true pairs 30") != std::string::npos);

    const auto feats = (dir / "f.csv").string();
    REQUIRE(run_cli({"features", "--bench", bench, "--out", feats}).code == 0);
    const TrainingSet from_csv = read_features(feats);
    const TrainingSet direct = TrainingSet::from_pairs(read_benchmark(bench).pairs);
    CHECK(from_csv.x == direct.x);
    CHECK(from_csv.y == direct.y);
    CHECK(from_csv.ids == direct.ids);

    const auto model_a = (dir / "a.json").string();
    const auto model_b = (dir / "b.json").string();
    r = run_cli({"train", "--features", feats, "--model", "bayes", "--k", "5", "--out", model_a});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("rows 60 (TP 30, FP 30)") != std::string::npos);
    CHECK(r.out.find("mean accuracy") != std::string::npos);
    REQUIRE(run_cli({"train", "--bench", bench, "--model", "bayes", "--k", "0", "--out", model_b}).code == 0);
    CHECK(testsupport::read_file(model_a) == testsupport::read_file(model_b));

    const auto pair = read_benchmark(bench).pairs.front();
    testsupport::write_file(dir / "a.java", pair.fragment1.source_text);
    testsupport::write_file(dir / "b.java", pair.fragment2.source_text);
    r = run_cli({"validate", "--model", model_a, "--a", (dir / "a.java").string(), "--b", (dir / "b.java").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("prob_true_clone_pair ") != std::string::npos);
    CHECK(r.out.find("decision TruePositive") != std::string::npos);

    r = run_cli({"evaluate", "--model", model_a, "--features", feats, "--roc", (dir / "roc.csv").string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("roc_auc") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "roc.csv"));

    r = run_cli({"report", "--features", feats, "--out-dir", (dir / "rep").string(), "--model", model_a});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "rep" / "chi_squared.csv"));
    CHECK(std::filesystem::exists(dir / "rep" / "type_space.csv"));
  }

  TEST_CASE("import and label") {
    TempDir dir;
    const auto bench = (dir / "bench").string();
    REQUIRE(run_cli({"mutate", "--corpus", testsupport::corpus_dir().string(), "--true", "5", "--false", "5",
                     "--out", bench})
                .code == 0);
    testsupport::write_file(dir / "src/A.java", "int a() {\n  return 1;\n}\nint b() {\n  return 2;\n}\n");
    testsupport::write_file(dir / "r.csv",
                            "file1,start1,end1,file2,start2,end2,detector,lang\n"
                            "src/A.java,1,3,src/A.java,4,6,,Java\n");
    const auto store = (dir / "s.jsonl").string();
    auto r = run_cli({"import", "--store", store, "--format", "pairs-directory", "--path", bench});
    REQUIRE(r.code == 0);
    CHECK(r.out == "imported 10 duplicates 0 malformed 0\n");
    r = run_cli({"import", "--store", store, "--path", (dir / "r.csv").string(), "--detector", "NiCad"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "imported 1 duplicates 0 malformed 0\n");

    r = run_cli({"label", "--store", store, "--labeler", "ann"}, "t\n");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("labeled 1") != std::string::npos);
    CloneStore reopened(store);
    CHECK(reopened.counts().unlabeled == 0);
    CHECK(reopened.counts().true_positive == 6);

    const auto feats = (dir / "all.csv").string();
    REQUIRE(run_cli({"features", "--store", store, "--out", feats}).code == 0);
    CHECK(read_features(feats).size() == 11);
    REQUIRE(run_cli({"features", "--store", store, "--labeler", "ann", "--out", feats}).code == 0);
    CHECK(read_features(feats).size() == 1);
  }
}
