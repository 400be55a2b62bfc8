#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cloneval/corpus.hpp"
#include "cloneval/csv.hpp"
#include "cloneval/distribution.hpp"
#include "cloneval/error.hpp"
#include "cloneval/evaluation.hpp"
#include "cloneval/model_io.hpp"
#include "cloneval/mutation.hpp"
#include "cloneval/service.hpp"
#include "cloneval/store.hpp"

namespace cloneval::cli {
namespace {

namespace fs = std::filesystem;

// Where a labeled data set comes from; exactly one of the paths is set.
struct DataSource {
  std::string store;
  std::string features;
  std::string bench;
  std::vector<std::string> labelers;
  bool extras = false;

  void add_options(CLI::App* cmd) {
    auto* s = cmd->add_option("--store", store, "Clone store file");
    auto* f = cmd->add_option("--features", features, "Feature CSV written by `features`");
    auto* b = cmd->add_option("--bench", bench, "Benchmark directory written by `mutate`");
    s->excludes(f, b);
    f->excludes(b);
    cmd->add_option("--labeler", labelers, "Only use labels from these labelers (store only)");
    cmd->add_flag("--extras", extras, "Add the avgSize and sizeDiff features");
  }

  bool given() const { return !store.empty() || !features.empty() || !bench.empty(); }

  TrainingSet load() const {
    if (!store.empty()) {
      CloneStore cs(store);
      TrainingFilter filter;
      filter.labelers = labelers;
      filter.include_extras = extras;
      return cs.assemble_training_set(filter);
    }
    if (!features.empty()) {
      std::ifstream in(features, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIo, "cannot read " + features);
      return TrainingSet::from_table(read_feature_csv(in));
    }
    if (!bench.empty()) return TrainingSet::from_pairs(read_benchmark(bench).pairs, extras);
    throw Error(ErrorCode::kInvalidArgument, "one of --store, --features or --bench is required");
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) w.push_back(csv::parse_double(item));
  if (w.size() != kAllOperators.size()) {
    throw Error(ErrorCode::kInvalidArgument, "--weights needs " + std::to_string(kAllOperators.size()) + " values");
  }
  return w;
}

void print_fragment(std::ostream& out, const char* title, const CodeFragment& f) {
  out << "--- " << title;
  if (!f.file_path.empty()) out << " " << f.file_path << ":" << f.start_line << "-" << f.end_line;
  out << " ---\n";
  const auto lines = split_lines(f.source_text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out << (i + 1 < 10 ? "   " : i + 1 < 100 ? "  " : " ") << i + 1 << "  " << lines[i] << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Validate code clone pairs with learned classifiers", "cloneval"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML or INI file");

  // import
  auto* import_cmd = app.add_subcommand("import", "Import clone pairs into a store");
  std::string import_store, import_format = "generic-csv", import_path, import_detector;
  import_cmd->add_option("--store", import_store, "Clone store file")->required();
  import_cmd->add_option("--format", import_format, "generic-csv or pairs-directory")
      ->check(CLI::IsMember({"generic-csv", "pairs-directory"}));
  import_cmd->add_option("--path", import_path, "CSV file or benchmark directory")->required();
  import_cmd->add_option("--detector", import_detector, "Detector tag for rows without one");

  // label
  auto* label_cmd = app.add_subcommand("label", "Label queued pairs interactively");
  std::string label_store, label_labeler, label_model;
  std::size_t label_limit = 0;
  label_cmd->add_option("--store", label_store, "Clone store file")->required();
  label_cmd->add_option("--labeler", label_labeler, "Your labeler id")->required();
  label_cmd->add_option("--model", label_model, "Show predictions from this model");
  label_cmd->add_option("--limit", label_limit, "Stop after this many pairs (0: all)");

  // features
  auto* features_cmd = app.add_subcommand("features", "Write the feature CSV of a data set");
  DataSource features_src;
  std::string features_out;
  bool features_all = false;
  features_src.add_options(features_cmd);
  features_cmd->add_option("--out", features_out, "Output file (default stdout)");
  features_cmd->add_flag("--all", features_all, "Include unlabeled store pairs");

  // train
  auto* train_cmd = app.add_subcommand("train", "Cross-validate and train a model");
  DataSource train_src;
  std::string train_model = "nn", train_out, train_cv_csv, train_trace;
  int train_k = 10, train_epochs = 0;
  std::uint64_t train_seed = 42;
  double train_gamma = 0.5, train_lr = 0.0;
  unsigned train_threads = 0;
  train_src.add_options(train_cmd);
  train_cmd->add_option("--model", train_model, "nn, deep, bayes or fica")
      ->check(CLI::IsMember({"nn", "deep", "bayes", "fica"}));
  train_cmd->add_option("--k", train_k, "Folds for cross-validation (0 skips it)");
  train_cmd->add_option("--seed", train_seed, "Seed for folds and weights");
  train_cmd->add_option("--gamma", train_gamma, "Decision threshold")->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--epochs", train_epochs, "Override the epoch limit (neural nets)");
  train_cmd->add_option("--lr", train_lr, "Override the learning rate (neural nets)");
  train_cmd->add_option("--threads", train_threads, "Worker threads (0: all cores)");
  train_cmd->add_option("--out", train_out, "Write the trained model here");
  train_cmd->add_option("--cv-csv", train_cv_csv, "Write per-fold metrics here");
  train_cmd->add_option("--trace", train_trace, "Write mean held-out accuracy per epoch here");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a model on a labeled data set");
  DataSource eval_src;
  std::string eval_model, eval_roc, eval_pr, eval_chi2;
  double eval_gamma = 0.5;
  eval_src.add_options(eval_cmd);
  eval_cmd->add_option("--model", eval_model, "Model document")->required();
  eval_cmd->add_option("--gamma", eval_gamma, "Decision threshold")->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--roc", eval_roc, "Write the ROC curve here");
  eval_cmd->add_option("--pr", eval_pr, "Write the precision-recall curve here");
  eval_cmd->add_option("--chi2", eval_chi2, "Write chi-squared feature scores here");

  // mutate
  auto* mutate_cmd = app.add_subcommand("mutate", "Generate a mutation benchmark");
  std::string mutate_corpus, mutate_out, mutate_weights;
  BenchmarkConfig bench_cfg;
  int mutate_min_lines = 4;
  mutate_cmd->add_option("--corpus", mutate_corpus, "Directory of Java sources")->required();
  mutate_cmd->add_option("--true", bench_cfg.true_count, "Number of mutated (true) pairs");
  mutate_cmd->add_option("--false", bench_cfg.false_count, "Number of negative pairs");
  mutate_cmd->add_option("--seed", bench_cfg.seed, "Benchmark seed");
  mutate_cmd->add_option("--weights", mutate_weights, "Nine comma-separated operator weights");
  mutate_cmd->add_option("--min-lines", mutate_min_lines, "Shortest method taken from the corpus");
  mutate_cmd->add_option("--out", mutate_out, "Output directory")->required();

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the validation web service");
  std::string serve_store, serve_model, serve_static, serve_trainer = "nn";
  HttpConfig http_cfg;
  double serve_gamma = 0.5;
  serve_cmd->add_option("--store", serve_store, "Clone store file")->required();
  serve_cmd->add_option("--model", serve_model, "Model document to load and to save retrained models to");
  serve_cmd->add_option("--host", http_cfg.host, "Listen address");
  serve_cmd->add_option("--port", http_cfg.port, "Listen port");
  serve_cmd->add_option("--gamma", serve_gamma, "Default decision threshold")->check(CLI::Range(0.0, 1.0));
  serve_cmd->add_option("--trainer", serve_trainer, "Trainer used by /api/train")
      ->check(CLI::IsMember({"nn", "deep", "bayes", "fica"}));
  serve_cmd->add_option("--static", serve_static, "Directory served at /");
  serve_cmd->add_option("--cors-origin", http_cfg.cors_origin, "Allowed CORS origin");

  // report
  auto* report_cmd = app.add_subcommand("report", "Feature distributions, chi-squared scores and type space");
  DataSource report_src;
  std::string report_dir, report_model;
  double report_gamma = 0.5;
  report_src.add_options(report_cmd);
  report_cmd->add_option("--out-dir", report_dir, "Directory for the CSV files")->required();
  report_cmd->add_option("--model", report_model, "Also export the type space under this model");
  report_cmd->add_option("--gamma", report_gamma, "Decision threshold for the type space")
      ->check(CLI::Range(0.0, 1.0));

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Classify one pair of source files");
  std::string validate_model, validate_a, validate_b;
  double validate_gamma = 0.5;
  validate_cmd->add_option("--model", validate_model, "Model document")->required();
  validate_cmd->add_option("--a", validate_a, "First fragment file")->required();
  validate_cmd->add_option("--b", validate_b, "Second fragment file")->required();
  validate_cmd->add_option("--gamma", validate_gamma, "Decision threshold")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (import_cmd->parsed()) {
      CloneStore store(import_store);
      ImportSpec spec;
      spec.format = import_format == "generic-csv" ? ImportFormat::kGenericCsv : ImportFormat::kPairsDirectory;
      spec.path = import_path;
      spec.detector = import_detector;
      const ImportReport r = store.import_pairs(spec);
      for (const auto& m : r.messages) err << "skipped " << m << "\n";
      out << "imported " << r.imported << " duplicates " << r.duplicates << " malformed " << r.malformed << "\n";
    } else if (label_cmd->parsed()) {
      CloneStore store(label_store);
      std::optional<Model> model;
      if (!label_model.empty()) model = load_model(label_model);
      const auto queue = store.unlabeled();
      std::size_t done = 0;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        if (label_limit != 0 && done >= label_limit) break;
        const StoreRecord& rec = queue[i];
        out << "[" << i + 1 << "/" << queue.size() << "] " << rec.pair.id;
        if (!rec.pair.detector.empty()) out << " (" << rec.pair.detector << ")";
        out << "\n";
        print_fragment(out, "fragment 1", rec.pair.fragment1);
        print_fragment(out, "fragment 2", rec.pair.fragment2);
        if (model) {
          const Prediction p = predict_pair(*model, rec.pair);
          out << "model: prob_true_clone_pair " << csv::format_fixed6(p.lambda()) << "\n";
        }
        out << "label [t]rue / [f]alse / [s]kip / [q]uit: " << std::flush;
        std::string answer;
        if (!std::getline(in, answer) || answer == "q") break;
        if (answer == "t" || answer == "f") {
          store.record_label(rec.pair.id, label_labeler, answer == "t" ? Label::kTruePositive : Label::kFalsePositive);
          ++done;
        }
      }
      out << "labeled " << done << "\n";
    } else if (features_cmd->parsed()) {
      FeatureTable table;
      if (features_all && !features_src.store.empty()) {
        CloneStore store(features_src.store);
        for (const auto& rec : store.records()) {
          table.ids.push_back(rec.pair.id);
          table.rows.push_back(store.features(rec.pair, features_src.extras));
          table.labels.push_back(rec.current_label());
        }
      } else {
        table = features_src.load().to_table();
      }
      if (features_out.empty()) {
        write_feature_csv(out, table);
      } else {
        auto f = open_out(features_out);
        write_feature_csv(f, table);
        err << "wrote " << table.ids.size() << " rows to " << features_out << "\n";
      }
    } else if (train_cmd->parsed()) {
      const TrainingSet ts = train_src.load();
      TrainerConfig trainer = trainer_preset(train_model);
      set_seed(trainer, train_seed);
      if (auto* nn = std::get_if<NeuralNetConfig>(&trainer)) {
        if (train_epochs > 0) nn->max_epochs = train_epochs;
        if (train_lr > 0.0) nn->learning_rate = train_lr;
      }
      out << "rows " << ts.size() << " (TP " << ts.count(Label::kTruePositive) << ", FP "
          << ts.count(Label::kFalsePositive) << ")\n";
      if (train_k != 0) {
        CvConfig cv;
        cv.k = train_k;
        cv.seed = train_seed;
        cv.gamma = train_gamma;
        cv.threads = train_threads;
        cv.record_epoch_trace = !train_trace.empty();
        const CvReport report = k_fold_cross_validate(ts, trainer, cv);
        write_cv_text(out, report);
        for (const auto& w : report.warnings) err << "warning: " << w << "\n";
        if (!train_cv_csv.empty()) {
          auto f = open_out(train_cv_csv);
          write_cv_csv(f, report);
        }
        if (!train_trace.empty()) {
          auto f = open_out(train_trace);
          write_epoch_trace_csv(f, report.epoch_accuracy);
        }
      }
      if (!train_out.empty()) {
        const Model model = cloneval::train_model(ts, trainer);
        save_model(model, train_out);
        err << "model written to " << train_out << "\n";
      }
    } else if (eval_cmd->parsed()) {
      const Model model = load_model(eval_model);
      const TrainingSet ts = eval_src.load();
      const auto preds = predict_rows(model, ts);
      write_metrics_text(out, compute_metrics(preds, ts.y, eval_gamma));
      if (ts.has_both_classes()) {
        const CurveReport roc = curve_and_auc(preds, ts.y, CurveKind::kRoc);
        const CurveReport pr = curve_and_auc(preds, ts.y, CurveKind::kPr);
        out << "roc_auc    " << csv::format_fixed6(roc.auc) << "\n"
            << "pr_auc     " << csv::format_fixed6(pr.auc) << "\n"
            << "recommended_gamma " << csv::format_fixed6(recommend_gamma(roc)) << "\n";
        if (!eval_roc.empty()) {
          auto f = open_out(eval_roc);
          write_curve_csv(f, roc);
        }
        if (!eval_pr.empty()) {
          auto f = open_out(eval_pr);
          write_curve_csv(f, pr);
        }
        if (!eval_chi2.empty()) {
          auto f = open_out(eval_chi2);
          write_chi_squared_csv(f, chi_squared_statistics(ts), chi_squared_feature_scores(ts));
        }
      } else {
        err << "warning: single-class data set, curves skipped\n";
      }
    } else if (mutate_cmd->parsed()) {
      if (!mutate_weights.empty()) {
        const auto w = parse_weights(mutate_weights);
        std::copy(w.begin(), w.end(), bench_cfg.operator_weights.begin());
      }
      const auto corpus = load_corpus(mutate_corpus, mutate_min_lines);
      const Benchmark bench = generate_benchmark(corpus, bench_cfg);
      write_benchmark(bench, mutate_out);
      out << "corpus fragments " << corpus.size() << "\n"
          << "true pairs " << bench.manifest.count(Label::kTruePositive) << "\n"
          << "false pairs " << bench.manifest.count(Label::kFalsePositive) << "\n";
      for (const auto op : kAllOperators) {
        out << "  " << to_string(op) << " " << bench.manifest.count_operation(to_string(op)) << "\n";
      }
    } else if (serve_cmd->parsed()) {
      CloneStore store(serve_store);
      ServiceConfig cfg;
      cfg.default_gamma = serve_gamma;
      cfg.trainer = serve_trainer;
      cfg.model_path = serve_model;
      ValidationService service(store, cfg);
      if (!serve_model.empty() && fs::exists(serve_model)) service.set_model(load_model(serve_model));
      http_cfg.static_dir = serve_static;
      HttpServer server(service, http_cfg);
      err << "serving " << store.size() << " pairs on " << http_cfg.host << ":" << http_cfg.port
          << (service.has_model() ? "" : " (no model loaded)") << "\n";
      server.run();
    } else if (report_cmd->parsed()) {
      const TrainingSet ts = report_src.load();
      fs::create_directories(report_dir);
      const DistributionReport dist = feature_distribution_report(ts);
      {
        auto f = open_out((fs::path(report_dir) / "distribution_summary.csv").string());
        write_distribution_summary_csv(f, dist);
      }
      {
        auto f = open_out((fs::path(report_dir) / "distribution_histogram.csv").string());
        write_distribution_histogram_csv(f, dist);
      }
      const auto stats = chi_squared_statistics(ts);
      const auto scores = chi_squared_feature_scores(ts);
      {
        auto f = open_out((fs::path(report_dir) / "chi_squared.csv").string());
        write_chi_squared_csv(f, stats, scores);
      }
      out << "rank feature delta_mu chi2_score\n";
      for (std::size_t r = 0; r < dist.ranking.size(); ++r) {
        const std::size_t f = dist.ranking[r];
        out << r + 1 << " " << dist.features[f].name << " " << csv::format_fixed6(dist.features[f].delta_mu) << " "
            << csv::format_fixed6(scores[f]) << "\n";
      }
      if (!report_model.empty()) {
        const Model model = load_model(report_model);
        auto f = open_out((fs::path(report_dir) / "type_space.csv").string());
        export_type_space(f, ts, predict_rows(model, ts), report_gamma);
      }
    } else if (validate_cmd->parsed()) {
      const Model model = load_model(validate_model);
      ClonePair pair;
      pair.fragment1 = CodeFragment::from_text(read_text(validate_a));
      pair.fragment2 = CodeFragment::from_text(read_text(validate_b));
      const Prediction p = predict_pair(model, pair);
      out << "prob_false_clone_pair " << csv::format_fixed6(p.probs[1]) << "\n"
          << "prob_true_clone_pair " << csv::format_fixed6(p.probs[0]) << "\n"
          << "decision " << to_string(decide(p, DecisionConfig{validate_gamma})) << "\n";
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace cloneval::cli
