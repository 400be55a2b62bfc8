#include "cloneval/service.hpp"

#include <algorithm>
#include <cmath>

#include "cloneval/error.hpp"
#include "cloneval/lexer.hpp"
#include "cloneval/model_io.hpp"
#include "json.hpp"

namespace cloneval {
namespace {

using json = nlohmann::ordered_json;

// Probabilities go out rounded to 6 decimals; the false-clone side is the
// complement in integer millionths so the pair still sums to one.
std::pair<double, double> rounded_probs(const Prediction& p) {
  const double micro_true = std::round(std::clamp(p.probs[0], 0.0, 1.0) * 1e6);
  return {(1e6 - micro_true) / 1e6, micro_true / 1e6};
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

ServiceResponse respond(int status, const json& body) { return {status, body.dump()}; }

ServiceResponse error_response(int status, const std::string& message, std::string log = "") {
  json body;
  body["log_msg"] = std::move(log);
  body["error_msg"] = message;
  return respond(status, body);
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyFragment:
    case ErrorCode::kMalformedDocument:
    case ErrorCode::kMalformedRow:
      return 400;
    case ErrorCode::kUnknownPair:
      return 404;
    case ErrorCode::kUnsupportedLanguage:
    case ErrorCode::kSingleClassTrainingSet:
    case ErrorCode::kSingleClassLabels:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kDimensionMismatch:
      return 422;
    default:
      return 500;
  }
}

std::optional<json> parse_body(std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

// Non-empty string field, or nullopt.
std::optional<std::string> string_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  std::string s = it->get<std::string>();
  if (s.empty()) return std::nullopt;
  return s;
}

json prediction_json(const Prediction& p, double gamma) {
  const auto [pf, pt] = rounded_probs(p);
  return json{{"prob_false_clone_pair", pf},
              {"prob_true_clone_pair", pt},
              {"decision", to_string(decide(p, DecisionConfig{gamma}))}};
}

json fragment_json(const CodeFragment& f) {
  return json{{"code", f.source_text}, {"file", f.file_path}, {"start", f.start_line}, {"end", f.end_line},
              {"lang", f.language}};
}

json metric_json(const MetricSummary& m) { return json{{"mean", round6(m.mean)}, {"stddev", round6(m.stddev)}}; }

}  // namespace

struct ValidationService::TrainRequest {
  TrainingSet data;
  TrainerConfig trainer;
  std::string trainer_name;
  std::string model_name;
  int k = 10;
  std::uint64_t seed = 42;
};

ValidationService::ValidationService(CloneStore& store, ServiceConfig cfg) : store_(store), cfg_(std::move(cfg)) {}

ValidationService::~ValidationService() {
  if (job_thread_.joinable()) job_thread_.join();
}

void ValidationService::set_model(Model model, std::string name) {
  auto ptr = std::make_shared<const Model>(std::move(model));
  std::lock_guard lock(models_mutex_);
  models_[std::move(name)] = std::move(ptr);
}

std::shared_ptr<const Model> ValidationService::model(std::string_view name) const {
  std::lock_guard lock(models_mutex_);
  const auto it = models_.find(name);
  return it == models_.end() ? nullptr : it->second;
}

bool ValidationService::has_model() const { return model() != nullptr; }

ServiceResponse ValidationService::handle_validate(std::string_view body) const {
  const auto req = parse_body(body);
  if (!req) return error_response(400, "request body must be a JSON object");
  for (const char* key : {"lang", "sourceCode_1", "sourceCode_2"}) {
    if (!string_field(*req, key)) return error_response(400, std::string("missing field: ") + key);
  }
  const std::string lang = *string_field(*req, "lang");
  if (!is_supported_language(lang)) return error_response(422, "unsupported language: " + lang);

  double gamma = cfg_.default_gamma;
  if (const auto it = req->find("gamma"); it != req->end()) {
    if (!it->is_number() || it->get<double>() < 0.0 || it->get<double>() > 1.0) {
      return error_response(400, "gamma must be a number in [0, 1]");
    }
    gamma = it->get<double>();
  }
  std::string model_name(kDefaultModel);
  if (const auto it = req->find("model"); it != req->end()) {
    if (!it->is_string()) return error_response(400, "model must be a string");
    model_name = it->get<std::string>();
  }
  const auto served = model(model_name);
  if (!served) {
    return model_name == kDefaultModel ? error_response(503, "no model loaded")
                                       : error_response(422, "unknown model: " + model_name);
  }

  ClonePair pair;
  pair.fragment1 = CodeFragment::from_text(*string_field(*req, "sourceCode_1"), lang);
  pair.fragment2 = CodeFragment::from_text(*string_field(*req, "sourceCode_2"), lang);
  std::string log = "Preprocessing clones, Normalizing codes (Type1, Type2, Type3), ";
  try {
    const Prediction p = predict_pair(*served, pair);
    log += uses_source_text(*served) ? "Building TF-IDF vectors, "
                                     : "Extracting " + std::to_string(input_dims(*served)) + " features, ";
    log += "Predicting with " + std::string(model_kind(*served));
    const auto [pf, pt] = rounded_probs(p);
    json out;
    out["output"] = json{{"prob_false_clone_pair", pf}, {"prob_true_clone_pair", pt}};
    out["log_msg"] = log;
    out["error_msg"] = nullptr;
    out["decision"] = to_string(decide(p, DecisionConfig{gamma}));
    out["gamma_used"] = gamma;
    return respond(200, out);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e.what(), log);
  }
}

ServiceResponse ValidationService::handle_feedback(std::string_view body) {
  const auto req = parse_body(body);
  if (!req) return error_response(400, "request body must be a JSON object");
  const auto label_text = string_field(*req, "label");
  if (!label_text) return error_response(400, "missing field: label");
  const auto label = parse_label(*label_text);
  if (!label || !is_binary(*label)) return error_response(400, "label must be TP or FP, got '" + *label_text + "'");
  const auto labeler = string_field(*req, "labeler");
  if (!labeler) return error_response(400, "missing field: labeler");

  std::optional<std::string> id = string_field(*req, "id");
  try {
    if (!id || !store_.get(*id)) {
      const auto code1 = string_field(*req, "sourceCode_1");
      const auto code2 = string_field(*req, "sourceCode_2");
      if (!code1 || !code2) {
        return error_response(id ? 404 : 400, id ? "unknown pair '" + *id + "' and no source code given"
                                                 : "missing field: id or sourceCode_1/sourceCode_2");
      }
      const std::string lang = string_field(*req, "lang").value_or("Java");
      if (!is_supported_language(lang)) return error_response(422, "unsupported language: " + lang);
      ClonePair pair;
      if (id) pair.id = *id;
      pair.fragment1 = CodeFragment::from_text(*code1, lang);
      pair.fragment2 = CodeFragment::from_text(*code2, lang);
      pair.detector = string_field(*req, "detector").value_or("");
      id = store_.add_pair(std::move(pair), RecordSource::kApiFeedback);
    }
    const StoreRecord rec = store_.record_label(*id, *labeler, *label);
    return respond(200, json{{"id", rec.pair.id},
                             {"label", to_short_string(rec.current_label())},
                             {"history_length", rec.history.size()},
                             {"error_msg", nullptr}});
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e.what());
  }
}

ServiceResponse ValidationService::handle_train(std::string_view body) {
  const auto req = parse_body(body.empty() ? std::string_view("{}") : body);
  if (!req) return error_response(400, "request body must be a JSON object");

  auto request = std::make_shared<TrainRequest>();
  TrainingFilter filter;
  bool wait = false;
  try {
    request->trainer_name = req->value("trainer", cfg_.trainer);
    request->trainer = trainer_preset(request->trainer_name);
    request->k = req->value("k", cfg_.cv_folds);
    request->seed = req->value("seed", cfg_.seed);
    request->model_name = req->value("name", std::string(kDefaultModel));
    wait = req->value("wait", false);
    set_seed(request->trainer, request->seed);
    if (const auto it = req->find("max_epochs"); it != req->end()) {
      if (auto* nn = std::get_if<NeuralNetConfig>(&request->trainer)) nn->max_epochs = it->get<int>();
    }
    if (const auto it = req->find("labelers"); it != req->end()) {
      filter.labelers = it->get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    return error_response(400, std::string("bad train request: ") + e.what());
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e.what());
  }
  if (request->k == 1 || request->k < 0) return error_response(400, "k must be 0 (no cross-validation) or >= 2");

  {
    std::lock_guard lock(job_mutex_);
    if (job_running_) return error_response(409, "a training job is already running");
    job_running_ = true;
    job_state_ = "running";
  }
  auto release = [&](const std::string& state) {
    std::lock_guard lock(job_mutex_);
    job_running_ = false;
    job_state_ = state;
  };

  request->data = store_.assemble_training_set(filter);
  if (!request->data.has_both_classes()) {
    release("failed");
    return error_response(422, "training set needs at least one TruePositive and one FalsePositive pair (" +
                                   std::to_string(request->data.count(Label::kTruePositive)) + " TP, " +
                                   std::to_string(request->data.count(Label::kFalsePositive)) + " FP)");
  }
  if (request->k >= 2 && request->data.size() < static_cast<std::size_t>(request->k)) {
    release("failed");
    return error_response(422, "fewer labeled pairs than folds");
  }

  if (job_thread_.joinable()) job_thread_.join();
  if (wait) {
    run_training(*request);
    return handle_train_status();
  }
  job_thread_ = std::thread([this, request] { run_training(*request); });
  return respond(202, json{{"state", "running"}, {"rows", request->data.size()}});
}

void ValidationService::run_training(const TrainRequest& req) {
  json result;
  std::string state = "done";
  try {
    result["trainer"] = req.trainer_name;
    result["rows"] = req.data.size();
    result["true_positive"] = req.data.count(Label::kTruePositive);
    result["false_positive"] = req.data.count(Label::kFalsePositive);
    if (req.k >= 2) {
      CvConfig cv;
      cv.k = req.k;
      cv.seed = req.seed;
      cv.gamma = cfg_.default_gamma;
      const CvReport report = k_fold_cross_validate(req.data, req.trainer, cv);
      result["cv"] = json{{"k", report.k},
                          {"accuracy", metric_json(report.accuracy)},
                          {"precision", metric_json(report.precision)},
                          {"recall", metric_json(report.recall)},
                          {"f1", metric_json(report.f1)}};
    }
    Model trained = train_model(req.data, req.trainer);
    result["kind"] = model_kind(trained);
    if (!cfg_.model_path.empty() && req.model_name == kDefaultModel) save_model(trained, cfg_.model_path);
    set_model(std::move(trained), req.model_name);
    result["model"] = req.model_name;
  } catch (const std::exception& e) {
    state = "failed";
    result["error_msg"] = e.what();
  }
  std::lock_guard lock(job_mutex_);
  result["state"] = state;
  job_result_ = result.dump();
  job_state_ = state;
  job_running_ = false;
}

ServiceResponse ValidationService::handle_train_status() const {
  std::lock_guard lock(job_mutex_);
  json out{{"state", job_state_}};
  if (!job_result_.empty()) out["last_result"] = json::parse(job_result_);
  return respond(200, out);
}

void ValidationService::wait_for_training() {
  if (job_thread_.joinable()) job_thread_.join();
}

ServiceResponse ValidationService::handle_queue(std::string_view labeler, std::size_t page,
                                                std::size_t page_size) const {
  if (page == 0) return error_response(400, "page numbers start at 1");
  if (page_size == 0) page_size = cfg_.page_size;
  const auto pending = store_.unlabeled();
  const auto served = model();
  const std::size_t first = std::min(pending.size(), (page - 1) * page_size);
  const std::size_t last = std::min(pending.size(), first + page_size);

  json items = json::array();
  for (std::size_t i = first; i < last; ++i) {
    const StoreRecord& rec = pending[i];
    json item{{"id", rec.pair.id},
              {"detector", rec.pair.detector},
              {"source", to_string(rec.source)},
              {"created_at", rec.created_at},
              {"fragment1", fragment_json(rec.pair.fragment1)},
              {"fragment2", fragment_json(rec.pair.fragment2)}};
    try {
      const bool extras = served && input_dims(*served) == kExtendedFeatureCount;
      const FeatureVector fv = store_.features(rec.pair, extras);
      item["features"] = fv.values;
      item["feature_names"] = feature_names(fv.size());
      if (served) item["prediction"] = prediction_json(predict_pair(*served, rec.pair), cfg_.default_gamma);
    } catch (const Error& e) {
      item["error_msg"] = e.what();
    }
    items.push_back(std::move(item));
  }
  return respond(200, json{{"labeler", labeler},
                           {"page", page},
                           {"page_size", page_size},
                           {"total", pending.size()},
                           {"pages", (pending.size() + page_size - 1) / page_size},
                           {"model_loaded", served != nullptr},
                           {"gamma", cfg_.default_gamma},
                           {"items", std::move(items)}});
}

ServiceResponse ValidationService::handle_model() const {
  const auto served = model();
  json out{{"loaded", served != nullptr}, {"gamma", cfg_.default_gamma}};
  if (served) {
    out["kind"] = model_kind(*served);
    out["input_dims"] = input_dims(*served);
    if (!uses_source_text(*served)) out["feature_names"] = feature_names(input_dims(*served));
  }
  json names = json::array();
  {
    std::lock_guard lock(models_mutex_);
    for (const auto& [name, m] : models_) names.push_back(name);
  }
  out["models"] = std::move(names);
  const StoreCounts c = store_.counts();
  out["store"] = json{{"true_positive", c.true_positive}, {"false_positive", c.false_positive},
                      {"unlabeled", c.unlabeled}};
  return respond(200, out);
}

}  // namespace cloneval
