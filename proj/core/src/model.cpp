#include "cloneval/model.hpp"

#include "cloneval/error.hpp"

namespace cloneval {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view model_kind(const Model& model) {
  return std::visit(Overloaded{
                        [](const NeuralNetModel&) { return std::string_view("neural_net"); },
                        [](const NaiveBayesModel&) { return std::string_view("naive_bayes"); },
                        [](const TfIdfBaselineModel&) { return std::string_view("tfidf_baseline"); },
                    },
                    model);
}

TrainerConfig trainer_preset(std::string_view name) {
  if (name == "nn") return NeuralNetConfig{};
  if (name == "deep") return NeuralNetConfig::deep();
  if (name == "bayes") return NaiveBayesConfig{};
  if (name == "fica") return TfIdfConfig{};
  throw Error(ErrorCode::kInvalidArgument, "unknown model '" + std::string(name) + "' (nn, deep, bayes, fica)");
}

bool uses_source_text(const TrainerConfig& cfg) { return std::holds_alternative<TfIdfConfig>(cfg); }
bool uses_source_text(const Model& model) { return std::holds_alternative<TfIdfBaselineModel>(model); }

std::size_t input_dims(const Model& model) {
  return std::visit(Overloaded{
                        [](const NeuralNetModel& m) { return m.input_dims(); },
                        [](const NaiveBayesModel& m) { return m.input_dims(); },
                        [](const TfIdfBaselineModel&) { return std::size_t{0}; },
                    },
                    model);
}

void set_seed(TrainerConfig& cfg, std::uint64_t seed) {
  if (auto* nn = std::get_if<NeuralNetConfig>(&cfg)) nn->seed = seed;
}

Model train_model(const TrainingSet& ts, const TrainerConfig& cfg, const EpochObserver& observer) {
  return std::visit(Overloaded{
                        [&](const NeuralNetConfig& c) -> Model { return train_neural_net(ts, c, observer); },
                        [&](const NaiveBayesConfig& c) -> Model { return train_naive_bayes(ts, c); },
                        [&](const TfIdfConfig& c) -> Model { return train_tfidf(ts, c); },
                    },
                    cfg);
}

Prediction predict(const Model& model, const FeatureVector& x) {
  return std::visit(Overloaded{
                        [&](const NeuralNetModel& m) { return m.predict(x); },
                        [&](const NaiveBayesModel& m) { return m.predict(x); },
                        [&](const TfIdfBaselineModel&) -> Prediction {
                          throw Error(ErrorCode::kInvalidArgument,
                                      "the TF-IDF baseline scores clone pairs, not feature vectors");
                        },
                    },
                    model);
}

Prediction predict_pair(const Model& model, const ClonePair& pair) {
  if (const auto* fica = std::get_if<TfIdfBaselineModel>(&model)) return fica->predict(pair);
  const bool extras = input_dims(model) == kExtendedFeatureCount;
  return predict(model, extract_features(pair, extras));
}

std::vector<Prediction> predict_rows(const Model& model, const TrainingSet& ts) {
  if (const auto* fica = std::get_if<TfIdfBaselineModel>(&model)) {
    if (!ts.has_pairs()) throw Error(ErrorCode::kInvalidArgument, "the TF-IDF baseline needs pair text");
    std::vector<Prediction> out;
    out.reserve(ts.size());
    for (const auto& p : ts.pairs) out.push_back(fica->predict(p));
    return out;
  }
  if (const auto* nn = std::get_if<NeuralNetModel>(&model)) return nn->predict(ts.x);
  std::vector<Prediction> out;
  out.reserve(ts.size());
  for (const auto& x : ts.x) out.push_back(predict(model, x));
  return out;
}

Model update_with_feedback(const Model* current, const TrainingSet& base, const std::vector<ClonePair>& feedback,
                           const TrainerConfig& cfg) {
  for (const auto& p : feedback) {
    if (!is_binary(p.label)) {
      throw Error(ErrorCode::kInvalidArgument, "feedback pair '" + p.id + "' carries no label");
    }
  }
  TrainingSet ts = base;
  const bool extras = base.dims() == kExtendedFeatureCount;
  const bool keep_pairs = base.has_pairs() || base.empty();
  auto features = extract_features_batch(feedback, extras);
  for (std::size_t i = 0; i < feedback.size(); ++i) {
    ts.add(feedback[i].id, std::move(features[i]), feedback[i].label, keep_pairs ? &feedback[i] : nullptr);
  }
  if (const auto* nn_cfg = std::get_if<NeuralNetConfig>(&cfg)) {
    const auto* nn = current != nullptr ? std::get_if<NeuralNetModel>(current) : nullptr;
    return train_neural_net(ts, *nn_cfg, {}, nn_cfg->warm_start ? nn : nullptr);
  }
  return train_model(ts, cfg);
}

}  // namespace cloneval
