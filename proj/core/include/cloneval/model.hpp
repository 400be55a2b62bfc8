#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cloneval/dataset.hpp"
#include "cloneval/naive_bayes.hpp"
#include "cloneval/neural_net.hpp"
#include "cloneval/prediction.hpp"
#include "cloneval/tfidf.hpp"

namespace cloneval {

using Model = std::variant<NeuralNetModel, NaiveBayesModel, TfIdfBaselineModel>;
using TrainerConfig = std::variant<NeuralNetConfig, NaiveBayesConfig, TfIdfConfig>;

// "neural_net", "naive_bayes" or "tfidf_baseline".
std::string_view model_kind(const Model& model);

// Named presets: "nn" (one hidden layer of 107), "deep" (3x32 ReLU, dropout
// 0.5), "bayes", "fica". Throws Error(kInvalidArgument) otherwise.
TrainerConfig trainer_preset(std::string_view name);

// True when the trainer or model works from source text rather than features.
bool uses_source_text(const TrainerConfig& cfg);
bool uses_source_text(const Model& model);

// Feature width the model was trained on (0 for the TF-IDF baseline).
std::size_t input_dims(const Model& model);

// Overrides the seed for trainers that take one.
void set_seed(TrainerConfig& cfg, std::uint64_t seed);

Model train_model(const TrainingSet& ts, const TrainerConfig& cfg, const EpochObserver& observer = {});

// Feature-vector models only; the TF-IDF baseline throws
// Error(kInvalidArgument) because it needs the pair text.
Prediction predict(const Model& model, const FeatureVector& x);

// Works for every model kind. Features are extracted on demand at the
// width the model expects.
Prediction predict_pair(const Model& model, const ClonePair& pair);

// Predictions for each row of a set; uses ts.pairs for the TF-IDF baseline.
std::vector<Prediction> predict_rows(const Model& model, const TrainingSet& ts);

// Appends the labeled feedback pairs to `base` and retrains. A neural net is
// warm-started from `current` when the config asks for it. Throws
// Error(kInvalidArgument) on an unlabeled feedback pair.
Model update_with_feedback(const Model* current, const TrainingSet& base, const std::vector<ClonePair>& feedback,
                           const TrainerConfig& cfg);

}  // namespace cloneval
