#include "cloneval/model_io.hpp"

#include <fstream>
#include <sstream>

#include "cloneval/error.hpp"
#include "json.hpp"

namespace cloneval {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kTfIdfScheme = "type1-token-ngrams";

std::string tfidf_fingerprint(int n) {
  char buf[17];
  const std::string key = std::string(kTfIdfScheme) + ";n=" + std::to_string(n);
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
  return buf;
}

Json features_block(std::size_t dims) {
  Json names = Json::array();
  for (const auto& n : feature_names(dims)) names.push_back(n);
  return Json{{"names", names}, {"fingerprint", feature_fingerprint(dims)}};
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const NeuralNetModel& m) {
  Json layers = Json::array();
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    Json bias = Json::array();
    for (Eigen::Index i = 0; i < m.biases[l].size(); ++i) bias.push_back(m.biases[l](i));
    layers.push_back(Json{{"weights", matrix_json(m.weights[l])}, {"bias", bias}});
  }
  return Json{{"layer_sizes", m.layer_sizes},
              {"hidden_activation", to_string(m.hidden_activation)},
              {"output_activation", "softmax"},
              {"dropout_p", m.dropout_p},
              {"seed", m.seed},
              {"epochs_trained", m.epochs_trained},
              {"scaling", Json{{"min", m.scaler.lo}, {"max", m.scaler.hi}}},
              {"layers", layers}};
}

Json to_json(const NaiveBayesModel& m) {
  auto kdes = [](const std::vector<KernelDensity>& v) {
    Json out = Json::array();
    for (const auto& k : v) out.push_back(Json{{"bandwidth", k.bandwidth}, {"samples", k.samples}});
    return out;
  };
  return Json{{"prior_tp", m.prior_tp}, {"prior_fp", m.prior_fp}, {"kde_tp", kdes(m.tp)}, {"kde_fp", kdes(m.fp)}};
}

Json to_json(const TfIdfBaselineModel& m) {
  auto docs = [](const std::vector<TermCounts>& v) {
    Json out = Json::array();
    for (const auto& d : v) {
      Json terms = Json::array();
      for (const auto& [t, c] : d) terms.push_back(Json::array({t, c}));
      out.push_back(std::move(terms));
    }
    return out;
  };
  return Json{{"n", m.n()},
              {"true_docs", docs(m.true_docs())},
              {"false_docs", docs(m.false_docs())},
              {"true_weights", m.true_weights()},
              {"false_weights", m.false_weights()}};
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kMalformedDocument, std::string("model document lacks '") + key + "'");
  }
  return j.at(key);
}

void check_features(const Json& doc, std::size_t dims) {
  const Json& f = require(doc, "features");
  const auto fingerprint = require(f, "fingerprint").get<std::string>();
  const auto names = require(f, "names").get<std::vector<std::string>>();
  if (names.size() != dims) {
    throw Error(ErrorCode::kFeatureOrderMismatch, "document lists " + std::to_string(names.size()) +
                                                      " features but the model takes " + std::to_string(dims));
  }
  if (fingerprint != feature_fingerprint(dims) || names != feature_names(dims)) {
    throw Error(ErrorCode::kFeatureOrderMismatch, "feature order differs from this build (fingerprint " +
                                                      fingerprint + ")");
  }
}

NeuralNetModel nn_from_json(const Json& p) {
  NeuralNetModel m;
  m.layer_sizes = require(p, "layer_sizes").get<std::vector<int>>();
  m.hidden_activation = parse_activation(require(p, "hidden_activation").get<std::string>());
  m.dropout_p = require(p, "dropout_p").get<double>();
  m.seed = require(p, "seed").get<std::uint64_t>();
  m.epochs_trained = require(p, "epochs_trained").get<int>();
  const Json& scaling = require(p, "scaling");
  m.scaler.lo = require(scaling, "min").get<std::vector<double>>();
  m.scaler.hi = require(scaling, "max").get<std::vector<double>>();
  const Json& layers = require(p, "layers");
  if (m.layer_sizes.size() < 2 || layers.size() + 1 != m.layer_sizes.size() || m.layer_sizes.back() != 2 ||
      m.scaler.lo.size() != static_cast<std::size_t>(m.layer_sizes.front()) ||
      m.scaler.hi.size() != m.scaler.lo.size()) {
    throw Error(ErrorCode::kMalformedDocument, "layer sizes disagree with the stored layers");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const int in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
    const auto w = require(layers[l], "weights").get<std::vector<std::vector<double>>>();
    const auto b = require(layers[l], "bias").get<std::vector<double>>();
    if (w.size() != static_cast<std::size_t>(in) || b.size() != static_cast<std::size_t>(out)) {
      throw Error(ErrorCode::kMalformedDocument, "layer " + std::to_string(l) + " has the wrong shape");
    }
    Eigen::MatrixXd wm(in, out);
    for (int r = 0; r < in; ++r) {
      if (w[r].size() != static_cast<std::size_t>(out)) {
        throw Error(ErrorCode::kMalformedDocument, "layer " + std::to_string(l) + " has a ragged row");
      }
      for (int c = 0; c < out; ++c) wm(r, c) = w[r][c];
    }
    m.weights.push_back(std::move(wm));
    m.biases.push_back(Eigen::Map<const Eigen::VectorXd>(b.data(), out));
  }
  return m;
}

NaiveBayesModel nb_from_json(const Json& p) {
  NaiveBayesModel m;
  m.prior_tp = require(p, "prior_tp").get<double>();
  m.prior_fp = require(p, "prior_fp").get<double>();
  auto kdes = [](const Json& arr) {
    std::vector<KernelDensity> out;
    for (const auto& k : arr) {
      KernelDensity d;
      d.bandwidth = require(k, "bandwidth").get<double>();
      d.samples = require(k, "samples").get<std::vector<double>>();
      if (!(d.bandwidth > 0.0) || d.samples.empty()) {
        throw Error(ErrorCode::kMalformedDocument, "kernel density needs samples and a positive bandwidth");
      }
      out.push_back(std::move(d));
    }
    return out;
  };
  m.tp = kdes(require(p, "kde_tp"));
  m.fp = kdes(require(p, "kde_fp"));
  if (m.tp.size() != m.fp.size()) throw Error(ErrorCode::kMalformedDocument, "class densities differ in width");
  return m;
}

TfIdfBaselineModel tfidf_from_json(const Json& p) {
  auto docs = [](const Json& arr) {
    std::vector<TermCounts> out;
    for (const auto& d : arr) {
      TermCounts counts;
      for (const auto& entry : d) counts[entry.at(0).get<std::string>()] = entry.at(1).get<int>();
      out.push_back(std::move(counts));
    }
    return out;
  };
  return TfIdfBaselineModel(require(p, "n").get<int>(), docs(require(p, "true_docs")),
                            docs(require(p, "false_docs")), require(p, "true_weights").get<std::vector<double>>(),
                            require(p, "false_weights").get<std::vector<double>>());
}

}  // namespace

std::string serialize_model(const Model& model) {
  Json doc;
  doc["format"] = kModelFormatVersion;
  doc["kind"] = model_kind(model);
  if (const auto* nn = std::get_if<NeuralNetModel>(&model)) {
    doc["features"] = features_block(nn->input_dims());
    doc["params"] = to_json(*nn);
  } else if (const auto* nb = std::get_if<NaiveBayesModel>(&model)) {
    doc["features"] = features_block(nb->input_dims());
    doc["params"] = to_json(*nb);
  } else {
    const auto& tf = std::get<TfIdfBaselineModel>(model);
    doc["features"] = Json{{"scheme", kTfIdfScheme}, {"fingerprint", tfidf_fingerprint(tf.n())}};
    doc["params"] = to_json(tf);
  }
  return doc.dump(1) + "\n";
}

Model deserialize_model(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, std::string("model document is not JSON: ") + e.what());
  }
  try {
    const auto format = require(doc, "format").get<std::string>();
    if (format != kModelFormatVersion) {
      throw Error(ErrorCode::kVersionMismatch,
                  "model format '" + format + "' is not '" + std::string(kModelFormatVersion) + "'");
    }
    const auto kind = require(doc, "kind").get<std::string>();
    const Json& params = require(doc, "params");
    if (kind == "neural_net") {
      NeuralNetModel m = nn_from_json(params);
      check_features(doc, m.input_dims());
      return m;
    }
    if (kind == "naive_bayes") {
      NaiveBayesModel m = nb_from_json(params);
      check_features(doc, m.input_dims());
      return m;
    }
    if (kind == "tfidf_baseline") {
      TfIdfBaselineModel m = tfidf_from_json(params);
      if (require(require(doc, "features"), "fingerprint").get<std::string>() != tfidf_fingerprint(m.n())) {
        throw Error(ErrorCode::kFeatureOrderMismatch, "n-gram scheme differs from this build");
      }
      return m;
    }
    throw Error(ErrorCode::kMalformedDocument, "unknown model kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, std::string("model document has a bad field: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << serialize_model(model);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

}  // namespace cloneval
