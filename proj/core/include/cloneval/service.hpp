#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "cloneval/evaluation.hpp"
#include "cloneval/model.hpp"
#include "cloneval/store.hpp"

namespace cloneval {

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON
};

struct ServiceConfig {
  double default_gamma = 0.5;
  std::string trainer = "nn";
  int cv_folds = 10;
  std::uint64_t seed = 42;
  std::size_t page_size = 20;
  // When set, every successfully trained model is also written here.
  std::filesystem::path model_path;
};

// Transport-independent request handlers for the validation API. Bodies are
// JSON text in both directions. Served models are immutable and replaced as
// a whole, so a request sees either the old or the new model.
class ValidationService {
 public:
  static constexpr std::string_view kDefaultModel = "default";

  explicit ValidationService(CloneStore& store, ServiceConfig cfg = {});
  ~ValidationService();
  ValidationService(const ValidationService&) = delete;
  ValidationService& operator=(const ValidationService&) = delete;

  void set_model(Model model, std::string name = std::string(kDefaultModel));
  std::shared_ptr<const Model> model(std::string_view name = kDefaultModel) const;
  bool has_model() const;

  // POST /api/validate
  ServiceResponse handle_validate(std::string_view body) const;
  // POST /api/feedback
  ServiceResponse handle_feedback(std::string_view body);
  // POST /api/train. Runs in the background unless the body has "wait": true.
  ServiceResponse handle_train(std::string_view body);
  // GET /api/train
  ServiceResponse handle_train_status() const;
  // GET /api/queue; pages are numbered from 1.
  ServiceResponse handle_queue(std::string_view labeler, std::size_t page, std::size_t page_size = 0) const;
  // GET /api/model
  ServiceResponse handle_model() const;

  // Blocks until no training job is running.
  void wait_for_training();

  const ServiceConfig& config() const { return cfg_; }

 private:
  struct TrainRequest;
  void run_training(const TrainRequest& req);

  CloneStore& store_;
  ServiceConfig cfg_;

  mutable std::mutex models_mutex_;
  std::map<std::string, std::shared_ptr<const Model>, std::less<>> models_;

  mutable std::mutex job_mutex_;
  bool job_running_ = false;
  std::string job_state_ = "idle";
  std::string job_result_;  // JSON of the last finished job
  std::thread job_thread_;
};

struct HttpConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "*";
  // Optional directory served at "/", e.g. a built labeling UI.
  std::filesystem::path static_dir;
};

// HTTP/1.1 front end for a ValidationService.
class HttpServer {
 public:
  HttpServer(ValidationService& service, HttpConfig cfg = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and serves on a background thread; returns the bound port.
  // Throws Error(kIo) when the address cannot be bound.
  int start();
  // Binds and serves on the calling thread until stop() is called.
  void run();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cloneval
