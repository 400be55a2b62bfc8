#include <atomic>
#include <thread>

#include "cloneval/error.hpp"
#include "cloneval/service.hpp"
#include "httplib.h"
#include "json.hpp"

namespace cloneval {

struct HttpServer::Impl {
  ValidationService& service;
  HttpConfig cfg;
  httplib::Server server;
  std::thread thread;
  std::atomic<int> port{0};

  Impl(ValidationService& s, HttpConfig c) : service(s), cfg(std::move(c)) {}

  static void send(httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  }

  static std::size_t size_param(const httplib::Request& req, const char* key, std::size_t fallback) {
    if (!req.has_param(key)) return fallback;
    try {
      const long long v = std::stoll(req.get_param_value(key));
      return v < 0 ? 0 : static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      return 0;
    }
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", cfg.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Post("/api/validate", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.handle_validate(req.body));
    });
    server.Post("/api/feedback", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.handle_feedback(req.body));
    });
    server.Post("/api/train", [this](const httplib::Request& req, httplib::Response& res) {
      send(res, service.handle_train(req.body));
    });
    server.Get("/api/train", [this](const httplib::Request&, httplib::Response& res) {
      send(res, service.handle_train_status());
    });
    server.Get("/api/queue", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string labeler = req.has_param("labeler") ? req.get_param_value("labeler") : "";
      send(res, service.handle_queue(labeler, size_param(req, "page", 1), size_param(req, "page_size", 0)));
    });
    server.Get("/api/model", [this](const httplib::Request&, httplib::Response& res) {
      send(res, service.handle_model());
    });
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      std::string msg = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        msg = e.what();
      } catch (...) {
      }
      send(res, ServiceResponse{500, nlohmann::ordered_json{{"log_msg", ""}, {"error_msg", msg}}.dump()});
    });
    if (!cfg.static_dir.empty()) server.set_mount_point("/", cfg.static_dir.string());
  }

  void bind() {
    routes();
    const int bound = cfg.port == 0 ? server.bind_to_any_port(cfg.host) : server.bind_to_port(cfg.host, cfg.port)
                                                                             ? cfg.port
                                                                             : -1;
    if (bound <= 0) {
      throw Error(ErrorCode::kIo, "cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
    }
    port = bound;
  }
};

HttpServer::HttpServer(ValidationService& service, HttpConfig cfg)
    : impl_(std::make_unique<Impl>(service, std::move(cfg))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start() {
  impl_->bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void HttpServer::run() {
  impl_->bind();
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int HttpServer::port() const { return impl_->port; }

}  // namespace cloneval
