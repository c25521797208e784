/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/service/server.hpp"

#include <stdexcept>

#include <httplib.h>

namespace ontonav::service {

  struct HttpServer::Impl {
    Portal &portal;
    httplib::Server server;

    void forward(const httplib::Request &req, httplib::Response &res) {
      Request r;
      r.method = req.method;
      r.path = req.path;
      for (const auto &[k, v] : req.params) {
        r.query.emplace(k, v);  // first value wins for repeated keys
      }
      r.body = req.body;
      auto out = portal.handle(r);
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    }
  };

  HttpServer::HttpServer(Portal &portal) : impl_(new Impl{portal, {}}) {
    auto handler = [this](const httplib::Request &req, httplib::Response &res) {
      impl_->forward(req, res);
    };
    impl_->server.Get("/api/v1/.*", handler);
    impl_->server.Post("/api/v1/.*", handler);
    impl_->server.Put("/api/v1/.*", handler);
    impl_->server.Delete("/api/v1/.*", handler);
    const auto &dir = portal.config().static_dir;
    if (!dir.empty()) {
      impl_->server.set_mount_point("/", dir.string());
    }
  }

  HttpServer::~HttpServer() {
    stop();
  }

  int HttpServer::bind(const std::string &host, int port) {
    if (port == 0) {
      int bound = impl_->server.bind_to_any_port(host);
      if (bound < 0) {
        throw std::runtime_error("cannot bind " + host);
      }
      return bound;
    }
    if (!impl_->server.bind_to_port(host, port)) {
      throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    return port;
  }

  void HttpServer::run() {
    impl_->server.listen_after_bind();
  }

  void HttpServer::stop() {
    if (impl_->server.is_running()) {
      impl_->server.stop();
    }
  }

  void HttpServer::wait_until_ready() const {
    impl_->server.wait_until_ready();
  }

}  // namespace ontonav::service
