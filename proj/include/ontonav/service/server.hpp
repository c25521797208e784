/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_SERVICE_SERVER_HPP
#define ONTONAV_SERVICE_SERVER_HPP

#include <memory>
#include <string>

#include "ontonav/service/portal.hpp"

namespace ontonav::service {

  /// HTTP listener forwarding /api/v1 to a Portal; serves static_dir at "/".
  class HttpServer {
   public:
    explicit HttpServer(Portal &portal);
    ~HttpServer();
    HttpServer(const HttpServer &) = delete;
    HttpServer &operator=(const HttpServer &) = delete;

    /// Binds host:port (port 0 picks a free one) and returns the bound port.
    /// Throws std::runtime_error when binding fails.
    int bind(const std::string &host, int port);
    /// Serves until stop(); blocks.
    void run();
    void stop();
    void wait_until_ready() const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
  };

}  // namespace ontonav::service

#endif  // ONTONAV_SERVICE_SERVER_HPP
