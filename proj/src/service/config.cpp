/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/service/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ontonav/errors.hpp"

namespace ontonav::service {

  namespace fs = std::filesystem;
  using nlohmann::json;

  namespace {

    fs::path resolve(const fs::path &base, const std::string &p) {
      fs::path path(p);
      return path.is_relative() && !base.empty() ? base / path : path;
    }

    template <typename T>
    T unsigned_field(const json &j, const char *key, T fallback) {
      if (!j.contains(key)) {
        return fallback;
      }
      if (!j[key].is_number_unsigned()) {
        throw ConfigError(std::string(key) + " must be a non-negative integer");
      }
      return j[key].get<T>();
    }

    std::string string_field(const json &j, const char *key, std::string fallback) {
      if (!j.contains(key)) {
        return fallback;
      }
      if (!j[key].is_string()) {
        throw ConfigError(std::string(key) + " must be a string");
      }
      return j[key].get<std::string>();
    }

    int parse_port(std::string_view s) {
      int port = 0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), port);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || port < 0 || port > 65535) {
        throw ConfigError("invalid port '" + std::string(s) + "'");
      }
      return port;
    }

  }  // namespace

  std::string Config::base_url() const {
    if (!public_url.empty()) {
      return public_url;
    }
    return "http://" + host + ":" + std::to_string(port);
  }

  Config parse_config(std::string_view json_text, const fs::path &base_dir) {
    json j;
    try {
      j = json::parse(json_text);
    } catch (const json::exception &e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
      throw ConfigError("config: expected an object");
    }
    Config c;
    c.host = string_field(j, "host", c.host);
    if (j.contains("port")) {
      if (!j["port"].is_number_integer()) {
        throw ConfigError("port must be an integer");
      }
      c.port = parse_port(std::to_string(j["port"].get<long long>()));
    }
    if (j.contains("data_dir")) {
      c.data_dir = resolve(base_dir, string_field(j, "data_dir", ""));
    } else if (!base_dir.empty()) {
      c.data_dir = base_dir / c.data_dir;
    }
    if (j.contains("resource_dir")) {
      c.resource_dir = resolve(base_dir, string_field(j, "resource_dir", ""));
    }
    if (j.contains("static_dir")) {
      c.static_dir = resolve(base_dir, string_field(j, "static_dir", ""));
    }
    c.public_url = string_field(j, "public_url", "");

    if (j.contains("providers")) {
      const auto &p = j["providers"];
      if (p.is_string()) {
        c.providers = metaquery::load_providers(resolve(base_dir, p.get<std::string>()));
      } else {
        c.providers = metaquery::parse_providers(p.dump());
      }
    }
    if (j.contains("committee")) {
      if (!j["committee"].is_array()) {
        throw ConfigError("committee must be an array of member ids");
      }
      for (const auto &m : j["committee"]) {
        if (!m.is_string() || m.get<std::string>().empty()) {
          throw ConfigError("committee members must be non-empty strings");
        }
        c.committee.insert(m.get<std::string>());
      }
    }
    c.page_size = unsigned_field(j, "page_size", c.page_size);
    c.default_radius = unsigned_field(j, "default_radius", c.default_radius);
    c.max_radius = unsigned_field(j, "max_radius", c.max_radius);
    if (c.page_size == 0) {
      throw ConfigError("page_size must be positive");
    }
    if (c.default_radius > c.max_radius) {
      throw ConfigError("default_radius exceeds max_radius");
    }
    if (j.contains("thresholds")) {
      const auto &t = j["thresholds"];
      if (!t.is_object()) {
        throw ConfigError("thresholds must be an object");
      }
      c.min_cluster = unsigned_field(t, "min_cluster", c.min_cluster);
      c.min_shared = unsigned_field(t, "min_shared", c.min_shared);
      c.proximity_threshold = unsigned_field(t, "proximity", c.proximity_threshold);
      if (c.min_cluster < 2 || c.min_shared < 2) {
        throw ConfigError("thresholds.min_cluster and min_shared must be at least 2");
      }
      if (c.proximity_threshold == 0) {
        throw ConfigError("thresholds.proximity must be positive");
      }
    }
    if (j.contains("fixtures")) {
      const auto &f = j["fixtures"];
      if (!f.is_object()) {
        throw ConfigError("fixtures must be an object");
      }
      if (f.contains("ccs")) {
        c.ccs_file = resolve(base_dir, string_field(f, "ccs", ""));
      }
      if (f.contains("descriptors")) {
        c.descriptors_file = resolve(base_dir, string_field(f, "descriptors", ""));
      }
      if (f.contains("glossary")) {
        c.glossary_file = resolve(base_dir, string_field(f, "glossary", ""));
      }
    }
    return c;
  }

  Config load_config(const fs::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      throw ConfigError("cannot read config " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), file.parent_path());
  }

  void apply_env(Config &config, const EnvLookup &env) {
    if (auto port = env("ONTONAV_PORT")) {
      config.port = parse_port(*port);
    }
    if (auto dir = env("ONTONAV_DATA_DIR"); dir && !dir->empty()) {
      config.data_dir = *dir;
    }
  }

  void apply_env(Config &config) {
    apply_env(config, [](const char *name) -> std::optional<std::string> {
      const char *v = std::getenv(name);
      return v ? std::optional<std::string>(v) : std::nullopt;
    });
  }

}  // namespace ontonav::service
