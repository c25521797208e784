/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_SERVICE_CONFIG_HPP
#define ONTONAV_SERVICE_CONFIG_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontonav/metaquery/metaquery.hpp"

namespace ontonav::service {

  /**
   * Service and CLI settings. JSON keys (all optional):
   *
   *   host, port, data_dir, resource_dir, static_dir, public_url,
   *   providers (array or path to a providers file), committee (array),
   *   page_size, default_radius, max_radius,
   *   thresholds {min_cluster, min_shared, proximity},
   *   fixtures {ccs, descriptors, glossary}
   *
   * Relative paths are resolved against the config file's directory.
   */
  struct Config {
    std::string host = "127.0.0.1";
    int port = 8080;
    /// Persisted state: ontology.xml, corpus.triples, proposals.log.
    std::filesystem::path data_dir = "state";
    /// Stop lists and lemma tables; empty means the built-in default.
    std::filesystem::path resource_dir;
    /// Optional static bundle mounted at "/".
    std::filesystem::path static_dir;
    /// Base URL used in feed links; defaults to http://host:port.
    std::string public_url;

    std::vector<metaquery::ProviderTemplate> providers;
    std::set<std::string> committee;

    std::size_t page_size = 20;
    unsigned default_radius = 1;
    unsigned max_radius = 6;

    std::size_t min_cluster = 3;
    std::size_t min_shared = 2;
    std::size_t proximity_threshold = 2;

    std::filesystem::path ccs_file;
    std::filesystem::path descriptors_file;
    std::filesystem::path glossary_file;

    std::string base_url() const;
  };

  /// Throws ConfigError.
  Config parse_config(std::string_view json_text, const std::filesystem::path &base_dir = {});
  Config load_config(const std::filesystem::path &file);

  /// ONTONAV_PORT and ONTONAV_DATA_DIR override the file values.
  using EnvLookup = std::function<std::optional<std::string>(const char *)>;
  void apply_env(Config &config, const EnvLookup &env);
  void apply_env(Config &config);

}  // namespace ontonav::service

#endif  // ONTONAV_SERVICE_CONFIG_HPP
