/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_METAQUERY_METAQUERY_HPP
#define ONTONAV_METAQUERY_METAQUERY_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ontonav/corpus/record.hpp"
#include "ontonav/ontology/ontology.hpp"

namespace ontonav::metaquery {

  inline constexpr std::string_view kPlaceholder = "{keywords}";
  inline constexpr std::size_t kDefaultMaxKeywords = 8;

  struct ProviderTemplate {
    std::string name;
    std::string url_template;
    std::string joiner = "+";
    std::optional<std::size_t> max_keywords = kDefaultMaxKeywords;

    bool operator==(const ProviderTemplate &) const = default;
  };

  /**
   * Throws BadTemplate unless the template holds the placeholder exactly
   * once, starts with an absolute scheme and authority, has no raw spaces or
   * non-ASCII bytes, and the joiner has no '%' but at least one reserved
   * character (so it cannot occur inside an encoded keyword).
   */
  void validate(const ProviderTemplate &provider);

  /// Default scholar provider used for articles without a URI.
  ProviderTemplate scholar_provider();

  /// Reads a JSON array of {name, url_template, joiner?, max_keywords?}.
  std::vector<ProviderTemplate> parse_providers(std::string_view json_text);
  std::vector<ProviderTemplate> load_providers(const std::filesystem::path &file);

  struct MetaQuery {
    std::string provider;
    std::string url;
    std::vector<std::string> keywords;

    bool operator==(const MetaQuery &) const = default;
  };

  struct DirectUri {
    std::string uri;

    bool operator==(const DirectUri &) const = default;
  };

  /// RFC 3986: everything except ALPHA / DIGIT / "-" / "." / "_" / "~" becomes %XX.
  std::string percent_encode(std::string_view s);
  /// Inverse of percent_encode; throws std::invalid_argument on a bad escape.
  std::string percent_decode(std::string_view s);

  /// Throws EmptyKeywords, BadTemplate.
  MetaQuery generate(std::vector<std::string> keywords, const ProviderTemplate &provider);

  /// Splits the keyword segment of `url` back into keywords.
  std::vector<std::string> decode_keywords(std::string_view url, const ProviderTemplate &provider);

  /// One query per provider from the node's ordered cluster; empty for an empty cluster.
  std::vector<MetaQuery> context_queries(const ontology::Ontology &ontology,
                                         const ontology::NodeId &node,
                                         const std::vector<ProviderTemplate> &providers);

  using ArticleLink = std::variant<MetaQuery, DirectUri>;

  /// The record's URI, else a query for the quoted title plus the first author's surname.
  ArticleLink scholar_fallback(const corpus::ArticleRecord &record,
                               const ProviderTemplate &scholar = scholar_provider());

  /// Last name of "First Last" or "Last, First".
  std::string surname(std::string_view author);

  /// @article, or @inproceedings when the venue looks like proceedings.
  std::string export_bibtex(const corpus::ArticleRecord &record);

  /// Dublin Core (key, value) pairs for embedding in an article page.
  std::vector<std::pair<std::string, std::string>> export_embedded_metadata(
      const corpus::ArticleRecord &record);

}  // namespace ontonav::metaquery

#endif  // ONTONAV_METAQUERY_METAQUERY_HPP
