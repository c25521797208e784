/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_CORPUS_RECORD_HPP
#define ONTONAV_CORPUS_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontonav/language.hpp"
#include "ontonav/ontology/node_id.hpp"

namespace ontonav::corpus {

  enum class AssignmentStatus { permanent, provisional };

  struct Assignment {
    ontology::NodeId node = ontology::NodeId::root();
    AssignmentStatus status = AssignmentStatus::permanent;

    bool operator==(const Assignment &) const = default;
  };

  enum class TitleLanguage { en, fr, other };

  std::string_view to_string(TitleLanguage lang);
  std::optional<TitleLanguage> parse_title_language(std::string_view s);

  struct ArticleRecord {
    std::string id;
    std::string title;
    std::optional<int> year;
    std::string context;
    std::vector<std::string> authors;
    std::optional<std::string> uri;
    std::optional<TitleLanguage> language;
    std::vector<Assignment> assignments;

    bool operator==(const ArticleRecord &) const = default;
  };

  /// "h" + FNV-1a 64 hex of the normalized title and the year.
  std::string derived_record_id(std::string_view title, std::optional<int> year);

  /// Language used to lemmatize the title (French only when declared so).
  Language lemma_language(const ArticleRecord &record);

}  // namespace ontonav::corpus

#endif  // ONTONAV_CORPUS_RECORD_HPP
