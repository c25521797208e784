/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/corpus/record.hpp"

#include <cstdio>

#include "ontonav/text/pipeline.hpp"

namespace ontonav::corpus {

  std::string_view to_string(TitleLanguage lang) {
    switch (lang) {
      case TitleLanguage::en: return "en";
      case TitleLanguage::fr: return "fr";
      case TitleLanguage::other: return "other";
    }
    return "other";
  }

  std::optional<TitleLanguage> parse_title_language(std::string_view s) {
    for (auto l : {TitleLanguage::en, TitleLanguage::fr, TitleLanguage::other}) {
      if (to_string(l) == s) {
        return l;
      }
    }
    return std::nullopt;
  }

  std::string derived_record_id(std::string_view title, std::optional<int> year) {
    auto key = text::TextPipeline::normalize_phrase(title) + "|"
             + (year ? std::to_string(*year) : std::string("?"));
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : key) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "h%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  Language lemma_language(const ArticleRecord &record) {
    return record.language == TitleLanguage::fr ? Language::fr : Language::en;
  }

}  // namespace ontonav::corpus
