/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_TEXT_PIPELINE_HPP
#define ONTONAV_TEXT_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ontonav/language.hpp"

namespace ontonav::text {

  using KeywordSet = std::set<std::string>;

  /// Unordered lemma pair, stored with first < second.
  using LemmaPair = std::pair<std::string, std::string>;
  using CooccurrenceMap = std::map<LemmaPair, std::size_t>;

  class StopList {
   public:
    StopList() = default;
    StopList(Language lang, std::set<std::string> words);

    /// One word per line, `#` starts a comment. Entries are lowercased.
    static StopList parse(Language lang, std::istream &in);

    Language language() const noexcept {
      return lang_;
    }
    const std::set<std::string, std::less<>> &words() const noexcept {
      return words_;
    }
    bool contains(std::string_view word) const;

   private:
    Language lang_ = Language::en;
    std::set<std::string, std::less<>> words_;
  };

  /// `surface<TAB>lemma` table consulted before the suffix rules.
  class ExceptionDictionary {
   public:
    static ExceptionDictionary parse(std::istream &in);

    void add(std::string surface, std::string lemma);
    const std::string *find(const std::string &surface) const;
    std::size_t size() const noexcept {
      return table_.size();
    }
    const std::unordered_map<std::string, std::string> &entries() const noexcept {
      return table_;
    }

   private:
    std::unordered_map<std::string, std::string> table_;
  };

  /// Lowercase tokens, split on whitespace, '/', '-' and punctuation.
  /// '+' and '#' stay attached to a preceding word ("c++", "c#").
  std::vector<std::string> tokenize(std::string_view text);

  /// Pairwise co-occurrence counts over keyword sets; zero counts are absent.
  CooccurrenceMap cooccurrence_stats(std::span<const KeywordSet> documents);

  /**
   * Stop-word filtering and lemmatization for English and French.
   *
   * Tables are immutable after construction, so one instance can be shared
   * by any number of threads.
   */
  class TextPipeline {
   public:
    TextPipeline(StopList english, StopList french,
                 ExceptionDictionary english_exceptions,
                 ExceptionDictionary french_exceptions);

    /// Reads stoplist.{en,fr}.txt and lemmas.{en,fr}.tsv from `data_dir`.
    static TextPipeline load(const std::filesystem::path &data_dir);

    /// Pipeline over the data directory shipped with the sources.
    static const TextPipeline &shared_default();

    const StopList &stop_list(Language lang) const;

    std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                              Language lang) const;

    std::string lemmatize(std::string_view token, Language lang) const;

    /// Lemmas in first-occurrence order, deduplicated.
    std::vector<std::string> keywords_in_order(std::string_view text,
                                               Language lang) const;

    KeywordSet extract_keywords(std::string_view text, Language lang) const;

    /// Tokens folded and joined by single spaces; used for exact phrase matching.
    static std::string normalize_phrase(std::string_view text);

   private:
    const ExceptionDictionary &exceptions(Language lang) const;
    void close_dictionary(ExceptionDictionary &dict, Language lang);

    StopList english_;
    StopList french_;
    ExceptionDictionary english_exceptions_;
    ExceptionDictionary french_exceptions_;
  };

  /// Suffix rules alone, without the exception table. Exposed for tests.
  std::string apply_suffix_rules(std::string_view folded, Language lang);

}  // namespace ontonav::text

#endif  // ONTONAV_TEXT_PIPELINE_HPP
