/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_CORPUS_CORPUS_HPP
#define ONTONAV_CORPUS_CORPUS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontonav/corpus/record.hpp"
#include "ontonav/ontology/operations.hpp"
#include "ontonav/text/pipeline.hpp"

namespace ontonav::corpus {

  /// Seconds since the Unix epoch.
  using Timestamp = std::int64_t;

  using LemmaIndex = std::map<std::string, std::set<std::string>, std::less<>>;

  /**
   * Article records keyed by id plus the inverted index of their title
   * lemmas. Copies are independent; the service keeps immutable versions.
   */
  class PseudoCorpus {
   public:
    PseudoCorpus() = default;

    const std::map<std::string, ArticleRecord> &records() const noexcept {
      return records_;
    }
    const LemmaIndex &lemma_index() const noexcept {
      return index_;
    }
    Timestamp updated_at() const noexcept {
      return updated_at_;
    }
    std::uint64_t version() const noexcept {
      return version_;
    }
    std::size_t size() const noexcept {
      return records_.size();
    }
    const ArticleRecord *find(std::string_view id) const;

    /// Inserts or replaces by id; returns false when the stored record was equal.
    bool upsert(ArticleRecord record, const text::TextPipeline &pipeline);
    void set_updated_at(Timestamp t) noexcept {
      updated_at_ = t;
    }
    void bump_version() noexcept {
      ++version_;
    }

    /// Index rebuilt from scratch over the current titles.
    LemmaIndex recompute_index(const text::TextPipeline &pipeline) const;

    /// Same records and index; timestamps and versions are ignored.
    bool same_content(const PseudoCorpus &o) const {
      return records_ == o.records_ && index_ == o.index_;
    }

   private:
    void index_record(const ArticleRecord &r, const text::TextPipeline &pipeline);
    void unindex_record(const ArticleRecord &r, const text::TextPipeline &pipeline);

    std::map<std::string, ArticleRecord> records_;
    LemmaIndex index_;
    Timestamp updated_at_ = 0;
    std::uint64_t version_ = 0;
  };

  text::KeywordSet title_lemmas(const ArticleRecord &record,
                                const text::TextPipeline &pipeline);

  /// Upserts the batch in order (a later duplicate id wins) and stamps `now`.
  PseudoCorpus incremental_update(const PseudoCorpus &corpus,
                                  std::span<const ArticleRecord> batch, Timestamp now,
                                  const text::TextPipeline &pipeline);

  /**
   * Records sharing at least one query lemma with their title, by overlap
   * descending, then year descending (unknown last), then id.
   */
  std::vector<const ArticleRecord *> search_internal(const PseudoCorpus &corpus,
                                                     const text::KeywordSet &query_lemmas);

  struct SnapshotCache {
    std::string document;
    std::uint64_t corpus_version = 0;
  };

  /// Sorted `<id> <predicate> <value>` lines; a pure function of the records.
  SnapshotCache build_snapshot(const PseudoCorpus &corpus);

  /// Inverse of build_snapshot. Throws MalformedLine.
  PseudoCorpus parse_snapshot(std::string_view document,
                              const text::TextPipeline &pipeline);

  /// Percent-encodes space, '%' and control bytes.
  std::string encode_triple_value(std::string_view value);
  std::string decode_triple_value(std::string_view value);

  /**
   * Title-to-node scorer with the keyword clusters of one ontology version
   * precomputed. Keeps a reference to the ontology, which must contain the
   * ROOT general bucket.
   */
  class Classifier {
   public:
    Classifier(const ontology::Ontology &ontology, const text::TextPipeline &pipeline);

    std::vector<Assignment> classify(const ArticleRecord &record) const;
    std::vector<Assignment> classify_lemmas(const text::KeywordSet &lemmas) const;

   private:
    struct Entry {
      ontology::NodeId id;
      ontology::NodeKind kind;
      bool scored;
    };

    ontology::NodeId provisional_home(const ontology::NodeId &start) const;

    const ontology::Ontology &ontology_;
    const text::TextPipeline &pipeline_;
    std::vector<Entry> entries_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_lemma_;
  };

  std::vector<Assignment> classify(const ArticleRecord &record,
                                   const ontology::Ontology &ontology,
                                   const text::TextPipeline &pipeline);

  struct ReclassifyResult {
    ontology::Ontology ontology;
    PseudoCorpus corpus;
    std::vector<ontology::NodeId> new_nodes;
  };

  /**
   * Promotes groups of provisional records that share enough title lemmas to
   * a new branch under their bucket's parent. Records are taken in id order
   * and grouped greedily per bucket. Thresholds must be at least 2.
   */
  ReclassifyResult reclassify_orphans(const PseudoCorpus &corpus,
                                      const ontology::Ontology &ontology,
                                      std::size_t min_cluster, std::size_t min_shared,
                                      const text::TextPipeline &pipeline);

  /// Co-assignment evidence for add_proximity_arcs (permanent assignments only).
  std::vector<ontology::CoAssignment> co_assignments(const PseudoCorpus &corpus);

}  // namespace ontonav::corpus

#endif  // ONTONAV_CORPUS_CORPUS_HPP
