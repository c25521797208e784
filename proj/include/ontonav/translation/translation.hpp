/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_TRANSLATION_TRANSLATION_HPP
#define ONTONAV_TRANSLATION_TRANSLATION_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontonav/language.hpp"
#include "ontonav/ontology/ontology.hpp"
#include "ontonav/text/pipeline.hpp"

namespace ontonav::translation {

  using Timestamp = std::int64_t;
  using ontology::NodeId;

  enum class TranslationStatus { machine, proposed, validated };
  enum class TranslationSource { mt_client, community };

  std::string_view to_string(TranslationStatus s);
  std::string_view to_string(TranslationSource s);

  struct NodeTranslation {
    NodeId node;
    Language language = Language::fr;
    std::string label;
    TranslationStatus status = TranslationStatus::machine;
    TranslationSource source = TranslationSource::mt_client;

    bool operator==(const NodeTranslation &) const = default;
    auto operator<=>(const NodeTranslation &o) const {
      return std::tie(node, language, label) <=> std::tie(o.node, o.language, o.label);
    }
  };

  enum class ProposalState { open, accepted, rejected };
  std::string_view to_string(ProposalState s);

  struct TranslationProposal {
    std::string id;
    NodeId node;
    Language language = Language::fr;
    std::string text;
    std::string submitter;
    std::set<std::string> validations;
    ProposalState state = ProposalState::open;
    Timestamp submitted_at = 0;

    bool operator==(const TranslationProposal &) const = default;
  };

  /// Searchable alternative phrasing of a node; never shown while browsing.
  struct AlternativeEntry {
    NodeId node;
    Language language = Language::fr;
    std::string text;
    text::KeywordSet lemmas;

    bool operator==(const AlternativeEntry &) const = default;
  };

  struct FeedItem {
    std::string guid;
    std::string title;
    std::string description;
    Timestamp pub_date = 0;
    bool closed = false;

    bool operator==(const FeedItem &) const = default;
  };

  enum class Verdict { approve, reject, reject_with_keep };
  std::string_view to_string(Verdict v);
  std::optional<Verdict> parse_verdict(std::string_view s);

  /**
   * Translations, proposals, alternative entries and feed items at one point
   * in time. All operations return a new value.
   */
  class TranslationStore {
   public:
    TranslationStore() = default;
    explicit TranslationStore(std::set<std::string> committee)
        : committee_(std::move(committee)) {}

    const std::set<std::string> &committee() const noexcept {
      return committee_;
    }
    /// Machine and validated labels (open proposals excluded).
    std::vector<NodeTranslation> translations() const;
    const NodeTranslation *validated(const NodeId &node, Language lang) const;
    const NodeTranslation *machine(const NodeId &node, Language lang) const;
    const std::map<std::string, TranslationProposal> &proposals() const noexcept {
      return proposals_;
    }
    const TranslationProposal *proposal(std::string_view id) const;
    const std::vector<AlternativeEntry> &entries() const noexcept {
      return entries_;
    }
    const std::map<std::string, FeedItem> &feed_items() const noexcept {
      return feed_;
    }
    std::uint64_t next_proposal_number() const noexcept {
      return next_id_;
    }

    /// Label shown in `lang`: validated, else machine, else the English label.
    std::string display_label(const ontology::Ontology &ontology, const NodeId &node,
                              Language lang) const;

    bool operator==(const TranslationStore &) const = default;

   private:
    friend class StoreEditor;

    using Key = std::pair<NodeId, Language>;
    std::set<std::string> committee_;
    std::map<Key, NodeTranslation> machine_;
    std::map<Key, NodeTranslation> validated_;
    std::map<std::string, TranslationProposal> proposals_;
    std::vector<AlternativeEntry> entries_;
    std::map<std::string, FeedItem> feed_;
    std::uint64_t next_id_ = 1;
  };

  /// Text in, text out. Implementations throw ClientUnavailable on failure.
  class MtClient {
   public:
    virtual ~MtClient() = default;
    virtual std::string translate(std::string_view text, Language from, Language to) = 0;
  };

  /**
   * Offline client backed by an `english<TAB>french` glossary. Phrases are
   * matched token-wise, longest first; unmatched words pass through.
   */
  class GlossaryClient : public MtClient {
   public:
    GlossaryClient() = default;
    static GlossaryClient parse(std::string_view source);
    static GlossaryClient load(const std::filesystem::path &file);

    void add(std::string_view english, std::string french);
    std::string translate(std::string_view text, Language from, Language to) override;

   private:
    std::map<std::vector<std::string>, std::string> phrases_;
    std::size_t longest_ = 0;
  };

  struct MachineTranslationResult {
    std::set<NodeTranslation> translations;
    /// Nodes whose client call failed; their label is the English one.
    std::vector<NodeId> failures;
  };

  /// One machine label per node (ROOT included) without a validated label.
  MachineTranslationResult machine_translate_all(const ontology::Ontology &ontology,
                                                 const TranslationStore &store,
                                                 Language language, MtClient &client);

  TranslationStore apply_machine_translations(const TranslationStore &store,
                                              const std::set<NodeTranslation> &translations);

  struct Submission {
    TranslationStore store;
    TranslationProposal proposal;
    FeedItem item;
  };

  /// Throws UnknownNode, EmptyText.
  Submission submit_proposal(const TranslationStore &store, const ontology::Ontology &ontology,
                             const NodeId &node, Language language, std::string text,
                             std::string submitter, Timestamp now);

  struct Validation {
    TranslationStore store;
    ontology::Ontology ontology;
    TranslationProposal proposal;
    std::optional<AlternativeEntry> entry;
  };

  /**
   * Applies one committee verdict. Checks, in order: UnknownProposal,
   * NotCommitteeMember, AlreadyClosed, SelfValidation (approvals only).
   * Two distinct approvals accept; any reject closes. reject_with_keep also
   * registers the proposal text as an alternative entry.
   */
  Validation validate_proposal(const TranslationStore &store, const ontology::Ontology &ontology,
                               std::string_view proposal_id, const std::string &member,
                               Verdict verdict, const text::TextPipeline &pipeline);

  struct Registration {
    TranslationStore store;
    ontology::Ontology ontology;
    AlternativeEntry entry;
  };

  /// Stores the entry and adds its lemmas to the node as folksonomy keywords.
  Registration register_alternative_entry(const TranslationStore &store,
                                          const ontology::Ontology &ontology, const NodeId &node,
                                          Language language, std::string text,
                                          const text::TextPipeline &pipeline);

  enum class MatchStage { exact_label, alternative_entry, lemma_overlap, not_found };
  std::string_view to_string(MatchStage s);

  struct RankedNode {
    NodeId node;
    std::size_t score = 0;
  };

  struct Resolution {
    MatchStage stage = MatchStage::not_found;
    std::vector<RankedNode> nodes;
    std::string message;  ///< set when nothing matched

    bool found() const noexcept {
      return !nodes.empty();
    }
  };

  /// `"<text>" does not exist in <Language> in the ACM ontology`
  std::string not_found_message(std::string_view text, Language language);

  /**
   * Exact label match in `language`, then exact alternative-entry match, then
   * lemma overlap with keyword clusters plus entry lemmas (score descending,
   * node id ascending).
   */
  Resolution resolve_query(std::string_view text, Language language,
                           const ontology::Ontology &ontology, const TranslationStore &store,
                           const text::TextPipeline &pipeline);

  enum class FeedFilter { open, all };

  /// RFC 822 date in UTC, e.g. "Thu, 15 Oct 2026 08:00:00 +0000".
  std::string rfc822(Timestamp t);

  std::string feed(const TranslationStore &store, FeedFilter filter,
                   std::string_view channel_link);

}  // namespace ontonav::translation

#endif  // ONTONAV_TRANSLATION_TRANSLATION_HPP
