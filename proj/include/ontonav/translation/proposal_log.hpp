/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_TRANSLATION_PROPOSAL_LOG_HPP
#define ONTONAV_TRANSLATION_PROPOSAL_LOG_HPP

#include <string>
#include <string_view>

#include "ontonav/translation/translation.hpp"

namespace ontonav::translation {

  // One JSON object per line. Events: submitted, validated, rejected,
  // translated (machine label) and entry (direct alternative entry).

  std::string log_submitted(const TranslationProposal &proposal);
  std::string log_verdict(std::string_view proposal_id, std::string_view member, Verdict verdict);
  std::string log_translated(const NodeTranslation &translation);
  std::string log_entry(const NodeId &node, Language language, std::string_view text);

  struct ReplayResult {
    TranslationStore store;
    ontology::Ontology ontology;
    std::size_t events = 0;
  };

  /**
   * Re-applies a log on top of an initial state. Throws MalformedLine for
   * lines that do not parse or do not re-apply (the original error is kept
   * in the message).
   */
  ReplayResult replay_log(std::string_view log, TranslationStore store,
                          ontology::Ontology ontology, const text::TextPipeline &pipeline);

}  // namespace ontonav::translation

#endif  // ONTONAV_TRANSLATION_PROPOSAL_LOG_HPP
