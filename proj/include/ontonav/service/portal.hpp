/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_SERVICE_PORTAL_HPP
#define ONTONAV_SERVICE_PORTAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "ontonav/corpus/corpus.hpp"
#include "ontonav/metaquery/metaquery.hpp"
#include "ontonav/ontology/ontology.hpp"
#include "ontonav/service/config.hpp"
#include "ontonav/service/persistence.hpp"
#include "ontonav/text/pipeline.hpp"
#include "ontonav/translation/translation.hpp"

namespace ontonav::service {

  /// Everything the read endpoints look at. Never mutated once published.
  struct PortalState {
    ontology::Ontology ontology;
    corpus::PseudoCorpus corpus;
    translation::TranslationStore store;
    std::vector<metaquery::ProviderTemplate> providers;
  };

  struct Request {
    std::string method = "GET";
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
  };

  struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
  };

  /**
   * Holds the current state behind a shared pointer. Readers take a snapshot
   * without waiting on writers; writers are serialized, persist first and
   * publish the new state afterwards, so a failed write leaves both the files
   * and the served state unchanged.
   */
  class Portal {
   public:
    using Clock = std::function<translation::Timestamp()>;

    /// Without `files` nothing is persisted.
    Portal(Config config, const text::TextPipeline &pipeline, PortalState state,
           std::optional<StateFiles> files = std::nullopt, Clock clock = {});

    /// Loads snapshots and replays the proposal log from config.data_dir.
    static std::unique_ptr<Portal> open(const Config &config, const text::TextPipeline &pipeline,
                                        Clock clock = {});

    std::shared_ptr<const PortalState> state() const;
    const Config &config() const noexcept {
      return config_;
    }

    /// Routes /api/v1 requests; never throws.
    Response handle(const Request &request);

    translation::Submission submit(const ontology::NodeId &node, Language language,
                                   std::string text, std::string submitter);
    translation::Validation validate(std::string_view proposal_id, const std::string &member,
                                     translation::Verdict verdict);
    translation::Registration register_entry(const ontology::NodeId &node, Language language,
                                             std::string text);

   private:
    Response dispatch(const Request &request);
    void publish(std::shared_ptr<const PortalState> next);
    void persist_line(const std::string &line);

    Config config_;
    const text::TextPipeline &pipeline_;
    std::optional<StateFiles> files_;
    Clock clock_;

    mutable std::mutex state_mutex_;
    std::shared_ptr<const PortalState> state_;
    std::mutex writer_mutex_;
  };

}  // namespace ontonav::service

#endif  // ONTONAV_SERVICE_PORTAL_HPP
