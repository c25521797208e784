/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_SERVICE_ADMIN_HPP
#define ONTONAV_SERVICE_ADMIN_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ontonav/corpus/corpus.hpp"
#include "ontonav/service/config.hpp"
#include "ontonav/text/pipeline.hpp"
#include "ontonav/translation/translation.hpp"

// Administrative commands over the files in Config::data_dir. Each one reads
// what it needs, runs the module operation and writes its results back.

namespace ontonav::service {

  /// Records from a .bib or DBLP-style .xml file (chosen by extension).
  std::vector<corpus::ArticleRecord> read_bibliography(const std::filesystem::path &file,
                                                       std::vector<std::string> *warnings = nullptr);

  /// Classifies records without assignments, then upserts them.
  corpus::PseudoCorpus ingest_records(const corpus::PseudoCorpus &corpus,
                                      std::vector<corpus::ArticleRecord> records,
                                      const ontology::Ontology &ontology, corpus::Timestamp now,
                                      const text::TextPipeline &pipeline);

  struct CommandReport {
    std::vector<std::string> lines;
  };

  /// Builds the ontology from the flat taxonomy text; replaces ontology.xml.
  CommandReport ingest_ccs(const Config &config, const std::filesystem::path &ccs_file,
                           const text::TextPipeline &pipeline);

  CommandReport ingest_descriptors(const Config &config, const std::filesystem::path &file,
                                   const text::TextPipeline &pipeline);

  /// `replace` starts from an empty corpus; otherwise the batch is merged.
  /// Co-assignments then add isRelatedTo arcs to the ontology.
  CommandReport ingest_corpus(const Config &config, std::span<const std::filesystem::path> files,
                              bool replace, corpus::Timestamp now,
                              const text::TextPipeline &pipeline);

  /// Machine labels for nodes without one, appended to the proposal log.
  CommandReport translate(const Config &config, Language language, translation::MtClient &client,
                          const text::TextPipeline &pipeline);

  CommandReport reclassify(const Config &config, const text::TextPipeline &pipeline);

  /// Re-exports both snapshots and checks that they round-trip byte for byte.
  CommandReport rebuild_snapshot(const Config &config, const text::TextPipeline &pipeline);

}  // namespace ontonav::service

#endif  // ONTONAV_SERVICE_ADMIN_HPP
