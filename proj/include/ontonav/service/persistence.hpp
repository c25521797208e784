/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_SERVICE_PERSISTENCE_HPP
#define ONTONAV_SERVICE_PERSISTENCE_HPP

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ontonav/corpus/corpus.hpp"
#include "ontonav/ontology/ontology.hpp"
#include "ontonav/text/pipeline.hpp"
#include "ontonav/translation/translation.hpp"

namespace ontonav::service {

  /// Locations of the persisted artifacts inside a data directory.
  struct StateFiles {
    std::filesystem::path dir;

    std::filesystem::path ontology() const {
      return dir / "ontology.xml";
    }
    std::filesystem::path corpus() const {
      return dir / "corpus.triples";
    }
    std::filesystem::path log() const {
      return dir / "proposals.log";
    }
  };

  /// Whole file, or nullopt when it does not exist. Throws StorageError.
  std::optional<std::string> read_file(const std::filesystem::path &path);

  /// Writes `path.tmp` then renames it over `path`. Throws StorageError.
  void write_atomic(const std::filesystem::path &path, std::string_view content);

  /// Appends one line (a trailing newline is added). Throws StorageError.
  void append_line(const std::filesystem::path &path, std::string_view line);

  /// Missing file: ROOT plus its general bucket.
  ontology::Ontology read_ontology(const StateFiles &files, const text::TextPipeline &pipeline);
  void write_ontology(const StateFiles &files, const ontology::Ontology &ontology);

  /// Missing file: empty corpus.
  corpus::PseudoCorpus read_corpus(const StateFiles &files, const text::TextPipeline &pipeline);
  void write_corpus(const StateFiles &files, const corpus::PseudoCorpus &corpus);

  struct LoadedState {
    ontology::Ontology ontology;
    corpus::PseudoCorpus corpus;
    translation::TranslationStore store;
  };

  /// Snapshot files plus the replayed proposal log.
  LoadedState load_state(const StateFiles &files, const std::set<std::string> &committee,
                         const text::TextPipeline &pipeline);

}  // namespace ontonav::service

#endif  // ONTONAV_SERVICE_PERSISTENCE_HPP
