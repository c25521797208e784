/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/service/admin.hpp"

#include <fstream>

#include "ontonav/corpus/parsers.hpp"
#include "ontonav/errors.hpp"
#include "ontonav/ontology/operations.hpp"
#include "ontonav/ontology/snapshot.hpp"
#include "ontonav/service/persistence.hpp"
#include "ontonav/translation/proposal_log.hpp"

namespace ontonav::service {

  namespace fs = std::filesystem;

  namespace {

    std::string require_file(const fs::path &file) {
      auto text = read_file(file);
      if (!text) {
        throw StorageError("no such file: " + file.string());
      }
      return std::move(*text);
    }

    std::string lower_extension(const fs::path &p) {
      auto ext = p.extension().string();
      for (auto &c : ext) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      return ext;
    }

  }  // namespace

  std::vector<corpus::ArticleRecord> read_bibliography(const fs::path &file,
                                                       std::vector<std::string> *warnings) {
    auto ext = lower_extension(file);
    if (ext == ".bib") {
      auto result = corpus::parse_bibtex(require_file(file));
      if (warnings) {
        for (auto &w : result.warnings) {
          warnings->push_back(file.filename().string() + ": " + w);
        }
        for (const auto &m : result.missing_titles) {
          warnings->push_back(file.filename().string() + ": " + m.what());
        }
      }
      return std::move(result.records);
    }
    if (ext == ".xml") {
      std::ifstream in(file, std::ios::binary);
      if (!in) {
        throw StorageError("no such file: " + file.string());
      }
      corpus::DblpReader reader(in);
      std::vector<corpus::ArticleRecord> out;
      while (auto r = reader.next()) {
        out.push_back(std::move(*r));
      }
      if (warnings) {
        for (const auto &m : reader.skipped()) {
          warnings->push_back(file.filename().string() + ": " + m.what());
        }
      }
      return out;
    }
    throw ConfigError("unsupported bibliography format: " + file.string()
                      + " (expected .bib or .xml)");
  }

  corpus::PseudoCorpus ingest_records(const corpus::PseudoCorpus &corpus,
                                      std::vector<corpus::ArticleRecord> records,
                                      const ontology::Ontology &ontology, corpus::Timestamp now,
                                      const text::TextPipeline &pipeline) {
    corpus::Classifier classifier(ontology, pipeline);
    for (auto &r : records) {
      if (r.assignments.empty()) {
        r.assignments = classifier.classify(r);
      }
    }
    return corpus::incremental_update(corpus, records, now, pipeline);
  }

  CommandReport ingest_ccs(const Config &config, const fs::path &ccs_file,
                           const text::TextPipeline &pipeline) {
    auto o = ontology::ensure_root_bucket(ontology::load_ccs(require_file(ccs_file), pipeline),
                                          pipeline);
    auto doc = ontology::export_snapshot(o);
    if (!(ontology::import_snapshot(doc) == o)) {
      throw SchemaViolation("/ontology", "snapshot does not round-trip");
    }
    StateFiles files{config.data_dir};
    write_atomic(files.ontology(), doc);
    return {{"ontology: " + std::to_string(o.size()) + " nodes written to "
             + files.ontology().string()}};
  }

  CommandReport ingest_descriptors(const Config &config, const fs::path &file,
                                   const text::TextPipeline &pipeline) {
    StateFiles files{config.data_dir};
    auto o = read_ontology(files, pipeline);
    auto descriptors = ontology::load_descriptors(require_file(file));
    auto attached = ontology::attach_descriptors(o, descriptors, pipeline);
    write_ontology(files, attached);
    return {{"descriptors: " + std::to_string(descriptors.size()) + " attached, ontology now "
             + std::to_string(attached.size()) + " nodes"}};
  }

  CommandReport ingest_corpus(const Config &config, std::span<const fs::path> inputs, bool replace,
                              corpus::Timestamp now, const text::TextPipeline &pipeline) {
    StateFiles files{config.data_dir};
    auto o = read_ontology(files, pipeline);
    auto base = replace ? corpus::PseudoCorpus() : read_corpus(files, pipeline);
    CommandReport report;
    std::vector<corpus::ArticleRecord> batch;
    for (const auto &f : inputs) {
      auto records = read_bibliography(f, &report.lines);
      batch.insert(batch.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
    }
    auto updated = ingest_records(base, std::move(batch), o, now, pipeline);
    auto related = ontology::add_proximity_arcs(o, corpus::co_assignments(updated),
                                                config.proximity_threshold);
    write_corpus(files, updated);
    if (!(related == o)) {
      write_ontology(files, related);
    }
    report.lines.push_back("corpus: " + std::to_string(updated.size()) + " records");
    return report;
  }

  CommandReport translate(const Config &config, Language language, translation::MtClient &client,
                          const text::TextPipeline &pipeline) {
    StateFiles files{config.data_dir};
    auto loaded = load_state(files, config.committee, pipeline);
    auto result = translation::machine_translate_all(loaded.ontology, loaded.store, language, client);
    std::string lines;
    std::size_t written = 0;
    for (const auto &t : result.translations) {
      const auto *cur = loaded.store.machine(t.node, t.language);
      if (cur && cur->label == t.label) {
        continue;
      }
      if (!lines.empty()) {
        lines.push_back('\n');
      }
      lines += translation::log_translated(t);
      ++written;
    }
    if (!lines.empty()) {
      append_line(files.log(), lines);
    }
    CommandReport report{{"translate: " + std::to_string(written) + " labels written, "
                          + std::to_string(result.failures.size()) + " fell back to English"}};
    for (const auto &f : result.failures) {
      report.lines.push_back("  no translation for " + f.str());
    }
    return report;
  }

  CommandReport reclassify(const Config &config, const text::TextPipeline &pipeline) {
    StateFiles files{config.data_dir};
    auto o = read_ontology(files, pipeline);
    auto c = read_corpus(files, pipeline);
    auto r = corpus::reclassify_orphans(c, o, config.min_cluster, config.min_shared, pipeline);
    if (!r.new_nodes.empty()) {
      write_ontology(files, r.ontology);
      write_corpus(files, r.corpus);
    }
    CommandReport report{{"reclassify: " + std::to_string(r.new_nodes.size()) + " new branches"}};
    for (const auto &n : r.new_nodes) {
      report.lines.push_back("  " + n.str() + " " + r.ontology.node(n).label);
    }
    return report;
  }

  CommandReport rebuild_snapshot(const Config &config, const text::TextPipeline &pipeline) {
    StateFiles files{config.data_dir};
    auto o = read_ontology(files, pipeline);
    ontology::verify_invariants(o);
    auto c = read_corpus(files, pipeline);
    auto onto_doc = ontology::export_snapshot(o);
    auto corpus_doc = corpus::build_snapshot(c).document;
    if (ontology::export_snapshot(ontology::import_snapshot(onto_doc)) != onto_doc) {
      throw SchemaViolation("/ontology", "snapshot is not byte-stable");
    }
    if (corpus::build_snapshot(corpus::parse_snapshot(corpus_doc, pipeline)).document
        != corpus_doc) {
      throw MalformedLine(0, "corpus snapshot is not byte-stable");
    }
    for (const auto &[id, rec] : c.records()) {
      for (const auto &a : rec.assignments) {
        if (!o.contains(a.node)) {
          throw UnknownNode(a.node.str() + "' assigned to '" + id);
        }
      }
    }
    write_atomic(files.ontology(), onto_doc);
    write_atomic(files.corpus(), corpus_doc);
    return {{"snapshot: " + std::to_string(o.size()) + " nodes, " + std::to_string(c.size())
             + " records"}};
  }

}  // namespace ontonav::service
