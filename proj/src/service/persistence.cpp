/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/service/persistence.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "ontonav/errors.hpp"
#include "ontonav/ontology/operations.hpp"
#include "ontonav/ontology/snapshot.hpp"
#include "ontonav/translation/proposal_log.hpp"

namespace ontonav::service {

  namespace fs = std::filesystem;

  std::optional<std::string> read_file(const fs::path &path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) {
      return std::nullopt;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw StorageError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void write_atomic(const fs::path &path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) {
      fs::create_directories(path.parent_path(), ec);
    }
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.flush();
      if (!out) {
        fs::remove(tmp, ec);
        throw StorageError("cannot write " + tmp.string());
      }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw StorageError("cannot replace " + path.string());
    }
  }

  void append_line(const fs::path &path, std::string_view line) {
    std::error_code ec;
    if (path.has_parent_path()) {
      fs::create_directories(path.parent_path(), ec);
    }
    std::string buf(line);
    buf.push_back('\n');
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) {
      throw StorageError("cannot append to " + path.string());
    }
  }

  ontology::Ontology read_ontology(const StateFiles &files, const text::TextPipeline &pipeline) {
    auto doc = read_file(files.ontology());
    if (!doc) {
      return ontology::ensure_root_bucket(ontology::Ontology(), pipeline);
    }
    return ontology::import_snapshot(*doc);
  }

  void write_ontology(const StateFiles &files, const ontology::Ontology &ontology) {
    write_atomic(files.ontology(), ontology::export_snapshot(ontology));
  }

  corpus::PseudoCorpus read_corpus(const StateFiles &files, const text::TextPipeline &pipeline) {
    auto doc = read_file(files.corpus());
    if (!doc) {
      return {};
    }
    return corpus::parse_snapshot(*doc, pipeline);
  }

  void write_corpus(const StateFiles &files, const corpus::PseudoCorpus &corpus) {
    write_atomic(files.corpus(), corpus::build_snapshot(corpus).document);
  }

  LoadedState load_state(const StateFiles &files, const std::set<std::string> &committee,
                         const text::TextPipeline &pipeline) {
    auto onto = read_ontology(files, pipeline);
    auto corpus = read_corpus(files, pipeline);
    translation::TranslationStore store(committee);
    if (auto log = read_file(files.log())) {
      auto replay = translation::replay_log(*log, std::move(store), std::move(onto), pipeline);
      return {std::move(replay.ontology), std::move(corpus), std::move(replay.store)};
    }
    return {std::move(onto), std::move(corpus), std::move(store)};
  }

}  // namespace ontonav::service
