/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

// Administrative command line: builds the persisted state and serves it.

#include <csignal>
#include <chrono>
#include <iostream>
#include <pthread.h>
#include <thread>

#include <CLI11.hpp>

#include "ontonav/errors.hpp"
#include "ontonav/service/admin.hpp"
#include "ontonav/service/portal.hpp"
#include "ontonav/service/server.hpp"

namespace fs = std::filesystem;
using namespace ontonav;
using namespace ontonav::service;

namespace {

  fs::path bundled(const char *name) {
    return fs::path(ONTONAV_DEFAULT_DATA_DIR) / name;
  }

  fs::path pick(const std::string &arg, const fs::path &configured, const char *fallback) {
    if (!arg.empty()) {
      return arg;
    }
    return configured.empty() ? bundled(fallback) : configured;
  }

  corpus::Timestamp now() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  }

  void print(const CommandReport &report) {
    for (const auto &line : report.lines) {
      std::cout << line << '\n';
    }
  }

  int serve(const Config &config, const text::TextPipeline &pipeline) {
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto portal = Portal::open(config, pipeline);
    HttpServer server(*portal);
    int port = server.bind(config.host, config.port);
    std::cout << "serving " << config.data_dir.string() << " on http://" << config.host << ":"
              << port << "/api/v1" << std::endl;
    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      server.stop();
    });
    server.run();
    // run() returned on its own: wake the waiter so it can be joined
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return 0;
  }

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Ontology navigation portal administration"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string config_file;
  std::string data_dir;
  app.add_option("-c,--config", config_file, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("-d,--data-dir", data_dir, "Directory holding the persisted state");

  std::string ccs_file;
  auto *ingest_ccs_cmd = app.add_subcommand("ingest-ccs", "Build the ontology from a CCS text file");
  ingest_ccs_cmd->add_option("file", ccs_file, "Taxonomy file (default: bundled CCS 1998)");

  std::string descriptors_file;
  auto *ingest_desc_cmd =
      app.add_subcommand("ingest-descriptors", "Attach implicit subject descriptors");
  ingest_desc_cmd->add_option("file", descriptors_file, "Descriptor file (default: bundled)");

  std::vector<std::string> corpus_files;
  auto *ingest_corpus_cmd =
      app.add_subcommand("ingest-corpus", "Replace the corpus with BibTeX/DBLP files");
  ingest_corpus_cmd->add_option("files", corpus_files, ".bib or .xml files")
      ->required()
      ->check(CLI::ExistingFile);
  std::vector<std::string> update_files;
  auto *update_corpus_cmd =
      app.add_subcommand("update-corpus", "Merge BibTeX/DBLP files into the corpus");
  update_corpus_cmd->add_option("files", update_files, ".bib or .xml files")
      ->required()
      ->check(CLI::ExistingFile);

  std::string lang = "fr";
  std::string glossary_file;
  auto *translate_cmd = app.add_subcommand("translate", "Machine-translate node labels");
  translate_cmd->add_option("--lang", lang, "Target language")->check(CLI::IsMember({"fr"}));
  translate_cmd->add_option("--glossary", glossary_file, "Glossary file (english<TAB>french)");

  std::optional<std::size_t> min_cluster;
  std::optional<std::size_t> min_shared;
  auto *reclassify_cmd =
      app.add_subcommand("reclassify-orphans", "Promote groups of provisional articles");
  reclassify_cmd->add_option("--min-cluster", min_cluster, "Articles needed for a new branch");
  reclassify_cmd->add_option("--min-shared", min_shared, "Shared title lemmas within a group");

  auto *rebuild_cmd =
      app.add_subcommand("rebuild-snapshot", "Re-export and verify both snapshots");

  std::optional<int> port;
  std::string host;
  auto *serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
  serve_cmd->add_option("-p,--port", port, "Listening port");
  serve_cmd->add_option("--host", host, "Listening address");

  CLI11_PARSE(app, argc, argv);

  try {
    Config config = config_file.empty() ? Config() : load_config(config_file);
    if (config.providers.empty()) {
      if (auto providers = bundled("providers.json"); fs::exists(providers)) {
        config.providers = metaquery::load_providers(providers);
      }
    }
    apply_env(config);
    if (!data_dir.empty()) {
      config.data_dir = data_dir;
    }
    if (port) {
      config.port = *port;
    }
    if (!host.empty()) {
      config.host = host;
    }
    if (min_cluster) {
      config.min_cluster = *min_cluster;
    }
    if (min_shared) {
      config.min_shared = *min_shared;
    }
    std::optional<text::TextPipeline> loaded;
    if (!config.resource_dir.empty()) {
      loaded = text::TextPipeline::load(config.resource_dir);
    }
    const auto &pipeline = loaded ? *loaded : text::TextPipeline::shared_default();

    if (ingest_ccs_cmd->parsed()) {
      print(ingest_ccs(config, pick(ccs_file, config.ccs_file, "ccs1998.txt"), pipeline));
    } else if (ingest_desc_cmd->parsed()) {
      print(ingest_descriptors(config, pick(descriptors_file, config.descriptors_file,
                                            "descriptors.txt"),
                               pipeline));
    } else if (ingest_corpus_cmd->parsed() || update_corpus_cmd->parsed()) {
      bool replace = ingest_corpus_cmd->parsed();
      std::vector<fs::path> files;
      for (const auto &f : replace ? corpus_files : update_files) {
        files.emplace_back(f);
      }
      print(ingest_corpus(config, files, replace, now(), pipeline));
    } else if (translate_cmd->parsed()) {
      auto client = translation::GlossaryClient::load(
          pick(glossary_file, config.glossary_file, "glossary.fr.tsv"));
      print(translate(config, parse_language(lang), client, pipeline));
    } else if (reclassify_cmd->parsed()) {
      print(reclassify(config, pipeline));
    } else if (rebuild_cmd->parsed()) {
      print(rebuild_snapshot(config, pipeline));
    } else if (serve_cmd->parsed()) {
      return serve(config, pipeline);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
