/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/translation/proposal_log.hpp"

#include <json.hpp>

#include "ontonav/errors.hpp"

namespace ontonav::translation {

  using nlohmann::json;

  std::string log_submitted(const TranslationProposal &p) {
    return json{{"event", "submitted"},
                {"proposal_id", p.id},
                {"node", p.node.str()},
                {"language", to_string(p.language)},
                {"text", p.text},
                {"submitter", p.submitter},
                {"at", p.submitted_at}}
        .dump();
  }

  std::string log_verdict(std::string_view proposal_id, std::string_view member, Verdict verdict) {
    json j{{"proposal_id", proposal_id}, {"member", member}};
    if (verdict == Verdict::approve) {
      j["event"] = "validated";
    } else {
      j["event"] = "rejected";
      j["keep"] = verdict == Verdict::reject_with_keep;
    }
    return j.dump();
  }

  std::string log_translated(const NodeTranslation &t) {
    return json{{"event", "translated"},
                {"node", t.node.str()},
                {"language", to_string(t.language)},
                {"label", t.label}}
        .dump();
  }

  std::string log_entry(const NodeId &node, Language language, std::string_view text) {
    return json{{"event", "entry"},
                {"node", node.str()},
                {"language", to_string(language)},
                {"text", text}}
        .dump();
  }

  ReplayResult replay_log(std::string_view log, TranslationStore store,
                          ontology::Ontology ontology, const text::TextPipeline &pipeline) {
    ReplayResult r{std::move(store), std::move(ontology), 0};
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < log.size()) {
      auto end = log.find('\n', start);
      if (end == std::string_view::npos) {
        end = log.size();
      }
      auto line = log.substr(start, end - start);
      start = end + 1;
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
        continue;
      }
      try {
        auto j = json::parse(line);
        auto event = j.at("event").get<std::string>();
        auto node = [&] { return ontology::NodeId::parse(j.at("node").get<std::string>()); };
        auto lang = [&] { return parse_language(j.at("language").get<std::string>()); };
        if (event == "submitted") {
          auto sub = submit_proposal(r.store, r.ontology, node(), lang(),
                                     j.at("text").get<std::string>(),
                                     j.at("submitter").get<std::string>(),
                                     j.at("at").get<Timestamp>());
          if (sub.proposal.id != j.at("proposal_id").get<std::string>()) {
            throw MalformedLine(line_no, "proposal id out of sequence");
          }
          r.store = std::move(sub.store);
        } else if (event == "validated" || event == "rejected") {
          auto verdict = event == "validated"       ? Verdict::approve
                       : j.value("keep", false) ? Verdict::reject_with_keep
                                                     : Verdict::reject;
          auto v = validate_proposal(r.store, r.ontology, j.at("proposal_id").get<std::string>(),
                                     j.at("member").get<std::string>(), verdict, pipeline);
          r.store = std::move(v.store);
          r.ontology = std::move(v.ontology);
        } else if (event == "translated") {
          NodeTranslation t{node(), lang(), j.at("label").get<std::string>(),
                            TranslationStatus::machine, TranslationSource::mt_client};
          r.ontology.node(t.node);
          r.store = apply_machine_translations(r.store, {t});
        } else if (event == "entry") {
          auto reg = register_alternative_entry(r.store, r.ontology, node(), lang(),
                                                j.at("text").get<std::string>(), pipeline);
          r.store = std::move(reg.store);
          r.ontology = std::move(reg.ontology);
        } else {
          throw MalformedLine(line_no, "unknown event '" + event + "'");
        }
      } catch (const MalformedLine &) {
        throw;
      } catch (const std::exception &e) {
        throw MalformedLine(line_no, e.what());
      }
      ++r.events;
    }
    return r;
  }

}  // namespace ontonav::translation
