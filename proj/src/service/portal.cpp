/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/service/portal.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

#include <json.hpp>

#include "ontonav/errors.hpp"
#include "ontonav/ontology/operations.hpp"
#include "ontonav/ontology/snapshot.hpp"
#include "ontonav/translation/proposal_log.hpp"

namespace ontonav::service {

  using nlohmann::json;
  using ontology::NodeId;

  namespace {

    constexpr std::string_view kApi = "/api/v1";

    class BadRequest : public Error {
     public:
      using Error::Error;
    };

    class MethodNotAllowed : public Error {
     public:
      using Error::Error;
    };

    class RouteNotFound : public Error {
     public:
      using Error::Error;
    };

    Response json_response(int status, const json &body) {
      return {status, "application/json", body.dump()};
    }

    Response error_response(int status, std::string_view kind, std::string_view message) {
      return json_response(status, json{{"error", kind}, {"message", message}});
    }

    bool starts_with(std::string_view s, std::string_view prefix) {
      return s.substr(0, prefix.size()) == prefix;
    }

    bool ends_with(std::string_view s, std::string_view suffix) {
      return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
    }

    std::optional<std::string> param(const Request &r, const std::string &key) {
      auto it = r.query.find(key);
      return it == r.query.end() ? std::nullopt : std::optional(it->second);
    }

    Language language_param(const Request &r) {
      auto v = param(r, "lang");
      if (!v || v->empty()) {
        return Language::en;
      }
      try {
        return parse_language(*v);
      } catch (const UnknownLanguage &e) {
        throw BadRequest(e.what());
      }
    }

    unsigned unsigned_param(const Request &r, const std::string &key, unsigned fallback) {
      auto v = param(r, key);
      if (!v || v->empty()) {
        return fallback;
      }
      unsigned out = 0;
      auto res = std::from_chars(v->data(), v->data() + v->size(), out);
      if (res.ec != std::errc{} || res.ptr != v->data() + v->size()) {
        throw BadRequest(key + " must be a non-negative integer");
      }
      return out;
    }

    NodeId node_param(std::string_view s) {
      auto id = NodeId::try_parse(s);
      if (!id) {
        throw UnknownNode(std::string(s));
      }
      return *id;
    }

    json parse_body(const Request &r) {
      try {
        auto j = json::parse(r.body);
        if (!j.is_object()) {
          throw BadRequest("request body must be a JSON object");
        }
        return j;
      } catch (const json::exception &e) {
        throw BadRequest(std::string("invalid JSON body: ") + e.what());
      }
    }

    std::string body_string(const json &j, const char *key, bool required = true) {
      if (!j.contains(key)) {
        if (required) {
          throw BadRequest(std::string("missing field '") + key + "'");
        }
        return {};
      }
      if (!j[key].is_string()) {
        throw BadRequest(std::string("field '") + key + "' must be a string");
      }
      return j[key].get<std::string>();
    }

    Language body_language(const json &j) {
      auto tag = body_string(j, "lang", false);
      if (tag.empty()) {
        tag = body_string(j, "language", false);
      }
      if (tag.empty()) {
        return Language::fr;
      }
      try {
        return parse_language(tag);
      } catch (const UnknownLanguage &e) {
        throw BadRequest(e.what());
      }
    }

    json record_summary(const corpus::ArticleRecord &r) {
      return {{"id", r.id},
              {"title", r.title},
              {"year", r.year ? json(*r.year) : json(nullptr)},
              {"context", r.context},
              {"authors", r.authors}};
    }

    json record_json(const corpus::ArticleRecord &r) {
      auto j = record_summary(r);
      j["uri"] = r.uri ? json(*r.uri) : json(nullptr);
      j["language"] = r.language ? json(corpus::to_string(*r.language)) : json(nullptr);
      json assignments = json::array();
      for (const auto &a : r.assignments) {
        assignments.push_back(
            {{"node", a.node.str()},
             {"status", a.status == corpus::AssignmentStatus::permanent ? "permanent"
                                                                        : "provisional"}});
      }
      j["assignments"] = std::move(assignments);
      return j;
    }

    json metaquery_json(const metaquery::MetaQuery &q) {
      return {{"provider", q.provider}, {"url", q.url}, {"keywords", q.keywords}};
    }

    json proposal_json(const translation::TranslationProposal &p) {
      return {{"id", p.id},
              {"node", p.node.str()},
              {"language", to_string(p.language)},
              {"text", p.text},
              {"submitter", p.submitter},
              {"validations", p.validations},
              {"state", translation::to_string(p.state)},
              {"submitted_at", p.submitted_at}};
    }

    json entry_json(const translation::AlternativeEntry &e) {
      return {{"node", e.node.str()},
              {"language", to_string(e.language)},
              {"text", e.text},
              {"lemmas", e.lemmas}};
    }

    /// Hits for a lemma set, one page of them plus the total count.
    json hits_json(const corpus::PseudoCorpus &corpus, const text::KeywordSet &lemmas,
                   std::size_t page, std::size_t page_size) {
      auto hits = corpus::search_internal(corpus, lemmas);
      json list = json::array();
      auto first = std::min(hits.size(), (page - 1) * page_size);
      auto last = std::min(hits.size(), first + page_size);
      for (auto i = first; i < last; ++i) {
        list.push_back(record_summary(*hits[i]));
      }
      return {{"total", hits.size()}, {"page", page}, {"hits", std::move(list)}};
    }

    class Reader {
     public:
      Reader(const PortalState &state, const Config &config, const text::TextPipeline &pipeline)
          : s_(state), config_(config), pipeline_(pipeline) {}

      json node_summary(const NodeId &id, Language lang) const {
        const auto &n = s_.ontology.node(id);
        return {{"id", id.str()},
                {"label", s_.store.display_label(s_.ontology, id, lang)},
                {"kind", ontology::to_string(n.kind)},
                {"parent", n.parent ? json(n.parent->str()) : json(nullptr)},
                {"depth", n.depth}};
      }

      json context_block(const NodeId &id, Language lang) const {
        auto cluster = ontology::keyword_cluster_ordered(s_.ontology, id);
        text::KeywordSet lemmas(cluster.begin(), cluster.end());
        json queries = json::array();
        for (const auto &q : metaquery::context_queries(s_.ontology, id, s_.providers)) {
          queries.push_back(metaquery_json(q));
        }
        auto hits = hits_json(s_.corpus, lemmas, 1, config_.page_size);
        json related = json::array();
        for (const auto &r : s_.ontology.related(id)) {
          related.push_back({{"id", r.str()},
                             {"label", s_.store.display_label(s_.ontology, r, lang)}});
        }
        return {{"node", id.str()},
                {"labels",
                 {{"en", s_.store.display_label(s_.ontology, id, Language::en)},
                  {"fr", s_.store.display_label(s_.ontology, id, Language::fr)}}},
                {"cluster", cluster},
                {"metaqueries", std::move(queries)},
                {"internal_hits", hits["hits"]},
                {"internal_total", hits["total"]},
                {"related", std::move(related)}};
      }

      Response navigate(const NodeId &id, const Request &r) const {
        auto lang = language_param(r);
        auto radius = unsigned_param(r, "radius", config_.default_radius);
        if (radius > config_.max_radius) {
          throw BadRequest("radius exceeds " + std::to_string(config_.max_radius));
        }
        auto sub = ontology::focus_context(s_.ontology, id, radius);
        json nodes = json::array();
        for (const auto &n : sub.nodes) {
          nodes.push_back(node_summary(n, lang));
        }
        json arcs = json::array();
        for (const auto &a : sub.arcs) {
          arcs.push_back({{"kind", ontology::to_string(a.kind)},
                          {"from", a.from.str()},
                          {"to", a.to.str()},
                          {"provenance", ontology::to_string(a.provenance)}});
        }
        return json_response(200, {{"focus", node_summary(id, lang)},
                                   {"language", to_string(lang)},
                                   {"radius", radius},
                                   {"nodes", std::move(nodes)},
                                   {"arcs", std::move(arcs)},
                                   {"context", context_block(id, lang)}});
      }

      Response search(const Request &r) const {
        auto q = param(r, "q").value_or("");
        if (q.find_first_not_of(" \t\r\n") == std::string::npos) {
          throw BadRequest("q must not be empty");
        }
        auto lang = language_param(r);
        auto res = translation::resolve_query(q, lang, s_.ontology, s_.store, pipeline_);
        if (!res.found()) {
          return json_response(404, {{"error", "NotFound"},
                                     {"message", res.message},
                                     {"query", q},
                                     {"language", to_string(lang)}});
        }
        json results = json::array();
        auto shown = std::min(res.nodes.size(), config_.page_size);
        for (std::size_t i = 0; i < shown; ++i) {
          const auto &n = res.nodes[i];
          auto item = node_summary(n.node, lang);
          item["score"] = n.score;
          item["context"] = context_block(n.node, lang);
          results.push_back(std::move(item));
        }
        return json_response(200, {{"query", q},
                                   {"language", to_string(lang)},
                                   {"stage", translation::to_string(res.stage)},
                                   {"total", res.nodes.size()},
                                   {"results", std::move(results)}});
      }

      Response article_search(const Request &r) const {
        auto q = param(r, "q").value_or("");
        if (q.find_first_not_of(" \t\r\n") == std::string::npos) {
          throw BadRequest("q must not be empty");
        }
        auto lang = language_param(r);
        auto page = unsigned_param(r, "page", 1);
        if (page == 0) {
          throw BadRequest("page starts at 1");
        }
        auto lemmas = pipeline_.extract_keywords(q, lang);
        auto body = hits_json(s_.corpus, lemmas, page, config_.page_size);
        body["query"] = q;
        body["lemmas"] = lemmas;
        return json_response(200, body);
      }

      const corpus::ArticleRecord &article(const std::string &id) const {
        const auto *rec = s_.corpus.find(id);
        if (!rec) {
          throw UnknownArticle(id);
        }
        return *rec;
      }

      Response article_page(const std::string &id) const {
        const auto &rec = article(id);
        json metadata = json::array();
        for (const auto &[k, v] : metaquery::export_embedded_metadata(rec)) {
          metadata.push_back({{"name", k}, {"content", v}});
        }
        json link;
        auto fallback = metaquery::scholar_fallback(rec, scholar());
        if (const auto *direct = std::get_if<metaquery::DirectUri>(&fallback)) {
          link = {{"type", "direct"}, {"uri", direct->uri}};
        } else {
          link = metaquery_json(std::get<metaquery::MetaQuery>(fallback));
          link["type"] = "scholar";
        }
        return json_response(
            200, {{"article", record_json(rec)},
                  {"metadata", std::move(metadata)},
                  {"bibtex", std::string(kApi) + "/articles/" + metaquery::percent_encode(id)
                                 + "/bibtex"},
                  {"link", std::move(link)}});
      }

      Response bibtex(const std::string &id) const {
        return {200, "text/plain; charset=utf-8", metaquery::export_bibtex(article(id))};
      }

      Response feed(const Request &r) const {
        auto filter = param(r, "filter").value_or("open");
        translation::FeedFilter f;
        if (filter == "open") {
          f = translation::FeedFilter::open;
        } else if (filter == "all") {
          f = translation::FeedFilter::all;
        } else {
          throw BadRequest("filter must be 'open' or 'all'");
        }
        return {200, "application/rss+xml; charset=utf-8",
                translation::feed(s_.store, f,
                                  config_.base_url() + std::string(kApi)
                                      + "/feeds/translations.rss")};
      }

      Response snapshot() const {
        return {200, "application/xml; charset=utf-8", ontology::export_snapshot(s_.ontology)};
      }

     private:
      metaquery::ProviderTemplate scholar() const {
        for (const auto &p : s_.providers) {
          if (p.name == "scholar") {
            return p;
          }
        }
        return metaquery::scholar_provider();
      }

      const PortalState &s_;
      const Config &config_;
      const text::TextPipeline &pipeline_;
    };

  }  // namespace

  Portal::Portal(Config config, const text::TextPipeline &pipeline, PortalState state,
                 std::optional<StateFiles> files, Clock clock)
      : config_(std::move(config)),
        pipeline_(pipeline),
        files_(std::move(files)),
        clock_(std::move(clock)),
        state_(std::make_shared<const PortalState>(std::move(state))) {
    if (!clock_) {
      clock_ = [] {
        return std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
      };
    }
  }

  std::unique_ptr<Portal> Portal::open(const Config &config, const text::TextPipeline &pipeline,
                                       Clock clock) {
    StateFiles files{config.data_dir};
    auto loaded = load_state(files, config.committee, pipeline);
    PortalState state{std::move(loaded.ontology), std::move(loaded.corpus),
                      std::move(loaded.store), config.providers};
    return std::make_unique<Portal>(config, pipeline, std::move(state), files, std::move(clock));
  }

  std::shared_ptr<const PortalState> Portal::state() const {
    std::lock_guard lock(state_mutex_);
    return state_;
  }

  void Portal::publish(std::shared_ptr<const PortalState> next) {
    std::lock_guard lock(state_mutex_);
    state_ = std::move(next);
  }

  void Portal::persist_line(const std::string &line) {
    if (files_) {
      append_line(files_->log(), line);
    }
  }

  translation::Submission Portal::submit(const NodeId &node, Language language, std::string text,
                                         std::string submitter) {
    std::lock_guard writer(writer_mutex_);
    auto cur = state();
    auto sub = translation::submit_proposal(cur->store, cur->ontology, node, language,
                                            std::move(text), std::move(submitter), clock_());
    persist_line(translation::log_submitted(sub.proposal));
    auto next = std::make_shared<PortalState>(*cur);
    next->store = sub.store;
    publish(std::move(next));
    return sub;
  }

  translation::Validation Portal::validate(std::string_view proposal_id, const std::string &member,
                                           translation::Verdict verdict) {
    std::lock_guard writer(writer_mutex_);
    auto cur = state();
    auto v = translation::validate_proposal(cur->store, cur->ontology, proposal_id, member, verdict,
                                            pipeline_);
    if (v.store == cur->store) {
      return v;  // repeated approval, nothing to record
    }
    persist_line(translation::log_verdict(proposal_id, member, verdict));
    auto next = std::make_shared<PortalState>(*cur);
    next->store = v.store;
    next->ontology = v.ontology;
    publish(std::move(next));
    return v;
  }

  translation::Registration Portal::register_entry(const NodeId &node, Language language,
                                                   std::string text) {
    std::lock_guard writer(writer_mutex_);
    auto cur = state();
    auto reg = translation::register_alternative_entry(cur->store, cur->ontology, node, language,
                                                       text, pipeline_);
    if (reg.store == cur->store && reg.ontology == cur->ontology) {
      return reg;
    }
    persist_line(translation::log_entry(node, language, text));
    auto next = std::make_shared<PortalState>(*cur);
    next->store = reg.store;
    next->ontology = reg.ontology;
    publish(std::move(next));
    return reg;
  }

  Response Portal::dispatch(const Request &r) {
    std::string_view path = r.path;
    if (!starts_with(path, kApi)) {
      throw RouteNotFound(std::string(path));
    }
    path.remove_prefix(kApi.size());
    bool get = r.method == "GET" || r.method == "HEAD";
    bool post = r.method == "POST";
    auto require = [&](bool ok) {
      if (!ok) {
        throw MethodNotAllowed(r.method + " " + r.path);
      }
    };

    if (starts_with(path, "/translations/")) {
      require(post);
      auto body = parse_body(r);
      if (path == "/translations/proposals") {
        auto sub = submit(node_param(body_string(body, "node")), body_language(body),
                          body_string(body, "text"), body_string(body, "submitter"));
        return json_response(201, {{"proposal", proposal_json(sub.proposal)}});
      }
      constexpr std::string_view kProposals = "/translations/proposals/";
      if (starts_with(path, kProposals) && ends_with(path, "/validate")) {
        auto id = path.substr(kProposals.size(),
                              path.size() - kProposals.size() - std::string_view("/validate").size());
        auto verdict = translation::parse_verdict(body_string(body, "verdict"));
        if (!verdict) {
          throw BadRequest("verdict must be approve, reject or reject-with-keep");
        }
        auto v = validate(id, body_string(body, "member"), *verdict);
        json out{{"proposal", proposal_json(v.proposal)}};
        if (v.entry) {
          out["entry"] = entry_json(*v.entry);
        }
        return json_response(200, out);
      }
      if (path == "/translations/entries") {
        auto reg = register_entry(node_param(body_string(body, "node")), body_language(body),
                                  body_string(body, "text"));
        return json_response(201, {{"entry", entry_json(reg.entry)}});
      }
      throw RouteNotFound(r.path);
    }

    auto snapshot = state();
    Reader reader(*snapshot, config_, pipeline_);
    constexpr std::string_view kNode = "/ontology/node/";
    constexpr std::string_view kArticles = "/articles/";
    if (starts_with(path, kNode)) {
      require(get);
      return reader.navigate(node_param(path.substr(kNode.size())), r);
    }
    if (path == "/ontology/snapshot.xml") {
      require(get);
      return reader.snapshot();
    }
    if (path == "/search") {
      require(get);
      return reader.search(r);
    }
    if (path == "/articles/search") {
      require(get);
      return reader.article_search(r);
    }
    if (starts_with(path, kArticles) && path.size() > kArticles.size()) {
      require(get);
      auto rest = path.substr(kArticles.size());
      if (ends_with(rest, "/bibtex") && rest.size() > 7) {
        auto id = std::string(rest.substr(0, rest.size() - 7));
        if (snapshot->corpus.find(id)) {
          return reader.bibtex(id);
        }
      }
      return reader.article_page(std::string(rest));
    }
    if (path == "/feeds/translations.rss") {
      require(get);
      return reader.feed(r);
    }
    throw RouteNotFound(r.path);
  }

  Response Portal::handle(const Request &request) {
    try {
      return dispatch(request);
    } catch (const RouteNotFound &e) {
      return error_response(404, "RouteNotFound", std::string("no route for ") + e.what());
    } catch (const MethodNotAllowed &e) {
      return error_response(405, "MethodNotAllowed", e.what());
    } catch (const BadRequest &e) {
      return error_response(400, "BadRequest", e.what());
    } catch (const UnknownNode &e) {
      return error_response(404, "UnknownNode", e.what());
    } catch (const UnknownArticle &e) {
      return error_response(404, "UnknownArticle", e.what());
    } catch (const UnknownProposal &e) {
      return error_response(404, "UnknownProposal", e.what());
    } catch (const EmptyText &e) {
      return error_response(400, "EmptyText", e.what());
    } catch (const NotCommitteeMember &e) {
      return error_response(403, "NotCommitteeMember", e.what());
    } catch (const SelfValidation &e) {
      return error_response(403, "SelfValidation", e.what());
    } catch (const AlreadyClosed &e) {
      return error_response(409, "AlreadyClosed", e.what());
    } catch (const std::invalid_argument &e) {
      return error_response(400, "BadRequest", e.what());
    } catch (const std::exception &e) {
      return error_response(500, "InternalError", e.what());
    }
  }

}  // namespace ontonav::service
