#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ontonav/corpus/parsers.hpp"
#include "ontonav/errors.hpp"
#include "ontonav/ontology/snapshot.hpp"
#include "ontonav/service/admin.hpp"
#include "ontonav/service/portal.hpp"
#include "ontonav/service/server.hpp"
#include "ontonav/translation/proposal_log.hpp"
#include "test_support.hpp"

using namespace ontonav;
using namespace ontonav::service;
using nlohmann::json;
using ontonav::testing::data_dir;
using ontonav::testing::fixture;
using ontonav::testing::fixture_dir;
using ontonav::testing::id;
using ontonav::testing::pipeline;
using ontonav::testing::scratch_dir;
using ontonav::testing::small_ontology;

namespace {

  Config test_config() {
    Config c;
    c.committee = {"m1", "m2", "m3"};
    c.providers = metaquery::parse_providers(R"([
      {"name": "acm", "url_template": "https://kbs.test/acm?q={keywords}"},
      {"name": "dblp", "url_template": "https://kbs.test/dblp?q={keywords}"},
      {"name": "csbib", "url_template": "https://kbs.test/csbib?query={keywords}", "joiner": ","}
    ])");
    c.public_url = "http://portal.test";
    return c;
  }

  PortalState test_state(const Config &c) {
    PortalState s;
    s.ontology = small_ontology();
    s.store = translation::TranslationStore(c.committee);
    auto glossary = translation::GlossaryClient::load(data_dir() / "glossary.fr.tsv");
    s.store = translation::apply_machine_translations(
        s.store, translation::machine_translate_all(s.ontology, s.store, Language::fr, glossary)
                     .translations);
    s.corpus = ingest_records({}, read_bibliography(fixture_dir() / "portal_corpus.bib"),
                              s.ontology, 1000, pipeline());
    s.providers = c.providers;
    return s;
  }

  Request get(std::string path, std::map<std::string, std::string> query = {}) {
    return {"GET", std::move(path), std::move(query), {}};
  }

  Request post(std::string path, const json &body) {
    return {"POST", std::move(path), {}, body.dump()};
  }

  json body(const Response &r) {
    return json::parse(r.body);
  }

  translation::Timestamp fixed_clock() {
    return 1792022400;
  }

  // A spread of read requests used to compare two portals.
  std::vector<Request> read_requests() {
    return {get("/api/v1/ontology/node/ROOT"),
            get("/api/v1/ontology/node/I.3.3", {{"lang", "fr"}}),
            get("/api/v1/ontology/node/H.2", {{"radius", "2"}}),
            get("/api/v1/ontology/node/D.3.2", {{"lang", "fr"}, {"radius", "0"}}),
            get("/api/v1/ontology/node/Q.1"),
            get("/api/v1/search", {{"q", "database management"}}),
            get("/api/v1/search", {{"q", "rendu non photo-réaliste"}, {"lang", "fr"}}),
            get("/api/v1/search", {{"q", "rendu expressif"}, {"lang", "fr"}}),
            get("/api/v1/search", {{"q", "Génération d'images"}, {"lang", "fr"}}),
            get("/api/v1/articles/search", {{"q", "relational databases"}}),
            get("/api/v1/articles/conf/dbs/Smith08"),
            get("/api/v1/articles/conf/dbs/Smith08/bibtex"),
            get("/api/v1/articles/journals/tods/Lee05"),
            get("/api/v1/articles/nope"),
            get("/api/v1/feeds/translations.rss"),
            get("/api/v1/feeds/translations.rss", {{"filter", "all"}}),
            get("/api/v1/ontology/snapshot.xml"),
            get("/api/v1/ontology/node/A.1", {{"lang", "fr"}}),
            get("/api/v1/search", {{"q", "programming language classification"}}),
            get("/api/v1/articles/search", {{"q", "image generation"}, {"page", "1"}})};
  }

  void run_mutations(Portal &p) {
    auto s1 = p.handle(post("/api/v1/translations/proposals",
                            {{"node", "I.3.3"}, {"lang", "fr"}, {"text", "rendu non-photorealiste"},
                             {"submitter", "m3"}}));
    REQUIRE(s1.status == 201);
    auto pid = body(s1)["proposal"]["id"].get<std::string>();
    REQUIRE(p.handle(post("/api/v1/translations/proposals/" + pid + "/validate",
                          {{"member", "m1"}, {"verdict", "reject-with-keep"}}))
                .status
            == 200);
    auto s2 = p.handle(post("/api/v1/translations/proposals",
                            {{"node", "H.2"}, {"lang", "fr"}, {"text", "gestion des données"},
                             {"submitter", "u9"}}));
    auto pid2 = body(s2)["proposal"]["id"].get<std::string>();
    p.handle(post("/api/v1/translations/proposals/" + pid2 + "/validate",
                  {{"member", "m1"}, {"verdict", "approve"}}));
    p.handle(post("/api/v1/translations/proposals/" + pid2 + "/validate",
                  {{"member", "m2"}, {"verdict", "approve"}}));
    REQUIRE(p.handle(post("/api/v1/translations/entries",
                          {{"node", "I.3.3"}, {"lang", "fr"}, {"text", "rendu expressif"}}))
                .status
            == 201);
  }

}  // namespace

TEST_CASE("config parsing and env overrides") {
  auto c = parse_config(R"({
    "port": 9000, "data_dir": "st", "committee": ["a", "b"], "page_size": 5,
    "thresholds": {"min_cluster": 4, "min_shared": 3, "proximity": 2},
    "providers": [{"name": "acm", "url_template": "https://kbs.test/?q={keywords}"}],
    "fixtures": {"ccs": "ccs.txt"}
  })",
                        "/etc/onto");
  CHECK(c.port == 9000);
  CHECK(c.data_dir == "/etc/onto/st");
  CHECK(c.ccs_file == "/etc/onto/ccs.txt");
  CHECK(c.committee == std::set<std::string>{"a", "b"});
  CHECK(c.page_size == 5);
  CHECK(c.min_cluster == 4);
  CHECK(c.providers.size() == 1);
  CHECK(c.base_url() == "http://127.0.0.1:9000");

  apply_env(c, [](const char *name) -> std::optional<std::string> {
    if (std::string_view(name) == "ONTONAV_PORT") {
      return "7000";
    }
    if (std::string_view(name) == "ONTONAV_DATA_DIR") {
      return "/var/onto";
    }
    return std::nullopt;
  });
  CHECK(c.port == 7000);
  CHECK(c.data_dir == "/var/onto");

  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"port": "x"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"thresholds": {"min_cluster": 1}})"), ConfigError);
  CHECK_THROWS_AS(apply_env(c, [](const char *) { return std::optional<std::string>("99999"); }),
                  ConfigError);
}

TEST_CASE("persistence primitives") {
  auto dir = scratch_dir("persist");
  write_atomic(dir / "a.txt", "one");
  write_atomic(dir / "a.txt", "two");
  CHECK(*read_file(dir / "a.txt") == "two");
  CHECK_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
  CHECK_FALSE(read_file(dir / "missing"));
  append_line(dir / "log", "x");
  append_line(dir / "log", "y");
  CHECK(*read_file(dir / "log") == "x\ny\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("navigate endpoint") {
  auto c = test_config();
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);

  auto fr = p.handle(get("/api/v1/ontology/node/I.3.3", {{"lang", "fr"}}));
  REQUIRE(fr.status == 200);
  auto j = body(fr);
  CHECK(j["focus"]["label"] == "génération d'images");
  CHECK(j["context"]["labels"]["en"] == "Picture/Image Generation");
  CHECK(j["context"]["metaqueries"].size() == 3);

  auto root = body(p.handle(get("/api/v1/ontology/node/ROOT")));
  CHECK(root["context"]["metaqueries"].empty());
  CHECK(root["nodes"].size() > 1);

  auto h2 = body(p.handle(get("/api/v1/ontology/node/H.2")));
  std::vector<std::string> hits;
  for (const auto &h : h2["context"]["internal_hits"]) {
    hits.push_back(h["id"]);
  }
  CHECK(std::find(hits.begin(), hits.end(), "conf/dbs/Smith08") != hits.end());
  for (const auto &q : h2["context"]["metaqueries"]) {
    CHECK(q["keywords"] == h2["context"]["metaqueries"][0]["keywords"]);
  }

  auto missing = p.handle(get("/api/v1/ontology/node/B.7"));
  CHECK(missing.status == 404);
  CHECK(body(missing)["error"] == "UnknownNode");
  CHECK(p.handle(get("/api/v1/ontology/node/%%%")).status == 404);
  CHECK(p.handle(get("/api/v1/ontology/node/H.2", {{"radius", "x"}})).status == 400);
  CHECK(p.handle(get("/api/v1/ontology/node/H.2", {{"radius", "99"}})).status == 400);
  CHECK(p.handle(get("/api/v1/ontology/node/H.2", {{"lang", "de"}})).status == 400);
  CHECK(p.handle(get("/nowhere")).status == 404);
  CHECK(p.handle(post("/api/v1/ontology/node/H.2", json::object())).status == 405);
}

TEST_CASE("search endpoints") {
  auto c = test_config();
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);

  auto nf = p.handle(get("/api/v1/search", {{"q", "rendu non photo-réaliste"}, {"lang", "fr"}}));
  CHECK(nf.status == 404);
  CHECK(body(nf)["message"]
        == "\"rendu non photo-réaliste\" does not exist in French in the ACM ontology");

  auto dm = body(p.handle(get("/api/v1/search", {{"q", "database management"}})));
  CHECK(dm["results"][0]["id"] == "H.2");
  CHECK_FALSE(dm["results"][0]["context"]["internal_hits"].empty());

  for (const auto &[nid, n] : small_ontology().nodes()) {
    if (n.kind == ontology::NodeKind::regular && !nid.is_root()) {
      auto r = body(p.handle(get("/api/v1/search", {{"q", n.label}})));
      CHECK(r["results"][0]["id"] == nid.str());
    }
  }
  CHECK(p.handle(get("/api/v1/search", {{"q", "  "}})).status == 400);
  CHECK(p.handle(get("/api/v1/search")).status == 400);

  auto arts = body(p.handle(get("/api/v1/articles/search", {{"q", "relational databases"}})));
  REQUIRE(arts["total"].get<int>() >= 2);
  CHECK(arts["hits"][0]["id"] == "conf/dbs/Smith08");
  CHECK(p.handle(get("/api/v1/articles/search", {{"q", "x"}, {"page", "0"}})).status == 400);
}

TEST_CASE("article endpoints") {
  auto c = test_config();
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);

  auto page = body(p.handle(get("/api/v1/articles/conf/dbs/Smith08")));
  CHECK(page["link"]["type"] == "scholar");
  auto url = page["link"]["url"].get<std::string>();
  CHECK(metaquery::decode_keywords(url, metaquery::scholar_provider()).front()
        == "\"Managing taxonomies in relational databases\"");
  CHECK(page["metadata"][0]["name"] == "DC.title");
  CHECK(page["metadata"][0]["content"] == "Managing taxonomies in relational databases");

  auto direct = body(p.handle(get("/api/v1/articles/journals/tods/Lee05")));
  CHECK(direct["link"] == json{{"type", "direct"}, {"uri", "http://example.org/papers/lee05"}});

  auto bib = p.handle(get("/api/v1/articles/conf/dbs/Smith08/bibtex"));
  CHECK(bib.content_type.rfind("text/plain", 0) == 0);
  auto parsed = corpus::parse_bibtex(bib.body);
  REQUIRE(parsed.records.size() == 1);
  auto rec = *p.state()->corpus.find("conf/dbs/Smith08");
  rec.assignments.clear();
  CHECK(parsed.records[0] == rec);

  CHECK(p.handle(get("/api/v1/articles/nope")).status == 404);
  CHECK(body(p.handle(get("/api/v1/articles/nope/bibtex")))["error"] == "UnknownArticle");
}

TEST_CASE("translation endpoints") {
  auto c = test_config();
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);

  auto bad = [&](const json &b) {
    return p.handle(post("/api/v1/translations/proposals", b));
  };
  CHECK(bad({{"node", "I.3.3"}, {"text", "x"}}).status == 400);
  CHECK(p.handle({"POST", "/api/v1/translations/proposals", {}, "{oops"}).status == 400);
  CHECK(bad({{"node", "I.3.3"}, {"text", " "}, {"submitter", "u"}}).status == 400);
  CHECK(bad({{"node", "B.3"}, {"text", "x"}, {"submitter", "u"}}).status == 404);

  auto s = p.handle(post("/api/v1/translations/proposals",
                         {{"node", "I.3.3"}, {"text", "rendu"}, {"submitter", "m3"}}));
  REQUIRE(s.status == 201);
  auto pid = body(s)["proposal"]["id"].get<std::string>();
  auto validate = [&](const std::string &member, const std::string &verdict) {
    return p.handle(post("/api/v1/translations/proposals/" + pid + "/validate",
                         {{"member", member}, {"verdict", verdict}}));
  };
  CHECK(validate("m3", "approve").status == 403);
  CHECK(validate("zz", "approve").status == 403);
  CHECK(validate("m1", "maybe").status == 400);
  CHECK(body(validate("m1", "approve"))["proposal"]["state"] == "open");
  CHECK(body(validate("m2", "approve"))["proposal"]["state"] == "accepted");
  CHECK(validate("m1", "reject").status == 409);
  CHECK(p.handle(post("/api/v1/translations/proposals/p77/validate",
                      {{"member", "m1"}, {"verdict", "approve"}}))
            .status
        == 404);

  auto nav = body(p.handle(get("/api/v1/ontology/node/I.3.3", {{"lang", "fr"}})));
  CHECK(nav["focus"]["label"] == "rendu");

  auto rss = p.handle(get("/api/v1/feeds/translations.rss", {{"filter", "all"}}));
  CHECK(rss.content_type.rfind("application/rss+xml", 0) == 0);
  CHECK(rss.body.find("<guid isPermaLink=\"false\">" + pid + "</guid>") != std::string::npos);
  CHECK(p.handle(get("/api/v1/feeds/translations.rss", {{"filter", "x"}})).status == 400);
}

TEST_CASE("read endpoints are side-effect free") {
  auto c = test_config();
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);
  auto before = p.state();
  for (const auto &r : read_requests()) {
    p.handle(r);
  }
  CHECK(p.state() == before);
}

TEST_CASE("replay from persisted files") {
  auto dir = scratch_dir("replay");
  auto c = test_config();
  c.data_dir = dir;
  auto s = test_state(c);
  StateFiles files{dir};
  write_ontology(files, s.ontology);
  write_corpus(files, s.corpus);
  std::string log;
  for (const auto &t : s.store.translations()) {
    log += translation::log_translated(t) + "\n";
  }
  write_atomic(files.log(), log);

  auto first = Portal::open(c, pipeline(), fixed_clock);
  run_mutations(*first);
  std::vector<Response> expected;
  for (const auto &r : read_requests()) {
    expected.push_back(first->handle(r));
  }

  SUBCASE("restart reproduces responses") {
    auto second = Portal::open(c, pipeline(), fixed_clock);
    auto requests = read_requests();
    for (std::size_t i = 0; i < requests.size(); ++i) {
      auto got = second->handle(requests[i]);
      CHECK(got.status == expected[i].status);
      CHECK(got.body == expected[i].body);
    }
    auto npr = body(second->handle(get("/api/v1/search",
                                       {{"q", "rendu non photo-réaliste"}, {"lang", "fr"}})));
    CHECK(npr["results"][0]["id"] == "I.3.3");
  }
  SUBCASE("failed mutations leave files untouched") {
    auto snapshot = [&] {
      return std::vector<std::optional<std::string>>{read_file(files.ontology()),
                                                     read_file(files.corpus()),
                                                     read_file(files.log())};
    };
    auto before = snapshot();
    CHECK(first->handle(post("/api/v1/translations/proposals/p1/validate",
                             {{"member", "m2"}, {"verdict", "approve"}}))
              .status
          == 409);
    CHECK(first->handle(post("/api/v1/translations/proposals",
                             {{"node", "B.3"}, {"text", "x"}, {"submitter", "u"}}))
              .status
          == 404);
    CHECK(first->handle(post("/api/v1/translations/entries",
                             {{"node", "I.3.3"}, {"text", ""}}))
              .status
          == 400);
    CHECK(snapshot() == before);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("admin commands") {
  auto dir = scratch_dir("admin");
  Config c = test_config();
  c.data_dir = dir;
  StateFiles files{dir};

  ingest_ccs(c, fixture_dir() / "ccs_small.txt", pipeline());
  auto doc = *read_file(files.ontology());
  CHECK(ontology::export_snapshot(ontology::import_snapshot(doc)) == doc);

  ingest_descriptors(c, fixture_dir() / "descriptors_small.txt", pipeline());
  auto o = read_ontology(files, pipeline());
  CHECK(o.descriptor_leaf("C++").has_value());

  std::vector<std::filesystem::path> batch{fixture_dir() / "portal_corpus.bib"};
  ingest_corpus(c, batch, true, 10, pipeline());
  auto once = *read_file(files.corpus());
  auto onto_once = *read_file(files.ontology());
  ingest_corpus(c, batch, false, 20, pipeline());
  CHECK(*read_file(files.corpus()) == once);
  CHECK(*read_file(files.ontology()) == onto_once);

  auto glossary = translation::GlossaryClient::load(data_dir() / "glossary.fr.tsv");
  translate(c, Language::fr, glossary, pipeline());
  auto log = *read_file(files.log());
  translate(c, Language::fr, glossary, pipeline());
  CHECK(*read_file(files.log()) == log);

  reclassify(c, pipeline());
  rebuild_snapshot(c, pipeline());
  auto corpus_doc = *read_file(files.corpus());
  rebuild_snapshot(c, pipeline());
  CHECK(*read_file(files.corpus()) == corpus_doc);

  auto portal = Portal::open(c, pipeline());
  auto nav = body(portal->handle(get("/api/v1/ontology/node/H.2", {{"lang", "fr"}})));
  CHECK(nav["focus"]["label"] == "gestion de bases de données");

  CHECK_THROWS_AS(ingest_ccs(c, dir / "missing.txt", pipeline()), StorageError);
  CHECK_THROWS_AS(read_bibliography(dir / "x.csv"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("HTTP loopback") {
  auto c = test_config();
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);
  HttpServer server(p);
  int port = server.bind("127.0.0.1", 0);
  std::thread t([&] { server.run(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto nav = client.Get("/api/v1/ontology/node/I.3.3?lang=fr");
  REQUIRE(nav);
  CHECK(nav->status == 200);
  CHECK(json::parse(nav->body)["focus"]["label"] == "génération d'images");

  auto search = client.Get("/api/v1/search?q=rendu%20non%20photo-r%C3%A9aliste&lang=fr");
  REQUIRE(search);
  CHECK(search->status == 404);

  auto bib = client.Get("/api/v1/articles/conf%2Fdbs%2FSmith08/bibtex");
  REQUIRE(bib);
  CHECK(bib->status == 200);
  CHECK(bib->get_header_value("Content-Type").rfind("text/plain", 0) == 0);

  auto created = client.Post("/api/v1/translations/proposals",
                             R"({"node":"I.3.3","lang":"fr","text":"rendu","submitter":"u1"})",
                             "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);

  auto rss = client.Get("/api/v1/feeds/translations.rss");
  REQUIRE(rss);
  CHECK(rss->get_header_value("Content-Type").rfind("application/rss+xml", 0) == 0);

  server.stop();
  t.join();
}

TEST_CASE("HTTP static bundle and concurrent readers") {
  auto dir = scratch_dir("static");
  {
    std::ofstream(dir / "index.html") << "<!doctype html><title>navigator</title>";
  }
  auto c = test_config();
  c.static_dir = dir;
  Portal p(c, pipeline(), test_state(c), std::nullopt, fixed_clock);
  HttpServer server(p);
  int port = server.bind("127.0.0.1", 0);
  std::thread t([&] { server.run(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto page = client.Get("/index.html");
  REQUIRE(page);
  CHECK(page->status == 200);
  CHECK(page->body.find("navigator") != std::string::npos);
  auto api = client.Get("/api/v1/ontology/node/ROOT");
  REQUIRE(api);
  CHECK(api->status == 200);

  // readers see either the old or the new state while a writer submits
  std::atomic<int> bad{0};
  std::vector<std::thread> readers;
  for (int r = 0; r < 4; ++r) {
    readers.emplace_back([&] {
      httplib::Client rc("127.0.0.1", port);
      for (int i = 0; i < 20; ++i) {
        auto res = rc.Get("/api/v1/feeds/translations.rss?filter=all");
        if (!res || res->status != 200) {
          ++bad;
        }
      }
    });
  }
  httplib::Client writer("127.0.0.1", port);
  for (int i = 0; i < 10; ++i) {
    auto res = writer.Post("/api/v1/translations/proposals",
                           json{{"node", "H.2"}, {"text", "gestion " + std::to_string(i)},
                                {"submitter", "u1"}}
                               .dump(),
                           "application/json");
    CHECK((res && res->status == 201));
  }
  for (auto &r : readers) {
    r.join();
  }
  CHECK(bad == 0);
  CHECK(p.state()->store.proposals().size() == 10);

  server.stop();
  t.join();
  std::filesystem::remove_all(dir);
}
