#include <doctest.h>

#include <random>

#include "ontonav/corpus/parsers.hpp"
#include "ontonav/errors.hpp"
#include "ontonav/metaquery/metaquery.hpp"
#include "ontonav/ontology/operations.hpp"
#include "test_support.hpp"

using namespace ontonav;
using namespace ontonav::metaquery;
using ontonav::testing::fixture;
using ontonav::testing::id;
using ontonav::testing::small_ontology;

namespace {

  ProviderTemplate kbs(std::string name = "kbs") {
    return {std::move(name), "https://kbs.test/search?q={keywords}", "+", kDefaultMaxKeywords};
  }

  // Independent decoder: split on the raw joiner, then undo %XX by hand.
  std::vector<std::string> oracle_decode(const std::string &url, const std::string &prefix,
                                         const std::string &joiner) {
    REQUIRE(url.rfind(prefix, 0) == 0);
    auto seg = url.substr(prefix.size());
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      auto pos = seg.find(joiner, start);
      parts.push_back(seg.substr(start, pos == std::string::npos ? pos : pos - start));
      if (pos == std::string::npos) {
        break;
      }
      start = pos + joiner.size();
    }
    for (auto &p : parts) {
      std::string out;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == '%') {
          out.push_back(static_cast<char>(std::stoi(p.substr(i + 1, 2), nullptr, 16)));
          i += 2;
        } else {
          out.push_back(p[i]);
        }
      }
      p = out;
    }
    return parts;
  }

}  // namespace

TEST_CASE("percent encoding table") {
  const std::string unreserved =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~";
  for (int b = 0; b < 256; ++b) {
    std::string in(1, static_cast<char>(b));
    auto enc = percent_encode(in);
    if (unreserved.find(static_cast<char>(b)) != std::string::npos) {
      CHECK(enc == in);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", b);
      CHECK(enc == buf);
    }
    CHECK(percent_decode(enc) == in);
  }
  CHECK(percent_encode("c++") == "c%2B%2B");
  CHECK(percent_encode("naïve") == "na%C3%AFve");
  CHECK_THROWS_AS(percent_decode("%G1"), std::invalid_argument);
  CHECK_THROWS_AS(percent_decode("ab%2"), std::invalid_argument);
}

TEST_CASE("generate") {
  auto q = generate({"database", "management"}, kbs());
  CHECK(q.url == "https://kbs.test/search?q=database+management");
  CHECK(q.provider == "kbs");
  CHECK(q.keywords == std::vector<std::string>{"database", "management"});

  CHECK(generate({"c++"}, kbs()).url == "https://kbs.test/search?q=c%2B%2B");
  CHECK_THROWS_AS(generate({}, kbs()), EmptyKeywords);

  auto capped = kbs();
  capped.max_keywords = 2;
  CHECK(generate({"a", "b", "c"}, capped).keywords == std::vector<std::string>{"a", "b"});

  auto bad = kbs();
  bad.url_template = "https://kbs.test/search";
  CHECK_THROWS_AS(generate({"x"}, bad), BadTemplate);
  bad.url_template = "https://kbs.test/{keywords}/{keywords}";
  CHECK_THROWS_AS(generate({"x"}, bad), BadTemplate);
  bad.url_template = "/search?q={keywords}";
  CHECK_THROWS_AS(generate({"x"}, bad), BadTemplate);
  bad = kbs();
  bad.joiner = "%20";
  CHECK_THROWS_AS(generate({"x"}, bad), BadTemplate);
  bad.joiner = "-";
  CHECK_THROWS_AS(generate({"x"}, bad), BadTemplate);

  // pure and deterministic
  CHECK(generate({"naïve", "bayes"}, kbs()) == generate({"naïve", "bayes"}, kbs()));
}

TEST_CASE("URL round trip property") {
  std::mt19937 rng(20261015);
  const std::vector<std::string> pool{"c++",  "naïve",           "database management",
                                      "a+b",  "x%y",             "rendu non-photoréaliste",
                                      "é",    "q&a",             "tilde~dot.under_score",
                                      "日本", "\"quoted title\"", "slash/and?query#frag"};
  const std::vector<std::string> joiners{"+", ",", ";", "&kw="};
  for (int trial = 0; trial < 300; ++trial) {
    auto p = kbs();
    p.joiner = joiners[rng() % joiners.size()];
    p.max_keywords.reset();
    std::vector<std::string> kws(1 + rng() % 6);
    for (auto &k : kws) {
      k = pool[rng() % pool.size()];
    }
    auto q = generate(kws, p);
    CHECK(oracle_decode(q.url, "https://kbs.test/search?q=", p.joiner) == kws);
    CHECK(decode_keywords(q.url, p) == kws);
    for (unsigned char c : q.url) {
      CHECK((c > 0x20 && c < 0x7f));
    }
  }
}

TEST_CASE("context_queries") {
  const auto &o = small_ontology();
  std::vector<ProviderTemplate> providers{kbs("acm"), kbs("dblp"), kbs("csbib")};
  CHECK(context_queries(o, ontology::NodeId::root(), providers).empty());

  auto h2 = context_queries(o, id("H.2"), providers);
  REQUIRE(h2.size() == 3);
  CHECK(h2[0].provider == "acm");
  CHECK(h2[0].keywords == h2[1].keywords);
  CHECK(h2[1].keywords == h2[2].keywords);
  CHECK(h2[0].keywords.front() == "database");

  auto d32 = context_queries(o, id("D.3.2"), providers);
  REQUIRE(!d32.empty());
  REQUIRE(d32[0].keywords.size() >= 2);
  CHECK(std::set<std::string>(d32[0].keywords.begin(), d32[0].keywords.begin() + 2)
        == std::set<std::string>{"language", "classification"});
  auto cluster = ontology::keyword_cluster_ordered(o, id("D.3.2"));
  auto expected_size = std::min(cluster.size(), kDefaultMaxKeywords);
  CHECK(d32[0].keywords == std::vector<std::string>(cluster.begin(), cluster.begin() + expected_size));

  CHECK_THROWS_AS(context_queries(o, id("B.9"), providers), UnknownNode);
}

TEST_CASE("scholar_fallback") {
  corpus::ArticleRecord r;
  r.id = "x";
  r.title = "Managing taxonomies in relational databases";
  r.authors = {"Jane Smith", "René Dupont"};
  auto link = scholar_fallback(r);
  REQUIRE(std::holds_alternative<MetaQuery>(link));
  auto q = std::get<MetaQuery>(link);
  CHECK(q.provider == "scholar");
  CHECK(q.keywords
        == std::vector<std::string>{"\"Managing taxonomies in relational databases\"", "Smith"});
  CHECK(q.url.find("%22Managing%20taxonomies%20in%20relational%20databases%22") != std::string::npos);

  r.authors.clear();
  CHECK(std::get<MetaQuery>(scholar_fallback(r)).keywords.size() == 1);

  r.uri = "http://example.org/p";
  CHECK(std::get<DirectUri>(scholar_fallback(r)).uri == "http://example.org/p");

  CHECK(surname("Knuth, Donald E.") == "Knuth");
  CHECK(surname("Donald E. Knuth") == "Knuth");
  CHECK(surname("Plato") == "Plato");
}

TEST_CASE("export_bibtex") {
  corpus::ArticleRecord r;
  r.id = "conf/dexa/Smith08";
  r.title = "Managing taxonomies in relational databases";
  r.authors = {"Jane Smith", "René Dupont"};
  r.year = 2008;
  r.context = "Proceedings of the Workshop on Database Systems";
  r.uri = "http://example.org/papers/smith08";
  auto text = export_bibtex(r);
  CHECK(text.rfind("@inproceedings{conf/dexa/Smith08,", 0) == 0);
  auto order = {"title =", "author =", "year =", "booktitle =", "url ="};
  std::size_t last = 0;
  for (const char *f : order) {
    auto pos = text.find(f);
    REQUIRE(pos != std::string::npos);
    CHECK(pos > last);
    last = pos;
  }
  auto back = corpus::parse_bibtex(text);
  REQUIRE(back.records.size() == 1);
  CHECK(back.records[0] == r);

  corpus::ArticleRecord bare;
  bare.id = "h1";
  bare.title = "Sets {with} braces & 100% \\odd_chars #1 $";
  auto bare_text = export_bibtex(bare);
  CHECK(bare_text.find("year") == std::string::npos);
  CHECK(bare_text.rfind("@article{", 0) == 0);
  auto bare_back = corpus::parse_bibtex(bare_text);
  REQUIRE(bare_back.records.size() == 1);
  CHECK(bare_back.records[0].title == bare.title);

  // every record of the sample fixture survives the round trip on mapped fields
  for (const auto &rec : corpus::parse_bibtex(fixture("sample.bib")).records) {
    auto again = corpus::parse_bibtex(export_bibtex(rec)).records;
    REQUIRE(again.size() == 1);
    CHECK(again[0].id == rec.id);
    CHECK(again[0].title == rec.title);
    CHECK(again[0].authors == rec.authors);
    CHECK(again[0].year == rec.year);
    CHECK(again[0].context == rec.context);
    CHECK(again[0].uri == rec.uri);
  }
}

TEST_CASE("export_embedded_metadata") {
  corpus::ArticleRecord r;
  r.title = "Managing taxonomies in relational databases";
  CHECK(export_embedded_metadata(r)
        == std::vector<std::pair<std::string, std::string>>{{"DC.title", r.title}});
  r.authors = {"A One", "B Two"};
  r.year = 2008;
  r.context = "Venue";
  r.uri = "http://x";
  auto md = export_embedded_metadata(r);
  CHECK(std::count_if(md.begin(), md.end(), [](auto &p) { return p.first == "DC.creator"; }) == 2);
  CHECK(md.back() == std::pair<std::string, std::string>{"DC.identifier", "http://x"});
}

TEST_CASE("provider config") {
  auto ps = parse_providers(R"([
    {"name": "acm", "url_template": "https://kbs.test/acm?q={keywords}"},
    {"name": "dblp", "url_template": "https://kbs.test/dblp?q={keywords}", "joiner": ",", "max_keywords": 3},
    {"name": "all", "url_template": "https://kbs.test/all/{keywords}", "max_keywords": null}
  ])");
  REQUIRE(ps.size() == 3);
  CHECK(ps[0].joiner == "+");
  CHECK(ps[0].max_keywords == kDefaultMaxKeywords);
  CHECK(ps[1].max_keywords == 3u);
  CHECK_FALSE(ps[2].max_keywords);
  CHECK_THROWS_AS(parse_providers("{}"), ConfigError);
  CHECK_THROWS_AS(parse_providers(R"([{"name": "x"}])"), ConfigError);
  CHECK_THROWS_AS(parse_providers(R"([{"name": "x", "url_template": "https://a/"}])"), BadTemplate);
}
