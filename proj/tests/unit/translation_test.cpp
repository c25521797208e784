#include <doctest.h>

#include <json.hpp>

#include "ontonav/errors.hpp"
#include "ontonav/translation/proposal_log.hpp"
#include "ontonav/translation/translation.hpp"
#include "ontonav/xml/pull_parser.hpp"
#include "test_support.hpp"

using namespace ontonav;
using namespace ontonav::translation;
using ontonav::testing::data_dir;
using ontonav::testing::id;
using ontonav::testing::pipeline;
using ontonav::testing::small_ontology;

namespace {

  const std::set<std::string> kCommittee{"m1", "m2", "m3"};

  class FailingClient : public MtClient {
   public:
    std::string translate(std::string_view, Language, Language) override {
      throw ClientUnavailable("offline");
    }
  };

  GlossaryClient &glossary() {
    static auto g = GlossaryClient::load(data_dir() / "glossary.fr.tsv");
    return g;
  }

  // Parses an RSS document and returns the guids of its items; checks the
  // required channel and item children along the way.
  std::vector<std::string> rss_guids(const std::string &doc) {
    std::istringstream in(doc);
    xml::PullParser p(in);
    std::vector<std::string> path;
    std::vector<std::string> guids;
    std::set<std::string> channel_fields;
    std::set<std::string> item_fields;
    std::string text;
    for (const auto *ev = &p.next(); ev->type != xml::EventType::end_document; ev = &p.next()) {
      if (ev->type == xml::EventType::start_element) {
        if (path.empty()) {
          CHECK(ev->name == "rss");
          CHECK(*ev->attribute("version") == "2.0");
        }
        path.push_back(ev->name);
        text.clear();
        if (ev->name == "item") {
          item_fields.clear();
        }
      } else if (ev->type == xml::EventType::text) {
        text += ev->text;
      } else if (ev->type == xml::EventType::end_element) {
        auto name = path.back();
        path.pop_back();
        if (!path.empty() && path.back() == "channel") {
          channel_fields.insert(name);
        }
        if (!path.empty() && path.back() == "item") {
          item_fields.insert(name);
          if (name == "guid") {
            guids.push_back(text);
          }
        }
        if (name == "item") {
          CHECK(item_fields.contains("guid"));
          CHECK(item_fields.contains("title"));
          CHECK(item_fields.contains("pubDate"));
        }
      }
    }
    for (const char *f : {"title", "link", "description"}) {
      CHECK(channel_fields.contains(f));
    }
    return guids;
  }

}  // namespace

TEST_CASE("glossary client") {
  CHECK(glossary().translate("Database Management", Language::en, Language::fr)
        == "gestion de bases de données");
  CHECK(glossary().translate("Picture/Image Generation", Language::en, Language::fr)
        == "génération d'images");
  // longest match first, unmatched words pass through
  CHECK(glossary().translate("Database tuning", Language::en, Language::fr)
        == "base de données tuning");
  CHECK_THROWS_AS(glossary().translate("x", Language::fr, Language::en), ClientUnavailable);
  CHECK_THROWS_AS(GlossaryClient::parse("no tab here\n"), MalformedLine);
}

TEST_CASE("machine_translate_all") {
  const auto &o = small_ontology();
  TranslationStore store(kCommittee);

  auto result = machine_translate_all(o, store, Language::fr, glossary());
  CHECK(result.translations.size() == o.size());
  CHECK(result.failures.empty());
  auto it = std::find_if(result.translations.begin(), result.translations.end(),
                         [](const NodeTranslation &t) { return t.node == id("H.2"); });
  REQUIRE(it != result.translations.end());
  CHECK(it->label == "gestion de bases de données");
  CHECK(it->status == TranslationStatus::machine);
  CHECK(it->source == TranslationSource::mt_client);

  auto translated = apply_machine_translations(store, result.translations);
  CHECK(translated.display_label(o, id("H.2"), Language::fr) == "gestion de bases de données");
  CHECK(translated.display_label(o, id("H.2"), Language::en) == "Database Management");

  SUBCASE("validated labels are untouched") {
    auto sub = submit_proposal(translated, o, id("H.2"), Language::fr, "gestion des bases",
                               "u1", 100);
    auto v1 = validate_proposal(sub.store, o, sub.proposal.id, "m1", Verdict::approve, pipeline());
    auto v2 = validate_proposal(v1.store, o, sub.proposal.id, "m2", Verdict::approve, pipeline());
    auto again = machine_translate_all(o, v2.store, Language::fr, glossary());
    CHECK(again.translations.size() == o.size() - 1);
    auto reapplied = apply_machine_translations(v2.store, result.translations);
    CHECK(reapplied.display_label(o, id("H.2"), Language::fr) == "gestion des bases");
  }
  SUBCASE("failing client falls back to English") {
    FailingClient failing;
    auto r = machine_translate_all(o, store, Language::fr, failing);
    CHECK(r.failures.size() == o.size());
    for (const auto &t : r.translations) {
      CHECK(t.label == o.node(t.node).label);
      CHECK(t.source == TranslationSource::mt_client);
    }
  }
}

TEST_CASE("submit_proposal") {
  const auto &o = small_ontology();
  TranslationStore store(kCommittee);
  auto sub = submit_proposal(store, o, id("I.3.3"), Language::fr, "rendu non-photorealiste",
                             "m3", 1000);
  CHECK(sub.proposal.state == ProposalState::open);
  CHECK(sub.proposal.id == "p1");
  CHECK(sub.item.guid == "p1");
  CHECK_FALSE(sub.item.closed);
  CHECK(rss_guids(feed(sub.store, FeedFilter::open, "http://x/feed")) == std::vector<std::string>{"p1"});

  auto dup = submit_proposal(sub.store, o, id("I.3.3"), Language::fr, "rendu non-photorealiste",
                             "m3", 1001);
  CHECK(dup.proposal.id == "p2");
  CHECK(dup.store.proposals().size() == 2);

  CHECK_THROWS_AS(submit_proposal(store, o, id("I.3.3"), Language::fr, "  ", "m3", 0), EmptyText);
  CHECK_THROWS_AS(submit_proposal(store, o, id("Z"), Language::fr, "x", "m3", 0), std::invalid_argument);
  CHECK_THROWS_AS(submit_proposal(store, o, id("B.1"), Language::fr, "x", "m3", 0), UnknownNode);
}

TEST_CASE("validate_proposal state machine") {
  const auto &o = small_ontology();
  TranslationStore store(kCommittee);
  auto sub = submit_proposal(store, o, id("I.3.3"), Language::fr, "génération d'images", "m3", 10);
  const auto pid = sub.proposal.id;

  auto v1 = validate_proposal(sub.store, o, pid, "m1", Verdict::approve, pipeline());
  CHECK(v1.proposal.state == ProposalState::open);
  CHECK(v1.proposal.validations == std::set<std::string>{"m1"});

  auto same = validate_proposal(v1.store, o, pid, "m1", Verdict::approve, pipeline());
  CHECK(same.store == v1.store);

  auto v2 = validate_proposal(v1.store, o, pid, "m2", Verdict::approve, pipeline());
  CHECK(v2.proposal.state == ProposalState::accepted);
  CHECK(v2.store.display_label(o, id("I.3.3"), Language::fr) == "génération d'images");
  CHECK(v2.store.feed_items().at(pid).closed);
  CHECK(rss_guids(feed(v2.store, FeedFilter::open, "l")).empty());
  CHECK(rss_guids(feed(v2.store, FeedFilter::all, "l")) == std::vector<std::string>{pid});

  CHECK_THROWS_AS(validate_proposal(v2.store, o, pid, "m1", Verdict::reject, pipeline()),
                  AlreadyClosed);
  CHECK_THROWS_AS(validate_proposal(v1.store, o, "p99", "m1", Verdict::approve, pipeline()),
                  UnknownProposal);
  CHECK_THROWS_AS(validate_proposal(v1.store, o, pid, "x9", Verdict::approve, pipeline()),
                  NotCommitteeMember);
  CHECK_THROWS_AS(validate_proposal(v1.store, o, pid, "m3", Verdict::approve, pipeline()),
                  SelfValidation);

  SUBCASE("a single reject closes") {
    auto r = validate_proposal(v1.store, o, pid, "m2", Verdict::reject, pipeline());
    CHECK(r.proposal.state == ProposalState::rejected);
    CHECK_FALSE(r.entry);
    CHECK(r.store.entries().empty());
    CHECK(r.ontology == o);
    CHECK(r.store.display_label(o, id("I.3.3"), Language::fr) == "Picture/Image Generation");
  }
  SUBCASE("submitter may withdraw by rejecting") {
    auto r = validate_proposal(sub.store, o, pid, "m3", Verdict::reject, pipeline());
    CHECK(r.proposal.state == ProposalState::rejected);
  }
  SUBCASE("reject with keep registers an entry") {
    auto r = validate_proposal(v1.store, o, pid, "m2", Verdict::reject_with_keep, pipeline());
    CHECK(r.proposal.state == ProposalState::rejected);
    REQUIRE(r.entry);
    CHECK(r.entry->node == id("I.3.3"));
    CHECK(r.store.entries().size() == 1);
    CHECK(r.ontology.node(id("I.3.3")).added_keywords.contains("generation"));
  }
  SUBCASE("acceptance swaps the validated label") {
    auto sub2 = submit_proposal(v2.store, o, id("I.3.3"), Language::fr, "création d'images", "u7", 20);
    auto a = validate_proposal(sub2.store, o, sub2.proposal.id, "m1", Verdict::approve, pipeline());
    auto b = validate_proposal(a.store, o, sub2.proposal.id, "m3", Verdict::approve, pipeline());
    CHECK(b.proposal.state == ProposalState::accepted);
    CHECK(b.store.display_label(o, id("I.3.3"), Language::fr) == "création d'images");
    auto validated = 0;
    for (const auto &t : b.store.translations()) {
      validated += t.node == id("I.3.3") && t.status == TranslationStatus::validated;
    }
    CHECK(validated == 1);
  }
}

TEST_CASE("NPR scenario") {
  auto o = small_ontology();
  TranslationStore store(kCommittee);
  store = apply_machine_translations(store,
                                     machine_translate_all(o, store, Language::fr, glossary()).translations);

  const std::string query = "rendu non photo-réaliste";
  auto before = resolve_query(query, Language::fr, o, store, pipeline());
  CHECK_FALSE(before.found());
  CHECK(before.message == "\"rendu non photo-réaliste\" does not exist in French in the ACM ontology");

  auto labels_before = [&] {
    std::vector<std::string> out;
    for (const auto &[nid, _] : o.nodes()) {
      out.push_back(store.display_label(o, nid, Language::fr));
      out.push_back(store.display_label(o, nid, Language::en));
    }
    return out;
  }();

  auto reg = register_alternative_entry(store, o, id("I.3.3"), Language::fr,
                                        "rendu non-photorealiste", pipeline());
  store = reg.store;
  o = reg.ontology;
  auto after = resolve_query(query, Language::fr, o, store, pipeline());
  REQUIRE(after.found());
  CHECK(after.nodes.front().node == id("I.3.3"));
  CHECK(after.stage == MatchStage::lemma_overlap);

  auto again = register_alternative_entry(store, o, id("I.3.3"), Language::fr,
                                          "rendu non-photorealiste", pipeline());
  CHECK(again.store == store);
  CHECK(again.ontology == o);

  auto reg2 = register_alternative_entry(store, o, id("I.3.3"), Language::fr, "rendu expressif",
                                         pipeline());
  store = reg2.store;
  o = reg2.ontology;
  for (const char *q : {"rendu non photo-réaliste", "rendu expressif", "rendu non-photorealiste"}) {
    auto r = resolve_query(q, Language::fr, o, store, pipeline());
    REQUIRE(r.found());
    CHECK(r.nodes.front().node == id("I.3.3"));
  }
  CHECK(resolve_query("rendu expressif", Language::fr, o, store, pipeline()).stage
        == MatchStage::alternative_entry);

  std::vector<std::string> labels_after;
  for (const auto &[nid, _] : o.nodes()) {
    labels_after.push_back(store.display_label(o, nid, Language::fr));
    labels_after.push_back(store.display_label(o, nid, Language::en));
  }
  CHECK(labels_after == labels_before);

  CHECK_THROWS_AS(register_alternative_entry(store, o, id("I.3.3"), Language::fr, "", pipeline()),
                  EmptyText);
  CHECK_THROWS_AS(register_alternative_entry(store, o, id("I.9"), Language::fr, "x", pipeline()),
                  UnknownNode);
}

TEST_CASE("resolve_query") {
  const auto &o = small_ontology();
  TranslationStore store(kCommittee);
  store = apply_machine_translations(store,
                                     machine_translate_all(o, store, Language::fr, glossary()).translations);

  auto en = resolve_query("picture image generation", Language::en, o, store, pipeline());
  REQUIRE(en.found());
  CHECK(en.nodes.front().node == id("I.3.3"));

  auto fr = resolve_query("Gestion de bases de données", Language::fr, o, store, pipeline());
  CHECK(fr.stage == MatchStage::exact_label);
  CHECK(fr.nodes.front().node == id("H.2"));

  auto overlap = resolve_query("relational database tuning", Language::en, o, store, pipeline());
  CHECK(overlap.stage == MatchStage::lemma_overlap);
  CHECK(overlap.nodes.front().node == id("H.2"));
  for (std::size_t i = 1; i < overlap.nodes.size(); ++i) {
    auto prev = overlap.nodes[i - 1];
    auto cur = overlap.nodes[i];
    CHECK((prev.score > cur.score || (prev.score == cur.score && prev.node < cur.node)));
  }

  auto none = resolve_query("the of", Language::en, o, store, pipeline());
  CHECK_FALSE(none.found());
  CHECK(none.message == "\"the of\" does not exist in English in the ACM ontology");

  // exact-match dominance for every node with a unique English label
  std::map<std::string, int> counts;
  for (const auto &[nid, n] : o.nodes()) {
    ++counts[text::TextPipeline::normalize_phrase(n.label)];
  }
  for (const auto &[nid, n] : o.nodes()) {
    if (counts[text::TextPipeline::normalize_phrase(n.label)] == 1) {
      auto r = resolve_query(n.label, Language::en, o, store, pipeline());
      REQUIRE(r.found());
      CHECK(r.nodes.front().node == nid);
    }
  }
}

TEST_CASE("feed") {
  TranslationStore store(kCommittee);
  auto empty = feed(store, FeedFilter::all, "http://localhost/feed");
  CHECK(rss_guids(empty).empty());

  const auto &o = small_ontology();
  auto s1 = submit_proposal(store, o, id("H.2"), Language::fr, "Gestion <des> données & co", "u", 0);
  auto doc = feed(s1.store, FeedFilter::open, "http://localhost/feed?a=1&b=2");
  CHECK(rss_guids(doc) == std::vector<std::string>{"p1"});
  CHECK(doc.find("<pubDate>Thu, 01 Jan 1970 00:00:00 +0000</pubDate>") != std::string::npos);
  CHECK(rfc822(1792022400) == "Thu, 15 Oct 2026 00:00:00 +0000");
}

TEST_CASE("proposal log replay") {
  const auto &o = small_ontology();
  TranslationStore store(kCommittee);
  std::string log;
  auto t = *machine_translate_all(o, store, Language::fr, glossary()).translations.begin();
  store = apply_machine_translations(store, {t});
  log += log_translated(t) + "\n";

  auto s1 = submit_proposal(store, o, id("I.3.3"), Language::fr, "rendu non-photorealiste", "m3", 5);
  log += log_submitted(s1.proposal) + "\n";
  auto v1 = validate_proposal(s1.store, o, "p1", "m1", Verdict::reject_with_keep, pipeline());
  log += log_verdict("p1", "m1", Verdict::reject_with_keep) + "\n";
  auto s2 = submit_proposal(v1.store, v1.ontology, id("H.2"), Language::fr, "gestion des données", "u2", 6);
  log += log_submitted(s2.proposal) + "\n";
  auto v2 = validate_proposal(s2.store, v1.ontology, "p2", "m1", Verdict::approve, pipeline());
  log += log_verdict("p2", "m1", Verdict::approve) + "\n";
  auto v3 = validate_proposal(v2.store, v2.ontology, "p2", "m2", Verdict::approve, pipeline());
  log += log_verdict("p2", "m2", Verdict::approve) + "\n";
  auto e = register_alternative_entry(v3.store, v3.ontology, id("I.3.3"), Language::fr,
                                      "rendu expressif", pipeline());
  log += log_entry(id("I.3.3"), Language::fr, "rendu expressif") + "\n";

  auto replay = replay_log(log, TranslationStore(kCommittee), o, pipeline());
  CHECK(replay.events == 7);
  CHECK(replay.store == e.store);
  CHECK(replay.ontology == e.ontology);

  // replaying onto an ontology that already holds the keywords changes nothing there
  auto onto_saved = replay_log(log, TranslationStore(kCommittee), e.ontology, pipeline());
  CHECK(onto_saved.ontology == e.ontology);

  auto first_line = log.substr(0, log.find('\n'));
  CHECK(nlohmann::json::parse(first_line).at("event") == "translated");

  CHECK_THROWS_AS(replay_log("{\"event\":\"bogus\"}\n", TranslationStore(kCommittee), o, pipeline()),
                  MalformedLine);
  CHECK_THROWS_AS(replay_log("not json\n", TranslationStore(kCommittee), o, pipeline()), MalformedLine);
  CHECK_THROWS_AS(replay_log(log_verdict("p1", "m1", Verdict::approve), TranslationStore(kCommittee),
                             o, pipeline()),
                  MalformedLine);
}
