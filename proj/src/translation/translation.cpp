/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/translation/translation.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ontonav/errors.hpp"
#include "ontonav/ontology/operations.hpp"
#include "ontonav/xml/pull_parser.hpp"

namespace ontonav::translation {

  std::string_view to_string(TranslationStatus s) {
    switch (s) {
      case TranslationStatus::machine: return "machine";
      case TranslationStatus::proposed: return "proposed";
      case TranslationStatus::validated: return "validated";
    }
    return "machine";
  }

  std::string_view to_string(TranslationSource s) {
    return s == TranslationSource::mt_client ? "mt-client" : "community";
  }

  std::string_view to_string(ProposalState s) {
    switch (s) {
      case ProposalState::open: return "open";
      case ProposalState::accepted: return "accepted";
      case ProposalState::rejected: return "rejected";
    }
    return "open";
  }

  std::string_view to_string(Verdict v) {
    switch (v) {
      case Verdict::approve: return "approve";
      case Verdict::reject: return "reject";
      case Verdict::reject_with_keep: return "reject-with-keep";
    }
    return "approve";
  }

  std::optional<Verdict> parse_verdict(std::string_view s) {
    for (auto v : {Verdict::approve, Verdict::reject, Verdict::reject_with_keep}) {
      if (to_string(v) == s) {
        return v;
      }
    }
    return std::nullopt;
  }

  std::string_view to_string(MatchStage s) {
    switch (s) {
      case MatchStage::exact_label: return "exact-label";
      case MatchStage::alternative_entry: return "alternative-entry";
      case MatchStage::lemma_overlap: return "lemma-overlap";
      case MatchStage::not_found: return "not-found";
    }
    return "not-found";
  }

  // Write access to a store copy; keeps TranslationStore's public surface read-only.
  class StoreEditor {
   public:
    explicit StoreEditor(TranslationStore store) : s_(std::move(store)) {}

    TranslationStore &store() {
      return s_;
    }
    void set_machine(const NodeTranslation &t) {
      s_.machine_[{t.node, t.language}] = t;
    }
    void set_validated(const NodeTranslation &t) {
      s_.validated_[{t.node, t.language}] = t;
    }
    TranslationProposal &proposal(const std::string &id) {
      return s_.proposals_.at(id);
    }
    std::string add_proposal(TranslationProposal p) {
      p.id = "p" + std::to_string(s_.next_id_++);
      auto id = p.id;
      s_.proposals_.emplace(id, std::move(p));
      return id;
    }
    FeedItem &item(const std::string &guid) {
      return s_.feed_.at(guid);
    }
    void add_item(FeedItem item) {
      auto guid = item.guid;
      s_.feed_.emplace(std::move(guid), std::move(item));
    }
    bool add_entry(AlternativeEntry e) {
      if (std::find(s_.entries_.begin(), s_.entries_.end(), e) != s_.entries_.end()) {
        return false;
      }
      s_.entries_.push_back(std::move(e));
      return true;
    }

   private:
    TranslationStore s_;
  };

  std::vector<NodeTranslation> TranslationStore::translations() const {
    std::vector<NodeTranslation> out;
    for (const auto &[_, t] : machine_) {
      out.push_back(t);
    }
    for (const auto &[_, t] : validated_) {
      out.push_back(t);
    }
    return out;
  }

  const NodeTranslation *TranslationStore::validated(const NodeId &node, Language lang) const {
    auto it = validated_.find({node, lang});
    return it == validated_.end() ? nullptr : &it->second;
  }

  const NodeTranslation *TranslationStore::machine(const NodeId &node, Language lang) const {
    auto it = machine_.find({node, lang});
    return it == machine_.end() ? nullptr : &it->second;
  }

  const TranslationProposal *TranslationStore::proposal(std::string_view id) const {
    auto it = proposals_.find(std::string(id));
    return it == proposals_.end() ? nullptr : &it->second;
  }

  std::string TranslationStore::display_label(const ontology::Ontology &ontology,
                                              const NodeId &node, Language lang) const {
    const auto &n = ontology.node(node);
    if (lang == Language::en) {
      return n.label;
    }
    if (const auto *v = validated(node, lang)) {
      return v->label;
    }
    if (const auto *m = machine(node, lang)) {
      return m->label;
    }
    return n.label;
  }

  GlossaryClient GlossaryClient::parse(std::string_view source) {
    GlossaryClient client;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
      auto end = source.find('\n', start);
      auto line = source.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                    : end - start);
      start = end == std::string_view::npos ? source.size() + 1 : end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      if (line.empty() || line.front() == '#') {
        continue;
      }
      auto tab = line.find('\t');
      if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size()) {
        throw MalformedLine(line_no, "expected 'english<TAB>french'");
      }
      client.add(line.substr(0, tab), std::string(line.substr(tab + 1)));
    }
    return client;
  }

  GlossaryClient GlossaryClient::load(const std::filesystem::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      throw ConfigError("cannot read glossary " + file.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  void GlossaryClient::add(std::string_view english, std::string french) {
    auto key = text::tokenize(english);
    if (key.empty()) {
      return;
    }
    longest_ = std::max(longest_, key.size());
    phrases_[std::move(key)] = std::move(french);
  }

  std::string GlossaryClient::translate(std::string_view input, Language from, Language to) {
    if (from != Language::en || to != Language::fr) {
      throw ClientUnavailable("glossary only translates English to French");
    }
    auto tokens = text::tokenize(input);
    std::string out;
    std::size_t i = 0;
    while (i < tokens.size()) {
      std::size_t taken = 0;
      for (auto len = std::min(longest_, tokens.size() - i); len > 0; --len) {
        std::vector<std::string> probe(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
        auto it = phrases_.find(probe);
        if (it != phrases_.end()) {
          out += (out.empty() ? "" : " ") + it->second;
          taken = len;
          break;
        }
      }
      if (taken == 0) {
        out += (out.empty() ? "" : " ") + tokens[i];
        taken = 1;
      }
      i += taken;
    }
    return out;
  }

  MachineTranslationResult machine_translate_all(const ontology::Ontology &ontology,
                                                 const TranslationStore &store,
                                                 Language language, MtClient &client) {
    MachineTranslationResult result;
    for (const auto &[id, node] : ontology.nodes()) {
      if (store.validated(id, language) != nullptr) {
        continue;
      }
      NodeTranslation t{id, language, {}, TranslationStatus::machine,
                        TranslationSource::mt_client};
      try {
        t.label = client.translate(node.label, Language::en, language);
      } catch (const ClientUnavailable &) {
        t.label = node.label;
        result.failures.push_back(id);
      }
      result.translations.insert(std::move(t));
    }
    return result;
  }

  TranslationStore apply_machine_translations(const TranslationStore &store,
                                              const std::set<NodeTranslation> &translations) {
    StoreEditor editor(store);
    for (const auto &t : translations) {
      if (store.validated(t.node, t.language) == nullptr) {
        editor.set_machine(t);
      }
    }
    return std::move(editor.store());
  }

  Submission submit_proposal(const TranslationStore &store, const ontology::Ontology &ontology,
                             const NodeId &node, Language language, std::string text,
                             std::string submitter, Timestamp now) {
    const auto &n = ontology.node(node);
    if (text::TextPipeline::normalize_phrase(text).empty()) {
      throw EmptyText();
    }
    if (submitter.empty()) {
      throw std::invalid_argument("proposal submitter must be identified");
    }
    StoreEditor editor(store);
    TranslationProposal p;
    p.node = node;
    p.language = language;
    p.text = std::move(text);
    p.submitter = std::move(submitter);
    p.submitted_at = now;
    auto id = editor.add_proposal(p);
    auto &stored = editor.proposal(id);

    FeedItem item;
    item.guid = id;
    item.title = "Translation proposal " + id + " for " + node.str() + " ("
               + std::string(to_string(language)) + ")";
    item.description = "\"" + stored.text + "\" proposed by " + stored.submitter + " for \""
                     + n.label + "\"";
    item.pub_date = now;
    editor.add_item(item);
    auto proposal = stored;
    return {std::move(editor.store()), std::move(proposal), std::move(item)};
  }

  namespace {

    Registration register_entry(const TranslationStore &store, const ontology::Ontology &ontology,
                                const NodeId &node, Language language, std::string text,
                                const text::TextPipeline &pipeline) {
      ontology.node(node);
      if (text::TextPipeline::normalize_phrase(text).empty()) {
        throw EmptyText();
      }
      auto lemmas = pipeline.extract_keywords(text, language);
      AlternativeEntry entry{node, language, std::move(text), lemmas};
      StoreEditor editor(store);
      editor.add_entry(entry);
      auto updated = ontology;
      for (const auto &lemma : lemmas) {
        updated = ontology::add_keyword(updated, node, lemma, ontology::KeywordOrigin::folksonomy);
      }
      return {std::move(editor.store()), std::move(updated), std::move(entry)};
    }

  }  // namespace

  Registration register_alternative_entry(const TranslationStore &store,
                                          const ontology::Ontology &ontology, const NodeId &node,
                                          Language language, std::string text,
                                          const text::TextPipeline &pipeline) {
    return register_entry(store, ontology, node, language, std::move(text), pipeline);
  }

  Validation validate_proposal(const TranslationStore &store, const ontology::Ontology &ontology,
                               std::string_view proposal_id, const std::string &member,
                               Verdict verdict, const text::TextPipeline &pipeline) {
    const auto *existing = store.proposal(proposal_id);
    if (existing == nullptr) {
      throw UnknownProposal(std::string(proposal_id));
    }
    if (!store.committee().contains(member)) {
      throw NotCommitteeMember(member);
    }
    if (existing->state != ProposalState::open) {
      throw AlreadyClosed(existing->id);
    }
    if (verdict == Verdict::approve && member == existing->submitter) {
      throw SelfValidation(member);
    }

    StoreEditor editor(store);
    auto &p = editor.proposal(existing->id);
    Validation out{{}, ontology, {}, std::nullopt};
    if (verdict == Verdict::approve) {
      p.validations.insert(member);
      if (p.validations.size() >= 2) {
        p.state = ProposalState::accepted;
        editor.set_validated({p.node, p.language, p.text, TranslationStatus::validated,
                              TranslationSource::community});
        editor.item(p.id).closed = true;
      }
    } else {
      p.state = ProposalState::rejected;
      editor.item(p.id).closed = true;
    }
    out.proposal = p;
    out.store = std::move(editor.store());
    if (verdict == Verdict::reject_with_keep) {
      auto reg = register_entry(out.store, ontology, out.proposal.node, out.proposal.language,
                                out.proposal.text, pipeline);
      out.store = std::move(reg.store);
      out.ontology = std::move(reg.ontology);
      out.entry = std::move(reg.entry);
    }
    return out;
  }

  std::string not_found_message(std::string_view text, Language language) {
    return "\"" + std::string(text) + "\" does not exist in " + std::string(display_name(language))
         + " in the ACM ontology";
  }

  Resolution resolve_query(std::string_view text, Language language,
                           const ontology::Ontology &ontology, const TranslationStore &store,
                           const text::TextPipeline &pipeline) {
    Resolution r;
    auto normalized = text::TextPipeline::normalize_phrase(text);
    if (normalized.empty()) {
      r.message = not_found_message(text, language);
      return r;
    }

    std::vector<RankedNode> exact;
    for (const auto &[id, node] : ontology.nodes()) {
      std::optional<std::string> label;
      if (language == Language::en) {
        label = node.label;
      } else if (const auto *v = store.validated(id, language)) {
        label = v->label;
      } else if (const auto *m = store.machine(id, language)) {
        label = m->label;
      }
      if (label && text::TextPipeline::normalize_phrase(*label) == normalized) {
        exact.push_back({id, 0});
      }
    }
    if (!exact.empty()) {
      r.stage = MatchStage::exact_label;
      r.nodes = std::move(exact);
      return r;
    }

    std::set<NodeId> entry_hits;
    std::map<NodeId, text::KeywordSet> entry_lemmas;
    for (const auto &e : store.entries()) {
      if (e.language != language) {
        continue;
      }
      if (text::TextPipeline::normalize_phrase(e.text) == normalized) {
        entry_hits.insert(e.node);
      }
      entry_lemmas[e.node].insert(e.lemmas.begin(), e.lemmas.end());
    }
    if (!entry_hits.empty()) {
      r.stage = MatchStage::alternative_entry;
      for (const auto &id : entry_hits) {
        r.nodes.push_back({id, 0});
      }
      return r;
    }

    auto query = pipeline.extract_keywords(text, language);
    for (const auto &[id, _] : ontology.nodes()) {
      auto pool = ontology::keyword_cluster(ontology, id);
      if (auto it = entry_lemmas.find(id); it != entry_lemmas.end()) {
        pool.insert(it->second.begin(), it->second.end());
      }
      std::size_t score = 0;
      for (const auto &q : query) {
        score += pool.count(q);
      }
      if (score > 0) {
        r.nodes.push_back({id, score});
      }
    }
    if (r.nodes.empty()) {
      r.message = not_found_message(text, language);
      return r;
    }
    std::stable_sort(r.nodes.begin(), r.nodes.end(),
                     [](const RankedNode &a, const RankedNode &b) { return a.score > b.score; });
    r.stage = MatchStage::lemma_overlap;
    return r;
  }

  std::string rfc822(Timestamp t) {
    std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    static constexpr const char *kDays[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
    static constexpr const char *kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                              "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s, %02d %s %04d %02d:%02d:%02d +0000", kDays[tm.tm_wday],
                  tm.tm_mday, kMonths[tm.tm_mon], tm.tm_year + 1900, tm.tm_hour, tm.tm_min,
                  tm.tm_sec);
    return buf;
  }

  std::string feed(const TranslationStore &store, FeedFilter filter,
                   std::string_view channel_link) {
    std::vector<const FeedItem *> items;
    for (const auto &[_, item] : store.feed_items()) {
      if (filter == FeedFilter::all || !item.closed) {
        items.push_back(&item);
      }
    }
    // newest first; ids are "p<n>" so compare numerically
    auto number = [](const std::string &guid) { return std::stoull(guid.substr(1)); };
    std::sort(items.begin(), items.end(), [&](const FeedItem *a, const FeedItem *b) {
      return number(a->guid) > number(b->guid);
    });

    auto link = xml::escape(channel_link);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<rss version=\"2.0\">\n<channel>\n";
    out += "<title>Ontology translation proposals</title>\n";
    out += "<link>" + link + "</link>\n";
    out += "<description>Open community translation proposals awaiting committee review</description>\n";
    for (const auto *item : items) {
      out += "<item>\n";
      out += "<guid isPermaLink=\"false\">" + xml::escape(item->guid) + "</guid>\n";
      out += "<title>" + xml::escape(item->title) + "</title>\n";
      out += "<description>" + xml::escape(item->description) + "</description>\n";
      out += "<pubDate>" + rfc822(item->pub_date) + "</pubDate>\n";
      if (item->closed) {
        out += "<category>closed</category>\n";
      }
      out += "</item>\n";
    }
    out += "</channel>\n</rss>\n";
    return out;
  }

}  // namespace ontonav::translation
