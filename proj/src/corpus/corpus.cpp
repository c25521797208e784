/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/corpus/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>

#include "ontonav/errors.hpp"

namespace ontonav::corpus {

  namespace {

    constexpr std::string_view kProvisionalSuffix = ";provisional";

    int hex_value(char c) {
      if (c >= '0' && c <= '9') {
        return c - '0';
      }
      if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
      }
      if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
      }
      return -1;
    }

    std::string ordinal(std::size_t i) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%03zu", i);
      return buf;
    }

  }  // namespace

  const ArticleRecord *PseudoCorpus::find(std::string_view id) const {
    auto it = records_.find(std::string(id));
    return it == records_.end() ? nullptr : &it->second;
  }

  text::KeywordSet title_lemmas(const ArticleRecord &record,
                                const text::TextPipeline &pipeline) {
    return pipeline.extract_keywords(record.title, lemma_language(record));
  }

  void PseudoCorpus::index_record(const ArticleRecord &r, const text::TextPipeline &pipeline) {
    for (const auto &lemma : title_lemmas(r, pipeline)) {
      index_[lemma].insert(r.id);
    }
  }

  void PseudoCorpus::unindex_record(const ArticleRecord &r,
                                    const text::TextPipeline &pipeline) {
    for (const auto &lemma : title_lemmas(r, pipeline)) {
      auto it = index_.find(lemma);
      if (it != index_.end()) {
        it->second.erase(r.id);
        if (it->second.empty()) {
          index_.erase(it);
        }
      }
    }
  }

  bool PseudoCorpus::upsert(ArticleRecord record, const text::TextPipeline &pipeline) {
    auto it = records_.find(record.id);
    if (it != records_.end()) {
      if (it->second == record) {
        return false;
      }
      unindex_record(it->second, pipeline);
      it->second = std::move(record);
      index_record(it->second, pipeline);
    } else {
      auto id = record.id;
      auto [pos, _] = records_.emplace(std::move(id), std::move(record));
      index_record(pos->second, pipeline);
    }
    return true;
  }

  LemmaIndex PseudoCorpus::recompute_index(const text::TextPipeline &pipeline) const {
    LemmaIndex out;
    for (const auto &[id, r] : records_) {
      for (const auto &lemma : title_lemmas(r, pipeline)) {
        out[lemma].insert(id);
      }
    }
    return out;
  }

  PseudoCorpus incremental_update(const PseudoCorpus &corpus,
                                  std::span<const ArticleRecord> batch, Timestamp now,
                                  const text::TextPipeline &pipeline) {
    PseudoCorpus next = corpus;
    bool changed = false;
    for (const auto &r : batch) {
      changed = next.upsert(r, pipeline) || changed;
    }
    if (changed) {
      next.bump_version();
    }
    next.set_updated_at(std::max(now, corpus.updated_at()));
    return next;
  }

  std::vector<const ArticleRecord *> search_internal(const PseudoCorpus &corpus,
                                                     const text::KeywordSet &query_lemmas) {
    std::map<std::string_view, std::size_t> overlap;
    for (const auto &lemma : query_lemmas) {
      auto it = corpus.lemma_index().find(lemma);
      if (it == corpus.lemma_index().end()) {
        continue;
      }
      for (const auto &id : it->second) {
        ++overlap[id];
      }
    }
    struct Hit {
      std::size_t score;
      const ArticleRecord *record;
    };
    std::vector<Hit> hits;
    hits.reserve(overlap.size());
    for (const auto &[id, score] : overlap) {
      hits.push_back({score, corpus.find(id)});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit &a, const Hit &b) {
      if (a.score != b.score) {
        return a.score > b.score;
      }
      auto ya = a.record->year.value_or(std::numeric_limits<int>::min());
      auto yb = b.record->year.value_or(std::numeric_limits<int>::min());
      if (ya != yb) {
        return ya > yb;
      }
      return a.record->id < b.record->id;
    });
    std::vector<const ArticleRecord *> out;
    out.reserve(hits.size());
    for (const auto &h : hits) {
      out.push_back(h.record);
    }
    return out;
  }

  std::string encode_triple_value(std::string_view value) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(value.size());
    for (unsigned char c : value) {
      if (c == ' ' || c == '%' || c < 0x20 || c == 0x7f) {
        out.push_back('%');
        out.push_back(kHex[c >> 4]);
        out.push_back(kHex[c & 0xf]);
      } else {
        out.push_back(static_cast<char>(c));
      }
    }
    return out;
  }

  std::string decode_triple_value(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (value[i] == '%' && i + 2 < value.size() && hex_value(value[i + 1]) >= 0
          && hex_value(value[i + 2]) >= 0) {
        out.push_back(static_cast<char>(hex_value(value[i + 1]) * 16 + hex_value(value[i + 2])));
        i += 2;
      } else {
        out.push_back(value[i]);
      }
    }
    return out;
  }

  SnapshotCache build_snapshot(const PseudoCorpus &corpus) {
    std::vector<std::string> lines;
    for (const auto &[id, r] : corpus.records()) {
      auto subject = encode_triple_value(id) + " ";
      auto add = [&](std::string_view pred, std::string_view value) {
        lines.push_back(subject + std::string(pred) + " " + encode_triple_value(value));
      };
      add("title", r.title);
      if (r.year) {
        add("year", std::to_string(*r.year));
      }
      if (!r.context.empty()) {
        add("context", r.context);
      }
      for (std::size_t i = 0; i < r.authors.size(); ++i) {
        add("author", ordinal(i) + ":" + r.authors[i]);
      }
      if (r.uri) {
        add("uri", *r.uri);
      }
      if (r.language) {
        add("language", to_string(*r.language));
      }
      for (const auto &a : r.assignments) {
        add("assignedTo", a.status == AssignmentStatus::permanent
                              ? a.node.str()
                              : a.node.str() + std::string(kProvisionalSuffix));
      }
    }
    std::sort(lines.begin(), lines.end());
    SnapshotCache cache;
    cache.corpus_version = corpus.version();
    for (const auto &l : lines) {
      cache.document += l;
      cache.document.push_back('\n');
    }
    return cache;
  }

  PseudoCorpus parse_snapshot(std::string_view document, const text::TextPipeline &pipeline) {
    std::map<std::string, ArticleRecord> records;
    std::map<std::string, std::map<std::string, std::string>> authors;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < document.size()) {
      auto end = document.find('\n', start);
      if (end == std::string_view::npos) {
        end = document.size();
      }
      auto line = document.substr(start, end - start);
      start = end + 1;
      ++line_no;
      if (line.empty()) {
        continue;
      }
      auto s1 = line.find(' ');
      auto s2 = s1 == std::string_view::npos ? s1 : line.find(' ', s1 + 1);
      if (s2 == std::string_view::npos || line.find(' ', s2 + 1) != std::string_view::npos) {
        throw MalformedLine(line_no, "expected '<id> <predicate> <value>'");
      }
      auto id = decode_triple_value(line.substr(0, s1));
      auto pred = line.substr(s1 + 1, s2 - s1 - 1);
      auto value = decode_triple_value(line.substr(s2 + 1));
      auto &r = records[id];
      r.id = id;
      if (pred == "title") {
        r.title = value;
      } else if (pred == "year") {
        int y = 0;
        auto res = std::from_chars(value.data(), value.data() + value.size(), y);
        if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
          throw MalformedLine(line_no, "bad year");
        }
        r.year = y;
      } else if (pred == "context") {
        r.context = value;
      } else if (pred == "author") {
        auto colon = value.find(':');
        if (colon == std::string::npos) {
          throw MalformedLine(line_no, "author value lacks its ordinal");
        }
        authors[id][value.substr(0, colon)] = value.substr(colon + 1);
      } else if (pred == "uri") {
        r.uri = value;
      } else if (pred == "language") {
        r.language = parse_title_language(value);
        if (!r.language) {
          throw MalformedLine(line_no, "unknown language");
        }
      } else if (pred == "assignedTo") {
        Assignment a;
        std::string_view code = value;
        if (code.ends_with(kProvisionalSuffix)) {
          code.remove_suffix(kProvisionalSuffix.size());
          a.status = AssignmentStatus::provisional;
        }
        auto node = ontology::NodeId::try_parse(code);
        if (!node) {
          throw MalformedLine(line_no, "bad node code");
        }
        a.node = *node;
        r.assignments.push_back(std::move(a));
      } else {
        throw MalformedLine(line_no, "unknown predicate '" + std::string(pred) + "'");
      }
    }
    PseudoCorpus corpus;
    for (auto &[id, r] : records) {
      if (r.title.empty()) {
        throw MalformedLine(line_no, "record '" + id + "' has no title");
      }
      for (auto &[_, name] : authors[id]) {
        r.authors.push_back(std::move(name));
      }
      std::sort(r.assignments.begin(), r.assignments.end(),
                [](const Assignment &a, const Assignment &b) { return a.node < b.node; });
      corpus.upsert(std::move(r), pipeline);
    }
    return corpus;
  }

  std::vector<ontology::CoAssignment> co_assignments(const PseudoCorpus &corpus) {
    std::vector<ontology::CoAssignment> out;
    for (const auto &[id, r] : corpus.records()) {
      ontology::CoAssignment c{id, {}};
      for (const auto &a : r.assignments) {
        if (a.status == AssignmentStatus::permanent) {
          c.nodes.push_back(a.node);
        }
      }
      if (c.nodes.size() >= 2) {
        out.push_back(std::move(c));
      }
    }
    return out;
  }

}  // namespace ontonav::corpus
