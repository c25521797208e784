/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <charconv>

#include "ontonav/corpus/parsers.hpp"

namespace ontonav::corpus {

  namespace {

    bool is_publication(const std::string &name) {
      return name == "article" || name == "inproceedings";
    }

    std::string squash(std::string_view s) {
      std::string out;
      bool pending = false;
      for (char c : s) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
          pending = !out.empty();
        } else {
          if (pending) {
            out.push_back(' ');
            pending = false;
          }
          out.push_back(c);
        }
      }
      return out;
    }

  }  // namespace

  DblpReader::DblpReader(std::istream &in, std::size_t chunk_size)
      : parser_(in, chunk_size) {}

  std::optional<ArticleRecord> DblpReader::next() {
    for (;;) {
      const auto &ev = parser_.next();
      if (ev.type == xml::EventType::end_document) {
        return std::nullopt;
      }
      if (ev.type != xml::EventType::start_element || parser_.depth() != 2) {
        continue;
      }
      if (!is_publication(ev.name)) {
        continue;
      }
      const auto *key_attr = ev.attribute("key");
      auto key = key_attr ? *key_attr : std::string();
      auto element = ev.name;
      auto record = read_publication(element, key);
      if (record.title.empty()) {
        skipped_.emplace_back(key.empty() ? std::string("<no key>") : key);
        continue;
      }
      return record;
    }
  }

  std::string DblpReader::read_text_content() {
    // Collects text of the current element, flattening inline markup.
    std::string out;
    std::size_t depth = 1;
    while (depth > 0) {
      const auto &ev = parser_.next();
      switch (ev.type) {
        case xml::EventType::text: out += ev.text; break;
        case xml::EventType::start_element: ++depth; break;
        case xml::EventType::end_element: --depth; break;
        case xml::EventType::end_document: return out;
      }
    }
    return squash(out);
  }

  ArticleRecord DblpReader::read_publication(const std::string &element, std::string key) {
    ArticleRecord r;
    std::string journal;
    std::string booktitle;
    std::string year;
    for (;;) {
      const auto &ev = parser_.next();
      if (ev.type == xml::EventType::end_element && ev.name == element) {
        break;
      }
      if (ev.type != xml::EventType::start_element) {
        continue;
      }
      auto name = ev.name;
      auto value = read_text_content();
      if (name == "title") {
        r.title = value;
      } else if (name == "author") {
        if (!value.empty()) {
          r.authors.push_back(std::move(value));
        }
      } else if (name == "year") {
        year = value;
      } else if (name == "journal") {
        journal = value;
      } else if (name == "booktitle") {
        booktitle = value;
      } else if (name == "ee" && !r.uri && !value.empty()) {
        r.uri = value;
      }
    }
    if (r.title.size() > 1 && r.title.back() == '.') {
      r.title.pop_back();
    }
    int y = 0;
    auto res = std::from_chars(year.data(), year.data() + year.size(), y);
    if (res.ec == std::errc{} && res.ptr == year.data() + year.size()) {
      r.year = y;
    }
    r.context = journal.empty() ? booktitle : journal;
    r.id = key.empty() ? derived_record_id(r.title, r.year) : std::move(key);
    return r;
  }

  std::vector<ArticleRecord> parse_dblp_xml(std::istream &in) {
    DblpReader reader(in);
    std::vector<ArticleRecord> out;
    while (auto r = reader.next()) {
      out.push_back(std::move(*r));
    }
    return out;
  }

}  // namespace ontonav::corpus
