/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/xml/pull_parser.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <istream>

#include "ontonav/errors.hpp"
#include "ontonav/text/unicode.hpp"

namespace ontonav::xml {

  namespace {

    // HTML names for U+00A0..U+00FF, in code point order.
    constexpr std::array<std::string_view, 96> kLatin1Entities = {
        "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar",
        "sect",   "uml",    "copy",   "ordf",   "laquo",  "not",    "shy",
        "reg",    "macr",   "deg",    "plusmn", "sup2",   "sup3",   "acute",
        "micro",  "para",   "middot", "cedil",  "sup1",   "ordm",   "raquo",
        "frac14", "frac12", "frac34", "iquest", "Agrave", "Aacute", "Acirc",
        "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil", "Egrave", "Eacute",
        "Ecirc",  "Euml",   "Igrave", "Iacute", "Icirc",  "Iuml",   "ETH",
        "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",   "times",
        "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",
        "szlig",  "agrave", "aacute", "acirc",  "atilde", "auml",   "aring",
        "aelig",  "ccedil", "egrave", "eacute", "ecirc",  "euml",   "igrave",
        "iacute", "icirc",  "iuml",   "eth",    "ntilde", "ograve", "oacute",
        "ocirc",  "otilde", "ouml",   "divide", "oslash", "ugrave", "uacute",
        "ucirc",  "uuml",   "yacute", "thorn",  "yuml",
    };

    struct NamedEntity {
      std::string_view name;
      char32_t cp;
    };
    constexpr NamedEntity kExtraEntities[] = {
        {"lt", '<'},        {"gt", '>'},         {"amp", '&'},
        {"quot", '"'},      {"apos", '\''},      {"OElig", 0x152},
        {"oelig", 0x153},   {"Scaron", 0x160},   {"scaron", 0x161},
        {"Yuml", 0x178},    {"ndash", 0x2013},   {"mdash", 0x2014},
        {"lsquo", 0x2018},  {"rsquo", 0x2019},   {"ldquo", 0x201C},
        {"rdquo", 0x201D},  {"hellip", 0x2026},  {"euro", 0x20AC},
    };

    std::optional<char32_t> lookup_entity(std::string_view name) {
      for (const auto &e : kExtraEntities) {
        if (e.name == name) {
          return e.cp;
        }
      }
      for (std::size_t i = 0; i < kLatin1Entities.size(); ++i) {
        if (kLatin1Entities[i] == name) {
          return static_cast<char32_t>(0xA0 + i);
        }
      }
      return std::nullopt;
    }

    bool is_space(int c) {
      return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    }

    bool is_name_char(int c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')
          || (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.'
          || c == ':' || c >= 0x80;
    }

  }  // namespace

  const std::string *Event::attribute(std::string_view key) const {
    for (const auto &[k, v] : attributes) {
      if (k == key) {
        return &v;
      }
    }
    return nullptr;
  }

  PullParser::PullParser(std::istream &in, std::size_t chunk_size)
      : in_(in), buffer_(chunk_size == 0 ? 4096 : chunk_size) {}

  bool PullParser::fill() {
    if (eof_) {
      return false;
    }
    consumed_ += len_;
    in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    len_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    if (len_ == 0) {
      eof_ = true;
      return false;
    }
    return true;
  }

  int PullParser::peek() {
    if (pos_ >= len_ && !fill()) {
      return -1;
    }
    return static_cast<unsigned char>(buffer_[pos_]);
  }

  int PullParser::get() {
    int c = peek();
    if (c >= 0) {
      ++pos_;
    }
    return c;
  }

  void PullParser::fail(const std::string &why) const {
    throw XmlSyntax(consumed_ + pos_, why);
  }

  void PullParser::track(std::size_t token_bytes) {
    auto total = buffer_.size() + token_bytes;
    if (total > peak_buffered_) {
      peak_buffered_ = total;
    }
  }

  void PullParser::expect(char c) {
    int got = get();
    if (got != static_cast<unsigned char>(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  bool PullParser::consume_literal(std::string_view lit) {
    for (char c : lit) {
      if (get() != static_cast<unsigned char>(c)) {
        return false;
      }
    }
    return true;
  }

  void PullParser::skip_until(std::string_view terminator) {
    std::size_t matched = 0;
    while (matched < terminator.size()) {
      int c = get();
      if (c < 0) {
        fail("unterminated construct, expected '" + std::string(terminator) + "'");
      }
      if (c == static_cast<unsigned char>(terminator[matched])) {
        ++matched;
      } else {
        matched = (c == static_cast<unsigned char>(terminator[0])) ? 1 : 0;
      }
    }
  }

  void PullParser::skip_doctype() {
    int bracket = 0;
    for (;;) {
      int c = get();
      if (c < 0) {
        fail("unterminated DOCTYPE");
      }
      if (c == '[') {
        ++bracket;
      } else if (c == ']') {
        --bracket;
      } else if (c == '>' && bracket <= 0) {
        return;
      } else if (c == '"' || c == '\'') {
        int quote = c;
        while ((c = get()) != quote) {
          if (c < 0) {
            fail("unterminated DOCTYPE literal");
          }
        }
      }
    }
  }

  void PullParser::skip_whitespace() {
    while (is_space(peek())) {
      get();
    }
  }

  std::string PullParser::read_name() {
    std::string name;
    while (is_name_char(peek())) {
      name.push_back(static_cast<char>(get()));
    }
    if (name.empty()) {
      fail("expected a name");
    }
    return name;
  }

  void PullParser::read_entity(std::string &out) {
    std::string name;
    for (;;) {
      int c = get();
      if (c < 0) {
        fail("unterminated entity reference");
      }
      if (c == ';') {
        break;
      }
      name.push_back(static_cast<char>(c));
      if (name.size() > 32) {
        fail("entity reference too long");
      }
    }
    if (name.empty()) {
      fail("empty entity reference");
    }
    if (name[0] == '#') {
      std::uint32_t value = 0;
      std::from_chars_result res{};
      if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
        res = std::from_chars(name.data() + 2, name.data() + name.size(), value, 16);
      } else {
        res = std::from_chars(name.data() + 1, name.data() + name.size(), value, 10);
      }
      if (res.ec != std::errc{} || res.ptr != name.data() + name.size()
          || value == 0 || value > 0x10FFFF) {
        fail("bad character reference &" + name + ";");
      }
      text::append_utf8(out, value);
      return;
    }
    auto cp = lookup_entity(name);
    if (!cp) {
      fail("unknown entity &" + name + ";");
    }
    text::append_utf8(out, *cp);
  }

  void PullParser::read_start_tag() {
    event_.type = EventType::start_element;
    event_.name = read_name();
    event_.attributes.clear();
    std::size_t token = event_.name.size();
    for (;;) {
      skip_whitespace();
      int c = peek();
      if (c == '/') {
        get();
        expect('>');
        pending_end_ = event_.name;
        break;
      }
      if (c == '>') {
        get();
        open_.push_back(event_.name);
        break;
      }
      if (c < 0) {
        fail("unterminated start tag <" + event_.name + ">");
      }
      auto key = read_name();
      skip_whitespace();
      expect('=');
      skip_whitespace();
      int quote = get();
      if (quote != '"' && quote != '\'') {
        fail("attribute value must be quoted");
      }
      std::string value;
      for (;;) {
        int v = get();
        if (v < 0) {
          fail("unterminated attribute value");
        }
        if (v == quote) {
          break;
        }
        if (v == '<') {
          fail("'<' in attribute value");
        }
        if (v == '&') {
          read_entity(value);
        } else {
          value.push_back(static_cast<char>(v));
        }
      }
      for (const auto &[k, _] : event_.attributes) {
        if (k == key) {
          fail("duplicate attribute '" + key + "'");
        }
      }
      token += key.size() + value.size();
      event_.attributes.emplace_back(std::move(key), std::move(value));
    }
    seen_root_ = true;
    track(token);
  }

  void PullParser::read_end_tag() {
    auto name = read_name();
    skip_whitespace();
    expect('>');
    if (open_.empty() || open_.back() != name) {
      throw XmlSyntax(event_.offset, "mismatched end tag </" + name + ">");
    }
    open_.pop_back();
    event_.type = EventType::end_element;
    event_.name = std::move(name);
    event_.attributes.clear();
  }

  void PullParser::read_text() {
    event_.type = EventType::text;
    event_.name.clear();
    event_.attributes.clear();
    event_.text.clear();
    for (;;) {
      int c = peek();
      if (c < 0 || c == '<') {
        break;
      }
      get();
      if (c == '&') {
        read_entity(event_.text);
      } else {
        event_.text.push_back(static_cast<char>(c));
      }
    }
    track(event_.text.size());
  }

  void PullParser::read_cdata() {
    event_.type = EventType::text;
    event_.name.clear();
    event_.attributes.clear();
    event_.text.clear();
    for (;;) {
      int c = get();
      if (c < 0) {
        fail("unterminated CDATA section");
      }
      event_.text.push_back(static_cast<char>(c));
      auto n = event_.text.size();
      if (n >= 3 && event_.text.compare(n - 3, 3, "]]>") == 0) {
        event_.text.resize(n - 3);
        break;
      }
    }
    track(event_.text.size());
  }

  const Event &PullParser::next() {
    if (pending_end_) {
      event_.type = EventType::end_element;
      event_.name = std::move(*pending_end_);
      event_.attributes.clear();
      pending_end_.reset();
      return event_;
    }
    for (;;) {
      event_.offset = consumed_ + pos_;
      int c = peek();
      if (c < 0) {
        if (!open_.empty()) {
          fail("unexpected end of document inside <" + open_.back() + ">");
        }
        if (!seen_root_) {
          fail("document has no root element");
        }
        event_.type = EventType::end_document;
        event_.name.clear();
        event_.attributes.clear();
        event_.text.clear();
        return event_;
      }
      if (c != '<') {
        if (open_.empty()) {
          // Only whitespace may appear outside the root element.
          if (!is_space(c)) {
            fail("text outside the root element");
          }
          get();
          continue;
        }
        read_text();
        return event_;
      }
      get();
      int d = peek();
      if (d == '?') {
        skip_until("?>");
        continue;
      }
      if (d == '!') {
        get();
        if (peek() == '-') {
          if (!consume_literal("--")) {
            fail("malformed comment");
          }
          skip_until("-->");
          continue;
        }
        if (peek() == '[') {
          if (!consume_literal("[CDATA[")) {
            fail("malformed CDATA section");
          }
          if (open_.empty()) {
            fail("CDATA outside the root element");
          }
          read_cdata();
          return event_;
        }
        if (!consume_literal("DOCTYPE")) {
          fail("unknown markup declaration");
        }
        skip_doctype();
        continue;
      }
      if (d == '/') {
        get();
        read_end_tag();
        return event_;
      }
      if (open_.empty() && seen_root_) {
        fail("second root element");
      }
      read_start_tag();
      return event_;
    }
  }

  std::string escape(std::string_view text, bool attribute) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"':
          out += attribute ? "&quot;" : "\"";
          break;
        case '\'':
          out += attribute ? "&apos;" : "'";
          break;
        case '\n':
          out += attribute ? "&#10;" : "\n";
          break;
        default: out.push_back(c);
      }
    }
    return out;
  }

}  // namespace ontonav::xml
