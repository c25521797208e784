/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_XML_PULL_PARSER_HPP
#define ONTONAV_XML_PULL_PARSER_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontonav::xml {

  enum class EventType { start_element, end_element, text, end_document };

  struct Event {
    EventType type = EventType::end_document;
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    /// Byte offset where the event started.
    std::size_t offset = 0;

    const std::string *attribute(std::string_view key) const;
  };

  /**
   * Streaming XML reader.
   *
   * Reads the input in fixed-size chunks and hands out one event at a time, so
   * memory stays proportional to the largest single token, not to the
   * document. Self-closing tags produce a start and an end event. Comments,
   * processing instructions and the DOCTYPE (internal subset included) are
   * skipped. Character references and the predefined plus Latin-1 HTML
   * entities are decoded; anything else raises XmlSyntax.
   */
  class PullParser {
   public:
    explicit PullParser(std::istream &in, std::size_t chunk_size = 64 * 1024);

    const Event &next();

    /// Largest number of bytes held at once: chunk buffer plus current token.
    std::size_t peak_buffered_bytes() const noexcept {
      return peak_buffered_;
    }

    std::size_t depth() const noexcept {
      return open_.size();
    }

   private:
    int peek();
    int get();
    bool fill();
    [[noreturn]] void fail(const std::string &why) const;

    void expect(char c);
    bool consume_literal(std::string_view lit);
    void skip_until(std::string_view terminator);
    void skip_doctype();
    void skip_whitespace();
    std::string read_name();
    void read_entity(std::string &out);
    void read_start_tag();
    void read_end_tag();
    void read_text();
    void read_cdata();
    void track(std::size_t token_bytes);

    std::istream &in_;
    std::vector<char> buffer_;
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
    std::size_t consumed_ = 0;
    bool eof_ = false;

    Event event_;
    std::vector<std::string> open_;
    std::optional<std::string> pending_end_;
    bool seen_root_ = false;
    std::size_t peak_buffered_ = 0;
  };

  /// Escapes &, <, > and, for attributes, both quote characters.
  std::string escape(std::string_view text, bool attribute = false);

}  // namespace ontonav::xml

#endif  // ONTONAV_XML_PULL_PARSER_HPP
