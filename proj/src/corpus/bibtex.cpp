/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "ontonav/corpus/parsers.hpp"
#include "ontonav/text/unicode.hpp"

namespace ontonav::corpus {

  namespace {

    // (accent, base letter) -> precomposed code point
    char32_t compose(char accent, char base) {
      static const std::map<std::pair<char, char>, char32_t> table = [] {
        std::map<std::pair<char, char>, char32_t> t;
        auto row = [&](char accent, std::string_view bases, std::u32string_view out) {
          for (std::size_t i = 0; i < bases.size(); ++i) {
            t[{accent, bases[i]}] = out[i];
          }
        };
        row('\'', "aeiouyAEIOUYcnCN", U"áéíóúýÁÉÍÓÚÝćńĆŃ");
        row('`', "aeiouAEIOU", U"àèìòùÀÈÌÒÙ");
        row('^', "aeiouAEIOU", U"âêîôûÂÊÎÔÛ");
        row('"', "aeiouyAEIOU", U"äëïöüÿÄËÏÖÜ");
        row('~', "anoANO", U"ãñõÃÑÕ");
        row('c', "cCsS", U"çÇşŞ");
        row('v', "csznrCSZNR", U"čšžňřČŠŽŇŘ");
        return t;
      }();
      auto it = table.find({accent, base});
      return it == table.end() ? static_cast<char32_t>(static_cast<unsigned char>(base))
                               : it->second;
    }

    std::string collapse_whitespace(std::string_view s) {
      std::string out;
      bool pending = false;
      for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
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

    class Scanner {
     public:
      explicit Scanner(std::string_view text) : text_(text) {}

      bool at_end() const {
        return pos_ >= text_.size();
      }
      char peek() const {
        return at_end() ? '\0' : text_[pos_];
      }
      char get() {
        return at_end() ? '\0' : text_[pos_++];
      }
      void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
          ++pos_;
        }
      }
      std::string identifier() {
        std::string out;
        while (!at_end()) {
          char c = peek();
          if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':'
              || c == '.' || c == '/' || c == '+') {
            out.push_back(c);
            ++pos_;
          } else {
            break;
          }
        }
        return out;
      }
      bool seek(char c) {
        auto p = text_.find(c, pos_);
        pos_ = p == std::string_view::npos ? text_.size() : p;
        return p != std::string_view::npos;
      }

      /// Content of a braced group; the opening brace is already consumed.
      std::optional<std::string> braced() {
        std::string out;
        int depth = 1;
        while (!at_end()) {
          char c = get();
          if (c == '\\' && !at_end()) {
            out.push_back(c);
            out.push_back(get());
            continue;
          }
          if (c == '{') {
            ++depth;
          } else if (c == '}' && --depth == 0) {
            return out;
          }
          out.push_back(c);
        }
        return std::nullopt;
      }

      std::optional<std::string> quoted() {
        std::string out;
        int depth = 0;
        while (!at_end()) {
          char c = get();
          if (c == '\\' && !at_end()) {
            out.push_back(c);
            out.push_back(get());
            continue;
          }
          if (c == '"' && depth == 0) {
            return out;
          }
          depth += c == '{' ? 1 : c == '}' ? -1 : 0;
          out.push_back(c);
        }
        return std::nullopt;
      }

     private:
      std::string_view text_;
      std::size_t pos_ = 0;
    };

    std::string lower(std::string s) {
      std::transform(s.begin(), s.end(), s.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      return s;
    }

    std::optional<int> parse_year(std::string_view s) {
      auto first = s.find_first_of("0123456789");
      if (first == std::string_view::npos) {
        return std::nullopt;
      }
      int year = 0;
      auto res = std::from_chars(s.data() + first, s.data() + s.size(), year);
      if (res.ec != std::errc{} || res.ptr - (s.data() + first) != 4) {
        return std::nullopt;
      }
      return year;
    }

    std::vector<std::string> split_authors(const std::string &value) {
      std::vector<std::string> out;
      std::size_t start = 0;
      for (;;) {
        auto pos = value.find(" and ", start);
        auto name = collapse_whitespace(value.substr(start, pos == std::string::npos
                                                                ? std::string::npos
                                                                : pos - start));
        if (!name.empty()) {
          out.push_back(std::move(name));
        }
        if (pos == std::string::npos) {
          return out;
        }
        start = pos + 5;
      }
    }

    std::optional<TitleLanguage> language_field(const std::string &value) {
      auto v = lower(value);
      if (v == "en" || v == "english") {
        return TitleLanguage::en;
      }
      if (v == "fr" || v == "french" || v == "francais" || v == "français") {
        return TitleLanguage::fr;
      }
      return v.empty() ? std::nullopt : std::optional(TitleLanguage::other);
    }

  }  // namespace

  std::string latex_to_utf8(std::string_view value) {
    std::string out;
    std::size_t i = 0;
    auto skip_spaces = [&] {
      while (i < value.size() && value[i] == ' ') {
        ++i;
      }
    };
    while (i < value.size()) {
      char c = value[i++];
      if (c == '{' || c == '}') {
        continue;
      }
      if (c != '\\' || i >= value.size()) {
        out.push_back(c);
        continue;
      }
      char cmd = value[i++];
      if (std::string_view("&%$#_{}\\").find(cmd) != std::string_view::npos) {
        out.push_back(cmd);
        continue;
      }
      bool symbol_accent = std::string_view("'`^\"~").find(cmd) != std::string_view::npos;
      bool letter_accent = (cmd == 'c' || cmd == 'v') && i < value.size()
                        && (value[i] == '{' || value[i] == ' ');
      if (symbol_accent || letter_accent) {
        skip_spaces();
        bool braced = i < value.size() && value[i] == '{';
        if (braced) {
          ++i;
        }
        if (i + 1 < value.size() && value[i] == '\\' && value[i + 1] == 'i') {
          i += 2;  // dotless i
          text::append_utf8(out, compose(cmd, 'i'));
        } else if (i < value.size()) {
          text::append_utf8(out, compose(cmd, value[i++]));
        }
        if (braced && i < value.size() && value[i] == '}') {
          ++i;
        }
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(cmd))) {
        std::string name(1, cmd);
        while (i < value.size() && std::isalpha(static_cast<unsigned char>(value[i]))) {
          name.push_back(value[i++]);
        }
        if (name == "textbackslash") {
          out.push_back('\\');
        } else if (name == "ss") {
          out += "ß";
        } else if (name == "o") {
          out += "ø";
        } else if (name == "ae") {
          out += "æ";
        } else if (name == "oe") {
          out += "œ";
        }
        // other commands (\emph, \textit...) vanish, their argument stays
        skip_spaces();
        continue;
      }
      out.push_back(cmd);
    }
    return collapse_whitespace(out);
  }

  BibtexResult parse_bibtex(std::string_view text) {
    BibtexResult result;
    Scanner s(text);
    while (s.seek('@')) {
      s.get();
      auto type = lower(s.identifier());
      s.skip_ws();
      char open = s.get();
      if (open != '{' && open != '(') {
        continue;  // stray '@' outside an entry
      }
      char close = open == '{' ? '}' : ')';
      if (type == "comment" || type == "preamble" || type == "string") {
        if (open == '{' ? !s.braced() : !s.seek(')')) {
          throw UnbalancedBraces("@" + type);
        }
        if (open == '(') {
          s.get();
        }
        continue;
      }

      s.skip_ws();
      auto key = s.identifier();
      s.skip_ws();
      std::map<std::string, std::string> fields;
      bool closed = false;
      while (!s.at_end()) {
        char c = s.get();
        if (c == close) {
          closed = true;
          break;
        }
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
          continue;
        }
        // field name starts at c
        std::string name(1, c);
        name += s.identifier();
        s.skip_ws();
        if (s.get() != '=') {
          throw UnbalancedBraces(key);
        }
        std::string value;
        for (;;) {
          s.skip_ws();
          char v = s.get();
          std::optional<std::string> part;
          if (v == '{') {
            part = s.braced();
          } else if (v == '"') {
            part = s.quoted();
          } else {
            part = std::string(1, v) + s.identifier();
          }
          if (!part) {
            throw UnbalancedBraces(key);
          }
          value += *part;
          s.skip_ws();
          if (s.peek() != '#') {
            break;
          }
          s.get();
        }
        fields[lower(name)] = std::move(value);
      }
      if (!closed) {
        throw UnbalancedBraces(key);
      }

      if (type != "article" && type != "inproceedings" && type != "book") {
        result.warnings.push_back(type + " entry '" + key + "' skipped");
        continue;
      }
      auto field = [&](const char *name) -> std::string {
        auto it = fields.find(name);
        return it == fields.end() ? std::string() : latex_to_utf8(it->second);
      };
      ArticleRecord r;
      r.title = field("title");
      if (r.title.empty()) {
        result.missing_titles.emplace_back(key);
        continue;
      }
      r.year = parse_year(field("year"));
      r.context = field("journal");
      if (r.context.empty()) {
        r.context = field("booktitle");
      }
      if (r.context.empty()) {
        r.context = field("publisher");
      }
      if (auto it = fields.find("author"); it != fields.end()) {
        r.authors = split_authors(latex_to_utf8(it->second));
      }
      if (auto url = field("url"); !url.empty()) {
        r.uri = url;
      }
      r.language = language_field(field("language"));
      r.id = key.empty() ? derived_record_id(r.title, r.year) : key;
      result.records.push_back(std::move(r));
    }
    return result;
  }

}  // namespace ontonav::corpus
