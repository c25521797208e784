/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/text/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "ontonav/errors.hpp"
#include "ontonav/text/unicode.hpp"

#ifndef ONTONAV_DEFAULT_DATA_DIR
#define ONTONAV_DEFAULT_DATA_DIR "data"
#endif

namespace ontonav {

  Language parse_language(std::string_view tag) {
    if (tag == "en") {
      return Language::en;
    }
    if (tag == "fr") {
      return Language::fr;
    }
    throw UnknownLanguage(std::string(tag));
  }

  std::string_view to_string(Language lang) {
    return lang == Language::en ? "en" : "fr";
  }

  std::string_view display_name(Language lang) {
    return lang == Language::en ? "English" : "French";
  }

}  // namespace ontonav

namespace ontonav::text {

  namespace {

    std::string_view trim(std::string_view s) {
      const auto *ws = " \t\r\n";
      auto b = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(ws);
      return s.substr(b, e - b + 1);
    }

    bool ends_with(std::string_view s, std::string_view suffix) {
      return s.size() >= suffix.size()
          && s.substr(s.size() - suffix.size()) == suffix;
    }

    bool is_vowel(char c) {
      return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'
          || c == 'y';
    }

    bool all_ascii_letters(std::string_view s) {
      return std::all_of(s.begin(), s.end(),
                         [](char c) { return c >= 'a' && c <= 'z'; });
    }

    // Stems after "-ing" removal that take back a silent 'e'. The second
    // field requires a consonant right before the suffix.
    struct ERestore {
      std::string_view suffix;
      bool after_consonant;
    };
    constexpr ERestore kERestore[] = {
        {"iz", false}, {"bl", false},  {"dg", false},  {"lv", false},
        {"rv", false}, {"rg", false},  {"uc", false},  {"ud", false},
        {"ov", false}, {"rs", false},  {"ns", false},  {"ls", false},
        {"ps", false}, {"nc", false},  {"rc", false},  {"lc", false},
        {"os", false}, {"as", false},  {"iv", false},  {"ang", false},
        {"eng", false}, {"at", true},  {"ut", true},   {"ag", true},
        {"ul", true},  {"ur", true},   {"ak", true},   {"ok", true},
        {"ik", true},  {"in", true},   {"id", true},   {"od", true},
        {"ar", true},  {"ac", true},
    };

    std::string strip_ing(std::string_view word) {
      std::string stem(word.substr(0, word.size() - 3));
      auto n = stem.size();
      if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1])
          && stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
        stem.pop_back();
        return stem;
      }
      for (const auto &rule : kERestore) {
        if (!ends_with(stem, rule.suffix)) {
          continue;
        }
        if (rule.after_consonant) {
          auto at = stem.size() - rule.suffix.size();
          if (at == 0 || is_vowel(stem[at - 1])) {
            continue;
          }
        }
        stem.push_back('e');
        break;
      }
      return stem;
    }

    std::string english_step(std::string_view w) {
      if (w.size() <= 3 || !all_ascii_letters(w)) {
        return std::string(w);
      }
      if (ends_with(w, "ies") && w.size() > 4) {
        return std::string(w.substr(0, w.size() - 3)) + "y";
      }
      if (ends_with(w, "es")) {
        if (ends_with(w, "sses") || ends_with(w, "ches") || ends_with(w, "shes")
            || ends_with(w, "xes") || ends_with(w, "zzes")) {
          return std::string(w.substr(0, w.size() - 2));
        }
        return std::string(w.substr(0, w.size() - 1));
      }
      if (ends_with(w, "s")) {
        if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) {
          return std::string(w);
        }
        return std::string(w.substr(0, w.size() - 1));
      }
      if (ends_with(w, "ing")) {
        std::string_view stem = w.substr(0, w.size() - 3);
        bool has_vowel = std::any_of(stem.begin(), stem.end(), is_vowel);
        if (stem.size() >= 3 && has_vowel) {
          return strip_ing(w);
        }
      }
      return std::string(w);
    }

    std::string french_step(std::string_view w) {
      if (w.size() <= 3 || !all_ascii_letters(w)) {
        return std::string(w);
      }
      if (ends_with(w, "eaux")) {
        return std::string(w.substr(0, w.size() - 1));
      }
      if (ends_with(w, "aux")) {
        return std::string(w.substr(0, w.size() - 3)) + "al";
      }
      if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us")
          && !ends_with(w, "is")) {
        return std::string(w.substr(0, w.size() - 1));
      }
      return std::string(w);
    }

    template <typename Fn>
    void for_each_data_line(std::istream &in, Fn &&fn) {
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        auto view = trim(line);
        if (!view.empty() && view.front() != '#') {
          fn(view, line_no);
        }
      }
    }

    std::ifstream open_table(const std::filesystem::path &path) {
      std::ifstream in(path);
      if (!in) {
        throw ConfigError("cannot open " + path.string());
      }
      return in;
    }

  }  // namespace

  StopList::StopList(Language lang, std::set<std::string> words)
      : lang_(lang) {
    for (const auto &w : words) {
      words_.insert(fold_diacritics(w));
    }
  }

  StopList StopList::parse(Language lang, std::istream &in) {
    std::set<std::string> words;
    for_each_data_line(in, [&](std::string_view w, std::size_t line_no) {
      if (w.find_first_of(" \t") != std::string_view::npos) {
        throw MalformedLine(line_no, "stop-list entry contains whitespace");
      }
      words.insert(std::string(w));
    });
    return StopList(lang, std::move(words));
  }

  bool StopList::contains(std::string_view word) const {
    return words_.find(word) != words_.end();
  }

  ExceptionDictionary ExceptionDictionary::parse(std::istream &in) {
    ExceptionDictionary dict;
    for_each_data_line(in, [&](std::string_view row, std::size_t line_no) {
      auto tab = row.find('\t');
      if (tab == std::string_view::npos) {
        throw MalformedLine(line_no, "expected surface<TAB>lemma");
      }
      auto surface = trim(row.substr(0, tab));
      auto lemma = trim(row.substr(tab + 1));
      if (surface.empty() || lemma.empty()) {
        throw MalformedLine(line_no, "empty surface or lemma");
      }
      dict.add(std::string(surface), std::string(lemma));
    });
    return dict;
  }

  void ExceptionDictionary::add(std::string surface, std::string lemma) {
    table_[fold_diacritics(surface)] = fold_diacritics(lemma);
  }

  const std::string *ExceptionDictionary::find(const std::string &surface) const {
    auto it = table_.find(surface);
    return it == table_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    };
    for (char32_t cp : decode_utf8(text)) {
      if (is_word_char(cp)) {
        append_utf8(current, to_lower(cp));
      } else if ((cp == '+' || cp == '#') && !current.empty()) {
        current.push_back(static_cast<char>(cp));
      } else {
        flush();
      }
    }
    flush();
    return tokens;
  }

  CooccurrenceMap cooccurrence_stats(std::span<const KeywordSet> documents) {
    CooccurrenceMap counts;
    for (const auto &doc : documents) {
      for (auto a = doc.begin(); a != doc.end(); ++a) {
        for (auto b = std::next(a); b != doc.end(); ++b) {
          ++counts[{*a, *b}];
        }
      }
    }
    return counts;
  }

  std::string apply_suffix_rules(std::string_view folded, Language lang) {
    return lang == Language::en ? english_step(folded) : french_step(folded);
  }

  TextPipeline::TextPipeline(StopList english, StopList french,
                             ExceptionDictionary english_exceptions,
                             ExceptionDictionary french_exceptions)
      : english_(std::move(english)),
        french_(std::move(french)),
        english_exceptions_(std::move(english_exceptions)),
        french_exceptions_(std::move(french_exceptions)) {
    close_dictionary(english_exceptions_, Language::en);
    close_dictionary(french_exceptions_, Language::fr);
  }

  // Every dictionary target must itself lemmatize to itself, otherwise
  // lemmatize would not be idempotent. Targets that the suffix rules would
  // reduce further are pinned with an identity entry.
  void TextPipeline::close_dictionary(ExceptionDictionary &dict, Language lang) {
    std::vector<std::string> pins;
    for (const auto &[surface, lemma] : dict.entries()) {
      if (const auto *again = dict.find(lemma); again != nullptr) {
        if (*again != lemma) {
          throw ConfigError("lemma table maps '" + surface + "' to '" + lemma
                            + "', which itself maps to '" + *again + "'");
        }
        continue;
      }
      std::string w = lemma;
      for (;;) {
        auto next = apply_suffix_rules(w, lang);
        if (next == w) {
          break;
        }
        w = std::move(next);
      }
      if (w != lemma) {
        pins.push_back(lemma);
      }
    }
    for (auto &p : pins) {
      dict.add(p, p);
    }
  }

  TextPipeline TextPipeline::load(const std::filesystem::path &data_dir) {
    auto en_stop = open_table(data_dir / "stoplist.en.txt");
    auto fr_stop = open_table(data_dir / "stoplist.fr.txt");
    auto en_lem = open_table(data_dir / "lemmas.en.tsv");
    auto fr_lem = open_table(data_dir / "lemmas.fr.tsv");
    return TextPipeline(StopList::parse(Language::en, en_stop),
                        StopList::parse(Language::fr, fr_stop),
                        ExceptionDictionary::parse(en_lem),
                        ExceptionDictionary::parse(fr_lem));
  }

  const TextPipeline &TextPipeline::shared_default() {
    static const TextPipeline pipeline = load(ONTONAV_DEFAULT_DATA_DIR);
    return pipeline;
  }

  const StopList &TextPipeline::stop_list(Language lang) const {
    return lang == Language::en ? english_ : french_;
  }

  const ExceptionDictionary &TextPipeline::exceptions(Language lang) const {
    return lang == Language::en ? english_exceptions_ : french_exceptions_;
  }

  std::vector<std::string> TextPipeline::filter_stopwords(
      std::vector<std::string> tokens, Language lang) const {
    const auto &stops = stop_list(lang);
    std::erase_if(tokens, [&](const std::string &t) {
      return stops.contains(fold_diacritics(t));
    });
    return tokens;
  }

  std::string TextPipeline::lemmatize(std::string_view token,
                                      Language lang) const {
    const auto &dict = exceptions(lang);
    std::string w = fold_diacritics(token);
    for (;;) {
      if (const auto *hit = dict.find(w)) {
        return *hit;
      }
      auto next = apply_suffix_rules(w, lang);
      if (next == w) {
        return w;
      }
      w = std::move(next);
    }
  }

  std::vector<std::string> TextPipeline::keywords_in_order(std::string_view text,
                                                           Language lang) const {
    const auto &stops = stop_list(lang);
    std::vector<std::string> out;
    for (const auto &token : filter_stopwords(tokenize(text), lang)) {
      auto lemma = lemmatize(token, lang);
      if (lemma.empty() || stops.contains(lemma)) {
        continue;
      }
      if (std::find(out.begin(), out.end(), lemma) == out.end()) {
        out.push_back(std::move(lemma));
      }
    }
    return out;
  }

  KeywordSet TextPipeline::extract_keywords(std::string_view text,
                                            Language lang) const {
    auto ordered = keywords_in_order(text, lang);
    return KeywordSet(ordered.begin(), ordered.end());
  }

  std::string TextPipeline::normalize_phrase(std::string_view text) {
    std::string out;
    for (const auto &token : tokenize(text)) {
      if (!out.empty()) {
        out.push_back(' ');
      }
      out += fold_diacritics(token);
    }
    return out;
  }

}  // namespace ontonav::text
