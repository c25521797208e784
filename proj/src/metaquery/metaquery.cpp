/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/metaquery/metaquery.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ontonav/errors.hpp"
#include "ontonav/ontology/operations.hpp"

namespace ontonav::metaquery {

  namespace {

    bool unreserved(unsigned char c) {
      return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
    }

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

    bool has_scheme_and_authority(std::string_view url) {
      auto colon = url.find("://");
      if (colon == std::string_view::npos || colon == 0
          || !std::isalpha(static_cast<unsigned char>(url[0]))) {
        return false;
      }
      for (std::size_t i = 1; i < colon; ++i) {
        auto c = static_cast<unsigned char>(url[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') {
          return false;
        }
      }
      auto host_start = colon + 3;
      return host_start < url.size() && url[host_start] != '/' && url[host_start] != '?'
          && url[host_start] != '{';
    }

    std::string bibtex_escape(std::string_view s) {
      std::string out;
      for (char c : s) {
        switch (c) {
          case '\\': out += "\\textbackslash{}"; break;
          case '{':
          case '}':
          case '&':
          case '%':
          case '$':
          case '#':
          case '_':
            out.push_back('\\');
            out.push_back(c);
            break;
          default: out.push_back(c);
        }
      }
      return out;
    }

    bool looks_like_proceedings(std::string_view venue) {
      std::string v(venue);
      std::transform(v.begin(), v.end(), v.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      for (const char *w : {"proceedings", "proc.", "conference", "workshop", "symposium"}) {
        if (v.find(w) != std::string::npos) {
          return true;
        }
      }
      return false;
    }

  }  // namespace

  void validate(const ProviderTemplate &provider) {
    const auto &t = provider.url_template;
    auto first = t.find(kPlaceholder);
    if (first == std::string::npos) {
      throw BadTemplate("provider '" + provider.name + "': template lacks {keywords}");
    }
    if (t.find(kPlaceholder, first + 1) != std::string::npos) {
      throw BadTemplate("provider '" + provider.name + "': {keywords} occurs more than once");
    }
    if (!has_scheme_and_authority(t)) {
      throw BadTemplate("provider '" + provider.name + "': template is not an absolute URL");
    }
    for (unsigned char c : t) {
      if (c <= 0x20 || c >= 0x7f) {
        throw BadTemplate("provider '" + provider.name + "': template has raw space or non-ASCII");
      }
    }
    if (provider.joiner.empty()) {
      throw BadTemplate("provider '" + provider.name + "': empty joiner");
    }
    bool reserved = false;
    for (unsigned char c : provider.joiner) {
      if (c == '%' || c <= 0x20 || c >= 0x7f) {
        throw BadTemplate("provider '" + provider.name + "': joiner has '%', space or non-ASCII");
      }
      reserved = reserved || !unreserved(c);
    }
    if (!reserved) {
      throw BadTemplate("provider '" + provider.name + "': joiner needs a reserved character");
    }
    if (provider.max_keywords && *provider.max_keywords == 0) {
      throw BadTemplate("provider '" + provider.name + "': max_keywords must be positive");
    }
  }

  ProviderTemplate scholar_provider() {
    return {"scholar", "https://scholar.google.com/scholar?q={keywords}", "+", std::nullopt};
  }

  std::vector<ProviderTemplate> parse_providers(std::string_view json_text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
      throw ConfigError(std::string("providers: ") + e.what());
    }
    if (!doc.is_array()) {
      throw ConfigError("providers: expected an array");
    }
    std::vector<ProviderTemplate> out;
    for (const auto &item : doc) {
      if (!item.is_object() || !item.contains("name") || !item.contains("url_template")
          || !item["name"].is_string() || !item["url_template"].is_string()) {
        throw ConfigError("providers: each entry needs string name and url_template");
      }
      ProviderTemplate p;
      p.name = item["name"].get<std::string>();
      p.url_template = item["url_template"].get<std::string>();
      if (item.contains("joiner")) {
        if (!item["joiner"].is_string()) {
          throw ConfigError("providers: joiner must be a string");
        }
        p.joiner = item["joiner"].get<std::string>();
      }
      if (item.contains("max_keywords")) {
        const auto &m = item["max_keywords"];
        if (m.is_null()) {
          p.max_keywords.reset();
        } else if (m.is_number_unsigned()) {
          p.max_keywords = m.get<std::size_t>();
        } else {
          throw ConfigError("providers: max_keywords must be a non-negative integer or null");
        }
      }
      validate(p);
      out.push_back(std::move(p));
    }
    return out;
  }

  std::vector<ProviderTemplate> load_providers(const std::filesystem::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      throw ConfigError("cannot read " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_providers(buf.str());
  }

  std::string percent_encode(std::string_view s) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
      if (unreserved(c)) {
        out.push_back(static_cast<char>(c));
      } else {
        out.push_back('%');
        out.push_back(kHex[c >> 4]);
        out.push_back(kHex[c & 0xf]);
      }
    }
    return out;
  }

  std::string percent_decode(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '%') {
        out.push_back(s[i]);
        continue;
      }
      if (i + 2 >= s.size()) {
        throw std::invalid_argument("truncated percent escape");
      }
      int hi = hex_value(s[i + 1]);
      int lo = hex_value(s[i + 2]);
      if (hi < 0 || lo < 0) {
        throw std::invalid_argument("bad percent escape");
      }
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    }
    return out;
  }

  MetaQuery generate(std::vector<std::string> keywords, const ProviderTemplate &provider) {
    validate(provider);
    if (provider.max_keywords && keywords.size() > *provider.max_keywords) {
      keywords.resize(*provider.max_keywords);
    }
    if (keywords.empty()) {
      throw EmptyKeywords();
    }
    std::string segment;
    for (std::size_t i = 0; i < keywords.size(); ++i) {
      if (i > 0) {
        segment += provider.joiner;
      }
      segment += percent_encode(keywords[i]);
    }
    auto url = provider.url_template;
    url.replace(url.find(kPlaceholder), kPlaceholder.size(), segment);
    return {provider.name, std::move(url), std::move(keywords)};
  }

  std::vector<std::string> decode_keywords(std::string_view url, const ProviderTemplate &provider) {
    const std::string_view t = provider.url_template;
    auto at = t.find(kPlaceholder);
    if (at == std::string_view::npos) {
      throw BadTemplate("provider '" + provider.name + "': template lacks {keywords}");
    }
    auto prefix = t.substr(0, at);
    auto suffix = t.substr(at + kPlaceholder.size());
    if (url.size() < prefix.size() + suffix.size() || url.substr(0, prefix.size()) != prefix
        || url.substr(url.size() - suffix.size()) != suffix) {
      throw std::invalid_argument("url does not match the provider template");
    }
    auto segment = url.substr(prefix.size(), url.size() - prefix.size() - suffix.size());
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
      auto pos = segment.find(provider.joiner, start);
      out.push_back(percent_decode(segment.substr(start, pos == std::string_view::npos
                                                             ? std::string_view::npos
                                                             : pos - start)));
      if (pos == std::string_view::npos) {
        return out;
      }
      start = pos + provider.joiner.size();
    }
  }

  std::vector<MetaQuery> context_queries(const ontology::Ontology &ontology,
                                         const ontology::NodeId &node,
                                         const std::vector<ProviderTemplate> &providers) {
    ontology.node(node);  // UnknownNode
    auto cluster = ontology::keyword_cluster_ordered(ontology, node);
    std::vector<MetaQuery> out;
    if (cluster.empty()) {
      return out;
    }
    for (const auto &p : providers) {
      out.push_back(generate(cluster, p));
    }
    return out;
  }

  std::string surname(std::string_view author) {
    auto comma = author.find(',');
    std::string_view part = comma == std::string_view::npos ? author : author.substr(0, comma);
    while (!part.empty() && part.back() == ' ') {
      part.remove_suffix(1);
    }
    while (!part.empty() && part.front() == ' ') {
      part.remove_prefix(1);
    }
    if (comma != std::string_view::npos) {
      return std::string(part);
    }
    auto space = part.rfind(' ');
    return std::string(space == std::string_view::npos ? part : part.substr(space + 1));
  }

  ArticleLink scholar_fallback(const corpus::ArticleRecord &record,
                               const ProviderTemplate &scholar) {
    if (record.uri && !record.uri->empty()) {
      return DirectUri{*record.uri};
    }
    std::vector<std::string> keywords{"\"" + record.title + "\""};
    if (!record.authors.empty()) {
      if (auto name = surname(record.authors.front()); !name.empty()) {
        keywords.push_back(std::move(name));
      }
    }
    auto provider = scholar;
    provider.max_keywords.reset();
    return generate(std::move(keywords), provider);
  }

  std::string export_bibtex(const corpus::ArticleRecord &record) {
    bool proceedings = !record.context.empty() && looks_like_proceedings(record.context);
    std::string out = proceedings ? "@inproceedings{" : "@article{";
    out += record.id + ",\n";
    out += "  title = {" + bibtex_escape(record.title) + "}";
    if (!record.authors.empty()) {
      std::string names;
      for (const auto &a : record.authors) {
        names += names.empty() ? "" : " and ";
        names += bibtex_escape(a);
      }
      out += ",\n  author = {" + names + "}";
    }
    if (record.year) {
      out += ",\n  year = {" + std::to_string(*record.year) + "}";
    }
    if (!record.context.empty()) {
      out += proceedings ? ",\n  booktitle = {" : ",\n  journal = {";
      out += bibtex_escape(record.context) + "}";
    }
    if (record.uri) {
      out += ",\n  url = {" + bibtex_escape(*record.uri) + "}";
    }
    out += "\n}\n";
    return out;
  }

  std::vector<std::pair<std::string, std::string>> export_embedded_metadata(
      const corpus::ArticleRecord &record) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("DC.title", record.title);
    for (const auto &a : record.authors) {
      out.emplace_back("DC.creator", a);
    }
    if (record.year) {
      out.emplace_back("DC.date", std::to_string(*record.year));
    }
    if (!record.context.empty()) {
      out.emplace_back("DC.source", record.context);
    }
    if (record.uri) {
      out.emplace_back("DC.identifier", *record.uri);
    }
    return out;
  }

}  // namespace ontonav::metaquery
