/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_CORPUS_PARSERS_HPP
#define ONTONAV_CORPUS_PARSERS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontonav/corpus/record.hpp"
#include "ontonav/errors.hpp"
#include "ontonav/xml/pull_parser.hpp"

namespace ontonav::corpus {

  struct BibtexResult {
    std::vector<ArticleRecord> records;
    /// Skipped entries of unsupported types, e.g. "misc entry 'k1' skipped".
    std::vector<std::string> warnings;
    std::vector<MissingTitle> missing_titles;
  };

  /**
   * Reads article, inproceedings and book entries. Field values may be
   * braced, quoted or bare; LaTeX accents and the escapes written by the
   * BibTeX exporter are decoded. Throws UnbalancedBraces when an entry never
   * closes.
   */
  BibtexResult parse_bibtex(std::string_view text);

  /// Decodes the LaTeX subset used in titles and names into UTF-8.
  std::string latex_to_utf8(std::string_view value);

  /**
   * Streaming reader for DBLP-style XML. Holds one publication at a time;
   * entries without a title are skipped and reported.
   */
  class DblpReader {
   public:
    explicit DblpReader(std::istream &in, std::size_t chunk_size = 64 * 1024);

    /// Next publication, or nullopt at the end. Throws XmlSyntax.
    std::optional<ArticleRecord> next();

    const std::vector<MissingTitle> &skipped() const noexcept {
      return skipped_;
    }
    std::size_t peak_buffered_bytes() const noexcept {
      return parser_.peak_buffered_bytes();
    }

   private:
    ArticleRecord read_publication(const std::string &element, std::string key);
    std::string read_text_content();

    xml::PullParser parser_;
    std::vector<MissingTitle> skipped_;
  };

  /// Convenience: drains a DblpReader.
  std::vector<ArticleRecord> parse_dblp_xml(std::istream &in);

}  // namespace ontonav::corpus

#endif  // ONTONAV_CORPUS_PARSERS_HPP
