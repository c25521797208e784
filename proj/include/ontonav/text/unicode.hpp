/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_TEXT_UNICODE_HPP
#define ONTONAV_TEXT_UNICODE_HPP

#include <string>
#include <string_view>

namespace ontonav::text {

  /// Decodes UTF-8; malformed sequences become U+FFFD.
  std::u32string decode_utf8(std::string_view bytes);

  void append_utf8(std::string &out, char32_t cp);
  std::string encode_utf8(std::u32string_view cps);

  /// Simple case mapping for ASCII, Latin-1 and Latin Extended-A.
  char32_t to_lower(char32_t cp);

  std::string to_lower(std::string_view utf8);

  /// Lowercases and strips diacritics ("Réaliste" -> "realiste", "œ" -> "oe").
  std::string fold_diacritics(std::string_view utf8);

  /// Letters and digits (any script above Latin-1 punctuation counts as a letter).
  bool is_word_char(char32_t cp);

}  // namespace ontonav::text

#endif  // ONTONAV_TEXT_UNICODE_HPP
