/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef ONTONAV_LANGUAGE_HPP
#define ONTONAV_LANGUAGE_HPP

#include <string_view>

namespace ontonav {

  enum class Language { en, fr };

  /// "en" / "fr"; throws UnknownLanguage otherwise.
  Language parse_language(std::string_view tag);

  std::string_view to_string(Language lang);

  /// Human-readable name used in user-facing messages ("English", "French").
  std::string_view display_name(Language lang);

}  // namespace ontonav

#endif  // ONTONAV_LANGUAGE_HPP
