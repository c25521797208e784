/**
 * Copyright OntologyNavigator contributors. All Rights Reserved.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "ontonav/text/unicode.hpp"

#include <cstdint>

namespace ontonav::text {

  namespace {
    constexpr char32_t kReplacement = 0xFFFD;

    struct FoldRange {
      char32_t first;
      char32_t last;
      const char *base;
    };

    // Latin Extended-A, lowercase or uppercase forms alike.
    constexpr FoldRange kExtendedA[] = {
        {0x100, 0x105, "a"},  {0x106, 0x10D, "c"},  {0x10E, 0x111, "d"},
        {0x112, 0x11B, "e"},  {0x11C, 0x123, "g"},  {0x124, 0x127, "h"},
        {0x128, 0x131, "i"},  {0x132, 0x133, "ij"}, {0x134, 0x135, "j"},
        {0x136, 0x138, "k"},  {0x139, 0x142, "l"},  {0x143, 0x14B, "n"},
        {0x14C, 0x151, "o"},  {0x152, 0x153, "oe"}, {0x154, 0x159, "r"},
        {0x15A, 0x161, "s"},  {0x162, 0x167, "t"},  {0x168, 0x173, "u"},
        {0x174, 0x175, "w"},  {0x176, 0x178, "y"},  {0x179, 0x17E, "z"},
        {0x17F, 0x17F, "s"},
    };

    const char *fold_latin1(char32_t cp) {
      switch (cp) {
        case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
          return "a";
        case 0xE6: return "ae";
        case 0xE7: return "c";
        case 0xE8: case 0xE9: case 0xEA: case 0xEB:
          return "e";
        case 0xEC: case 0xED: case 0xEE: case 0xEF:
          return "i";
        case 0xF0: return "d";
        case 0xF1: return "n";
        case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
          return "o";
        case 0xF9: case 0xFA: case 0xFB: case 0xFC:
          return "u";
        case 0xFD: case 0xFF: return "y";
        case 0xFE: return "th";
        case 0xDF: return "ss";
        default: return nullptr;
      }
    }
  }  // namespace

  std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
      auto b0 = static_cast<std::uint8_t>(bytes[i]);
      int extra = 0;
      char32_t cp = 0;
      if (b0 < 0x80) {
        out.push_back(b0);
        ++i;
        continue;
      }
      if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
      } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
      } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
      } else {
        out.push_back(kReplacement);
        ++i;
        continue;
      }
      if (i + extra >= bytes.size()) {
        out.push_back(kReplacement);
        ++i;
        continue;
      }
      bool ok = true;
      for (int k = 1; k <= extra; ++k) {
        auto b = static_cast<std::uint8_t>(bytes[i + k]);
        if ((b & 0xC0) != 0x80) {
          ok = false;
          break;
        }
        cp = (cp << 6) | (b & 0x3F);
      }
      if (!ok) {
        out.push_back(kReplacement);
        ++i;
        continue;
      }
      out.push_back(cp);
      i += extra + 1;
    }
    return out;
  }

  void append_utf8(std::string &out, char32_t cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  std::string encode_utf8(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
      append_utf8(out, cp);
    }
    return out;
  }

  char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') {
      return cp + 0x20;
    }
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) {
      return cp + 0x20;
    }
    if (cp >= 0x100 && cp <= 0x17F) {
      if (cp == 0x130) {
        return 'i';
      }
      if (cp == 0x178) {
        return 0xFF;
      }
      bool odd_is_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
      if (odd_is_upper) {
        return (cp % 2 == 1) ? cp + 1 : cp;
      }
      if (cp == 0x138 || cp == 0x149 || cp == 0x17F) {
        return cp;
      }
      return (cp % 2 == 0) ? cp + 1 : cp;
    }
    return cp;
  }

  std::string to_lower(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    for (char32_t cp : decode_utf8(utf8)) {
      append_utf8(out, to_lower(cp));
    }
    return out;
  }

  std::string fold_diacritics(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    for (char32_t cp : decode_utf8(utf8)) {
      cp = to_lower(cp);
      if (cp >= 0x300 && cp <= 0x36F) {
        continue;  // combining marks
      }
      if (const char *base = fold_latin1(cp)) {
        out += base;
        continue;
      }
      bool folded = false;
      for (const auto &range : kExtendedA) {
        if (cp >= range.first && cp <= range.last) {
          out += range.base;
          folded = true;
          break;
        }
      }
      if (!folded) {
        append_utf8(out, cp);
      }
    }
    return out;
  }

  bool is_word_char(char32_t cp) {
    if (cp < 0x80) {
      return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')
          || (cp >= '0' && cp <= '9');
    }
    if (cp < 0xC0 || cp == 0xD7 || cp == 0xF7) {
      return false;
    }
    if (cp >= 0x2000 && cp <= 0x206F) {
      return false;  // general punctuation, including typographic quotes
    }
    if ((cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF00 && cp <= 0xFF0F)
        || cp == kReplacement || cp == 0xFEFF) {
      return false;
    }
    return true;
  }

}  // namespace ontonav::text
