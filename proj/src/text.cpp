#include "argmine/text.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace argmine::text {

std::vector<char32_t> decode_utf8(const std::string& s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto* b = reinterpret_cast<const unsigned char*>(s.data());
  const std::size_t n = s.size();
  while (i < n) {
    unsigned char c = b[i];
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0 && i + 1 < n && (b[i + 1] & 0xC0) == 0x80) {
      cp = ((c & 0x1F) << 6) | (b[i + 1] & 0x3F);
      len = 2;
      if (cp < 0x80) cp = 0xFFFD;
    } else if ((c & 0xF0) == 0xE0 && i + 2 < n && (b[i + 1] & 0xC0) == 0x80 &&
               (b[i + 2] & 0xC0) == 0x80) {
      cp = ((c & 0x0F) << 12) | ((b[i + 1] & 0x3F) << 6) | (b[i + 2] & 0x3F);
      len = 3;
      if (cp < 0x800) cp = 0xFFFD;
    } else if ((c & 0xF8) == 0xF0 && i + 3 < n && (b[i + 1] & 0xC0) == 0x80 &&
               (b[i + 2] & 0xC0) == 0x80 && (b[i + 3] & 0xC0) == 0x80) {
      cp = ((c & 0x07) << 18) | ((b[i + 1] & 0x3F) << 12) |
           ((b[i + 2] & 0x3F) << 6) | (b[i + 3] & 0x3F);
      len = 4;
      if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
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
  return out;
}

std::string slice_codepoints(const std::string& s, std::size_t start,
                             std::size_t end) {
  auto cps = decode_utf8(s);
  if (start > cps.size()) start = cps.size();
  if (end > cps.size()) end = cps.size();
  if (start >= end) return {};
  return encode_utf8(
      std::vector<char32_t>(cps.begin() + static_cast<long>(start),
                            cps.begin() + static_cast<long>(end)));
}

std::size_t codepoint_length(const std::string& s) {
  return decode_utf8(s).size();
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x0009:
    case 0x000A:
    case 0x000B:
    case 0x000C:
    case 0x000D:
    case 0x0020:
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::vector<std::string> tokens;
  auto cps = decode_utf8(s);
  std::vector<char32_t> current;
  for (char32_t cp : cps) {
    if (is_unicode_space(cp)) {
      if (!current.empty()) {
        tokens.push_back(encode_utf8(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(encode_utf8(current));
  return tokens;
}

std::size_t count_words(const std::string& s) {
  return whitespace_tokens(s).size();
}

std::string normalize_for_dedup(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (const std::string& tok : whitespace_tokens(s)) {
    if (pending_space) out.push_back(' ');
    for (char ch : tok) {
      out.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(ch))));
    }
    pending_space = true;
  }
  return out;
}

ScriptProfile script_profile(const std::string& s) {
  ScriptProfile p;
  for (char32_t cp : decode_utf8(s)) {
    const bool latin = (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z') ||
                       (cp >= 0x00C0 && cp <= 0x024F);
    const bool arabic = (cp >= 0x0600 && cp <= 0x06FF) ||
                        (cp >= 0x0750 && cp <= 0x077F) ||
                        (cp >= 0xFB50 && cp <= 0xFDFF) ||
                        (cp >= 0xFE70 && cp <= 0xFEFF);
    if (latin) ++p.latin;
    if (arabic) ++p.arabic;
  }
  return p;
}

std::string with_thousands(long long n) {
  std::string digits = std::to_string(n < 0 ? -n : n);
  std::string out;
  int count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count && count % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++count;
  }
  if (n < 0) out.push_back('-');
  return std::string(out.rbegin(), out.rend());
}

std::string round_1dp(double percent) {
  // Round half up on the first decimal. The small epsilon absorbs binary
  // representation error of values like 74.85 that sit on the boundary.
  double scaled = percent * 10.0;
  double rounded = std::floor(scaled + 0.5 + 1e-9);
  double value = rounded / 10.0;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << value;
  return os.str();
}

std::string percent_1dp(double fraction) { return round_1dp(fraction * 100.0); }

}  // namespace argmine::text
