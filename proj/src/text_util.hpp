#pragma once

// Literal escaping shared by the N-Triples reader/writer and the query parser.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace optplan::detail {

inline bool is_blank_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

inline std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
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

/// Decodes the escape whose backslash is at `pos - 1`; advances `pos` past it.
inline bool read_escape(std::string_view text, std::size_t& pos, std::string& out, std::string& error) {
  if (pos >= text.size()) {
    error = "dangling escape";
    return false;
  }
  char c = text[pos++];
  switch (c) {
    case 't': out.push_back('\t'); return true;
    case 'b': out.push_back('\b'); return true;
    case 'n': out.push_back('\n'); return true;
    case 'r': out.push_back('\r'); return true;
    case 'f': out.push_back('\f'); return true;
    case '"': out.push_back('"'); return true;
    case '\'': out.push_back('\''); return true;
    case '\\': out.push_back('\\'); return true;
    case 'u':
    case 'U': {
      std::size_t digits = c == 'u' ? 4 : 8;
      if (pos + digits > text.size()) {
        error = "truncated unicode escape";
        return false;
      }
      std::uint32_t cp = 0;
      for (std::size_t i = 0; i < digits; ++i) {
        char h = text[pos + i];
        cp <<= 4;
        if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
        else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
        else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
        else {
          error = "invalid hex digit in unicode escape";
          return false;
        }
      }
      if (cp > 0x10FFFF) {
        error = "unicode escape out of range";
        return false;
      }
      pos += digits;
      append_utf8(out, cp);
      return true;
    }
    default:
      error = std::string("unknown escape '\\") + c + "'";
      return false;
  }
}

}  // namespace optplan::detail
