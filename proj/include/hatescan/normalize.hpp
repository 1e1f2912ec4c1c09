#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hatescan {

/// One normalized token and the byte range it came from in the raw text.
struct Token {
  std::string text;
  std::size_t byte_begin = 0;
  std::size_t byte_end = 0;

  bool operator==(const Token&) const = default;
};

using TokenStream = std::vector<Token>;

namespace detail {

enum class UnitKind { Word, Apostrophe, Separator };

struct Unit {
  UnitKind kind;
  std::size_t length;  // bytes
};

inline std::size_t utf8_sequence_length(unsigned char lead) noexcept {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 0;
}

// Classifies the code point starting at text[pos]. ASCII letters, digits
// and non-punctuation code points are word material; U+2019 is an
// apostrophe; U+00A0, the U+2000..U+206F punctuation block and U+3000 are
// separators. Malformed bytes are separators.
inline Unit classify(std::string_view text, std::size_t pos) noexcept {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    if ((lead >= 'a' && lead <= 'z') || (lead >= 'A' && lead <= 'Z') || (lead >= '0' && lead <= '9')) {
      return {UnitKind::Word, 1};
    }
    if (lead == '\'') return {UnitKind::Apostrophe, 1};
    return {UnitKind::Separator, 1};
  }
  const std::size_t len = utf8_sequence_length(lead);
  if (len == 0 || pos + len > text.size()) return {UnitKind::Separator, 1};
  char32_t cp = lead & (0x7F >> len);
  for (std::size_t i = 1; i < len; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) return {UnitKind::Separator, 1};
    cp = (cp << 6) | (cont & 0x3F);
  }
  if (cp == 0x2019) return {UnitKind::Apostrophe, len};
  if (cp == 0x00A0 || cp == 0x3000 || (cp >= 0x2000 && cp <= 0x206F)) return {UnitKind::Separator, len};
  return {UnitKind::Word, len};
}

inline void append_normalized(std::string& out, std::string_view raw) {
  for (std::size_t i = 0; i < raw.size();) {
    const Unit u = classify(raw, i);
    if (u.kind == UnitKind::Apostrophe) {
      out.push_back('\'');
    } else if (u.length == 1) {
      char ch = raw[i];
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      out.push_back(ch);
    } else {
      out.append(raw.substr(i, u.length));
    }
    i += u.length;
  }
}

}  // namespace detail

/// Splits raw UTF-8 text into lowercase word tokens.
///
/// A token is a maximal run of word characters and apostrophes with any
/// leading or trailing apostrophes removed. Everything else (ASCII
/// punctuation including `#` and `@`, whitespace, general punctuation) is a
/// separator. Lowercasing covers ASCII only; U+2019 is rewritten to `'`.
/// Byte offsets always index into `text`.
inline TokenStream tokenize(std::string_view text) {
  using detail::UnitKind;
  TokenStream tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    detail::Unit u = detail::classify(text, pos);
    if (u.kind == UnitKind::Separator) {
      pos += u.length;
      continue;
    }
    // Run of word/apostrophe units; remember the first and last word unit.
    std::size_t first_word = std::string_view::npos;
    std::size_t last_word_end = 0;
    while (pos < text.size()) {
      u = detail::classify(text, pos);
      if (u.kind == UnitKind::Separator) break;
      if (u.kind == UnitKind::Word) {
        if (first_word == std::string_view::npos) first_word = pos;
        last_word_end = pos + u.length;
      }
      pos += u.length;
    }
    if (first_word == std::string_view::npos) continue;  // apostrophes only
    Token tok;
    tok.byte_begin = first_word;
    tok.byte_end = last_word_end;
    detail::append_normalized(tok.text, text.substr(first_word, last_word_end - first_word));
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

/// Token texts only, for phrase lookups and lexicon entries.
inline std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> words;
  for (auto& tok : tokenize(text)) words.push_back(std::move(tok.text));
  return words;
}

inline std::string join_words(const std::vector<std::string>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i != begin) out.push_back(' ');
    out += words[i];
  }
  return out;
}

inline std::string join_words(const std::vector<std::string>& words) {
  return join_words(words, 0, words.size());
}

}  // namespace hatescan
