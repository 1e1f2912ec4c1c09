#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "hatescan/normalize.hpp"

using namespace hatescan;

namespace {

// Character-by-character reference for ASCII plus U+2019 input, written
// without the code-point classifier: collect [A-Za-z0-9'] runs, lowercase
// them, then trim apostrophes off both ends.
std::vector<std::string> reference_tokenize(const std::string& text) {
  std::string cleaned;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 3, "\xE2\x80\x99") == 0) {
      cleaned += '\'';
      i += 2;
    } else {
      cleaned += text[i];
    }
  }
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    const auto b = cur.find_first_not_of('\'');
    if (b != std::string::npos) out.push_back(cur.substr(b, cur.find_last_not_of('\'') - b + 1));
    cur.clear();
  };
  for (char c : cleaned) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'') {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::string upper_ascii(std::string s) {
  for (auto& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

std::string random_text(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {
      "I", "i'm", "I\xE2\x80\x99m", "hate", "HATE", "don't", "'quoted'", "people", "!!", ",", ".", " ", "  ",
      "#tag", "@user", "2pac", "123", "x", "can't", "''", "'", "\t", "so", "sick", "of", "o'neil's", "-", "\xE2\x80\x94"};
  std::string s;
  const int n = std::uniform_int_distribution<int>(0, 20)(rng);
  for (int i = 0; i < n; ++i) {
    s += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) s += ' ';
  }
  return s;
}

std::vector<std::string> texts(const TokenStream& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.text);
  return out;
}

}  // namespace

TEST(Tokenize, SplitsPlainSentence) {
  EXPECT_EQ(tokenize_words("I really hate black people"),
            (std::vector<std::string>{"i", "really", "hate", "black", "people"}));
}

TEST(Tokenize, EmptyInput) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, CurlyApostropheAndPunctuation) {
  const std::string text = "I\xE2\x80\x99m SO sick of X!!";
  const auto expected = std::vector<std::string>{"i'm", "so", "sick", "of", "x"};
  EXPECT_EQ(tokenize_words(text), expected);
  EXPECT_EQ(reference_tokenize(text), expected);
}

TEST(Tokenize, HashtagsAndMentionsAreSeparators) {
  EXPECT_EQ(tokenize_words("#IHateX @Bob"), (std::vector<std::string>{"ihatex", "bob"}));
}

TEST(Tokenize, DigitsStayInsideTokens) {
  EXPECT_EQ(tokenize_words("2pac and 123"), (std::vector<std::string>{"2pac", "and", "123"}));
}

TEST(Tokenize, StripsLeadingAndTrailingApostrophes) {
  EXPECT_EQ(tokenize_words("'hello' 'tis ''"), (std::vector<std::string>{"hello", "tis"}));
}

TEST(Tokenize, NonAsciiLettersAreWordMaterial) {
  // U+00E9 stays inside the token; U+2014 (em dash) separates.
  EXPECT_EQ(tokenize_words("caf\xC3\xA9\xE2\x80\x94ok"), (std::vector<std::string>{"caf\xC3\xA9", "ok"}));
}

TEST(Tokenize, OffsetsPointIntoRawText) {
  const std::string text = "  I\xE2\x80\x99m here!";
  const auto ts = tokenize(text);
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_EQ(ts[0].byte_begin, 2u);
  EXPECT_EQ(ts[0].byte_end, 7u);
  EXPECT_EQ(text.substr(ts[1].byte_begin, ts[1].byte_end - ts[1].byte_begin), "here");
}

TEST(TokenizeProperty, MatchesReferenceOnRandomAsciiText) {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string s = random_text(rng);
    if (s.find("\xE2\x80\x94") != std::string::npos) continue;  // reference is ASCII + U+2019 only
    ASSERT_EQ(tokenize_words(s), reference_tokenize(s)) << s;
  }
}

TEST(TokenizeProperty, IdempotentCaseInvariantAndSpanFaithful) {
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const std::string s = random_text(rng);
    const TokenStream ts = tokenize(s);
    const auto words = texts(ts);

    ASSERT_EQ(tokenize_words(join_words(words)), words) << s;
    ASSERT_EQ(tokenize_words(upper_ascii(s)), words) << s;

    std::size_t prev_end = 0;
    for (const auto& tok : ts) {
      ASSERT_FALSE(tok.text.empty());
      ASSERT_EQ(tok.text.find_first_of(" \t\n"), std::string::npos);
      ASSERT_GE(tok.byte_begin, prev_end);
      ASSERT_LT(tok.byte_begin, tok.byte_end);
      prev_end = tok.byte_end;
      std::string slice;
      detail::append_normalized(slice, std::string_view(s).substr(tok.byte_begin, tok.byte_end - tok.byte_begin));
      ASSERT_EQ(slice, tok.text) << s;
    }
  }
}
