#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hatescan/category.hpp"
#include "hatescan/normalize.hpp"

namespace hatescan {

/// Raised for any problem found while loading or validating lexicon files.
/// `line` is 1-based; 0 means the problem is not tied to a single line.
class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::string file, std::size_t line, std::string reason)
      : std::runtime_error(format(file, line, reason)),
        file_(std::move(file)),
        line_(line),
        reason_(std::move(reason)) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  static std::string format(const std::string& file, std::size_t line, const std::string& reason) {
    std::string out = file;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + reason;
  }

  std::string file_;
  std::size_t line_;
  std::string reason_;
};

/// A verb phrase filling the intent slot, e.g. {"can't", "stand"}.
struct IntentPhrase {
  std::vector<std::string> tokens;

  std::string text() const { return join_words(tokens); }
  auto operator<=>(const IntentPhrase&) const = default;
  bool operator==(const IntentPhrase&) const = default;
};

/// A hate-lexicon entry with its 0..100 offensiveness rating.
struct ScoredTerm {
  std::vector<std::string> phrase;
  int offensiveness = 0;
  std::vector<Category> categories;

  std::string text() const { return join_words(phrase); }
  bool operator==(const ScoredTerm&) const = default;
};

using CategoryMap = std::map<std::string, Category, std::less<>>;

inline constexpr int kDefaultThreshold = 50;
inline constexpr std::size_t kMaxIntentTokens = 4;
inline constexpr std::size_t kMaxScoredTermTokens = 3;

/// Every vocabulary resource the matcher consumes. Immutable once built;
/// share it read-only between scan workers.
struct LexiconSet {
  std::set<std::string, std::less<>> subjects;
  std::set<std::string, std::less<>> negators;
  std::set<std::string, std::less<>> intensifiers;
  std::set<IntentPhrase> intents;
  std::set<std::string, std::less<>> exclusions;
  std::vector<ScoredTerm> scored_terms;  // sorted by phrase, unique
  CategoryMap category_map;
  int threshold = kDefaultThreshold;

  bool operator==(const LexiconSet&) const = default;
};

struct LexiconPaths {
  std::filesystem::path subjects;
  std::filesystem::path negators;
  std::filesystem::path intensifiers;
  std::filesystem::path intents;
  std::filesystem::path exclusions;
  std::filesystem::path scored_terms;
  std::filesystem::path category_map;

  /// Standard file names inside a lexicon directory.
  static LexiconPaths in_directory(const std::filesystem::path& dir) {
    return {dir / "subjects.txt",   dir / "negators.txt",  dir / "intensifiers.txt", dir / "intents.txt",
            dir / "exclusions.txt", dir / "hate_terms.tsv", dir / "categories.tsv"};
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Normalizes one lexicon phrase. Returns an empty vector and sets `why` when
// the text contains anything the tokenizer would drop or split on besides
// plain whitespace (punctuation, stray apostrophes).
inline std::vector<std::string> normalize_phrase(std::string_view raw, bool letters_only, std::string& why) {
  std::vector<std::string> words = tokenize_words(raw);
  std::string collapsed;
  {
    std::string normalized;
    append_normalized(normalized, raw);
    bool pending_space = false;
    for (char ch : normalized) {
      if (ch == ' ' || ch == '\t') {
        pending_space = !collapsed.empty();
        continue;
      }
      if (pending_space) collapsed.push_back(' ');
      pending_space = false;
      collapsed.push_back(ch);
    }
  }
  if (words.empty() || join_words(words) != collapsed) {
    why = "phrase '" + std::string(raw) + "' contains characters other than words, apostrophes and spaces";
    return {};
  }
  if (letters_only) {
    for (const auto& w : words) {
      if (std::any_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        why = "phrase '" + std::string(raw) + "' must contain only letters and apostrophes";
        return {};
      }
    }
  }
  return words;
}

inline std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace detail

/// Reads a one-phrase-per-line list. `#` starts a comment, blank lines are
/// skipped. Each phrase must have between 1 and `max_tokens` tokens.
inline std::vector<std::vector<std::string>> parse_phrase_list(std::istream& in, const std::string& source,
                                                               std::size_t max_tokens) {
  std::vector<std::vector<std::string>> phrases;
  std::set<std::vector<std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;
    std::string why;
    auto words = detail::normalize_phrase(body, /*letters_only=*/true, why);
    if (words.empty()) throw LexiconError(source, line_no, why);
    if (words.size() > max_tokens) {
      throw LexiconError(source, line_no,
                         "phrase '" + std::string(body) + "' has " + std::to_string(words.size()) +
                             " tokens, at most " + std::to_string(max_tokens) + " allowed");
    }
    if (!seen.insert(words).second) {
      throw LexiconError(source, line_no, "duplicate entry '" + join_words(words) + "'");
    }
    phrases.push_back(std::move(words));
  }
  return phrases;
}

inline std::set<std::string, std::less<>> parse_token_set(std::istream& in, const std::string& source) {
  std::set<std::string, std::less<>> out;
  for (auto& p : parse_phrase_list(in, source, 1)) out.insert(std::move(p.front()));
  return out;
}

/// Reads the `phrase<TAB>score<TAB>category` table. The header line is
/// mandatory; the category column may be empty or a comma-separated list.
inline std::vector<ScoredTerm> parse_scored_terms(std::istream& in, const std::string& source) {
  std::vector<ScoredTerm> terms;
  std::set<std::vector<std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (detail::trim(body).empty() || detail::trim(body).front() == '#') continue;
    if (!header_seen) {
      if (body != "phrase\tscore\tcategory") {
        throw LexiconError(source, line_no, "expected header 'phrase<TAB>score<TAB>category'");
      }
      header_seen = true;
      continue;
    }
    const auto cols = detail::split_tabs(body);
    if (cols.size() < 2 || cols.size() > 3) {
      throw LexiconError(source, line_no, "expected 2 or 3 tab-separated columns, got " + std::to_string(cols.size()));
    }
    std::string why;
    ScoredTerm term;
    term.phrase = detail::normalize_phrase(detail::trim(cols[0]), /*letters_only=*/false, why);
    if (term.phrase.empty()) throw LexiconError(source, line_no, why);
    if (term.phrase.size() > kMaxScoredTermTokens) {
      throw LexiconError(source, line_no, "phrase has more than " + std::to_string(kMaxScoredTermTokens) + " tokens");
    }
    const std::string_view score = detail::trim(cols[1]);
    const auto [end, ec] = std::from_chars(score.data(), score.data() + score.size(), term.offensiveness);
    if (ec != std::errc{} || end != score.data() + score.size()) {
      throw LexiconError(source, line_no, "score '" + std::string(score) + "' is not an integer");
    }
    if (term.offensiveness < 0 || term.offensiveness > 100) {
      throw LexiconError(source, line_no, "score " + std::to_string(term.offensiveness) + " outside 0..100");
    }
    if (cols.size() == 3) {
      std::string_view rest = cols[2];
      while (!detail::trim(rest).empty()) {
        const auto comma = rest.find(',');
        const std::string_view name = detail::trim(rest.substr(0, comma));
        const auto cat = parse_category(name);
        if (!cat) throw LexiconError(source, line_no, "unknown category '" + std::string(name) + "'");
        term.categories.push_back(*cat);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    if (!seen.insert(term.phrase).second) {
      throw LexiconError(source, line_no, "duplicate entry '" + term.text() + "'");
    }
    terms.push_back(std::move(term));
  }
  if (!header_seen) throw LexiconError(source, 0, "missing header 'phrase<TAB>score<TAB>category'");
  std::sort(terms.begin(), terms.end(), [](const ScoredTerm& a, const ScoredTerm& b) { return a.phrase < b.phrase; });
  return terms;
}

/// Reads the `target<TAB>category` table (header required). Keys are
/// normalized like post text, so "Black People" and "black people" collide.
inline CategoryMap parse_category_map(std::istream& in, const std::string& source) {
  CategoryMap map;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (detail::trim(body).empty() || detail::trim(body).front() == '#') continue;
    if (!header_seen) {
      if (body != "target\tcategory") throw LexiconError(source, line_no, "expected header 'target<TAB>category'");
      header_seen = true;
      continue;
    }
    const auto cols = detail::split_tabs(body);
    if (cols.size() != 2) {
      throw LexiconError(source, line_no, "expected 2 tab-separated columns, got " + std::to_string(cols.size()));
    }
    std::string why;
    const auto words = detail::normalize_phrase(detail::trim(cols[0]), /*letters_only=*/false, why);
    if (words.empty()) throw LexiconError(source, line_no, why);
    const auto cat = parse_category(detail::trim(cols[1]));
    if (!cat) throw LexiconError(source, line_no, "unknown category '" + std::string(detail::trim(cols[1])) + "'");
    if (!map.emplace(join_words(words), *cat).second) {
      throw LexiconError(source, line_no, "duplicate entry '" + join_words(words) + "'");
    }
  }
  if (!header_seen) throw LexiconError(source, 0, "missing header 'target<TAB>category'");
  return map;
}

/// Checks the cross-file invariants. Throws LexiconError naming `source`.
inline void validate(const LexiconSet& ls, const std::string& source = "lexicons") {
  for (const char* required : {"i", "i'm"}) {
    if (!ls.subjects.contains(required)) {
      throw LexiconError(source, 0, std::string("subject list must contain '") + required + "'");
    }
  }
  if (ls.intents.empty()) throw LexiconError(source, 0, "intent lexicon is empty");
  for (const auto& tok : ls.intensifiers) {
    if (ls.negators.contains(tok)) {
      throw LexiconError(source, 0, "token '" + tok + "' is both an intensifier and a negator");
    }
  }
  if (ls.threshold < 0 || ls.threshold > 100) {
    throw LexiconError(source, 0, "threshold " + std::to_string(ls.threshold) + " outside 0..100");
  }
}

inline LexiconSet load_lexicons(const LexiconPaths& paths, int threshold = kDefaultThreshold) {
  LexiconSet ls;
  ls.threshold = threshold;
  if (threshold < 0 || threshold > 100) {
    throw LexiconError("threshold", 0, "threshold " + std::to_string(threshold) + " outside 0..100");
  }
  auto token_set = [](const std::filesystem::path& p) {
    auto in = detail::open_or_throw(p);
    return parse_token_set(in, p.string());
  };
  ls.subjects = token_set(paths.subjects);
  ls.negators = token_set(paths.negators);
  ls.intensifiers = token_set(paths.intensifiers);
  ls.exclusions = token_set(paths.exclusions);
  {
    auto in = detail::open_or_throw(paths.intents);
    for (auto& p : parse_phrase_list(in, paths.intents.string(), kMaxIntentTokens)) {
      ls.intents.insert(IntentPhrase{std::move(p)});
    }
    if (ls.intents.empty()) throw LexiconError(paths.intents.string(), 0, "intent lexicon is empty");
  }
  {
    auto in = detail::open_or_throw(paths.scored_terms);
    ls.scored_terms = parse_scored_terms(in, paths.scored_terms.string());
  }
  {
    auto in = detail::open_or_throw(paths.category_map);
    ls.category_map = parse_category_map(in, paths.category_map.string());
  }
  validate(ls, paths.intents.parent_path().string());
  return ls;
}

inline LexiconSet load_lexicons(const std::filesystem::path& dir, int threshold = kDefaultThreshold) {
  return load_lexicons(LexiconPaths::in_directory(dir), threshold);
}

/// Writes `ls` as a lexicon directory that load_lexicons reads back to an
/// equal set (given the same threshold).
inline void save_lexicons(const LexiconSet& ls, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto paths = LexiconPaths::in_directory(dir);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw LexiconError(p.string(), 0, "cannot open file for writing");
    return out;
  };
  auto write_set = [&](const std::filesystem::path& p, const auto& set) {
    auto out = open(p);
    for (const auto& tok : set) out << tok << '\n';
  };
  write_set(paths.subjects, ls.subjects);
  write_set(paths.negators, ls.negators);
  write_set(paths.intensifiers, ls.intensifiers);
  write_set(paths.exclusions, ls.exclusions);
  {
    auto out = open(paths.intents);
    for (const auto& intent : ls.intents) out << intent.text() << '\n';
  }
  {
    auto out = open(paths.scored_terms);
    out << "phrase\tscore\tcategory\n";
    for (const auto& term : ls.scored_terms) {
      out << term.text() << '\t' << term.offensiveness << '\t';
      for (std::size_t i = 0; i < term.categories.size(); ++i) {
        if (i) out << ',';
        out << category_name(term.categories[i]);
      }
      out << '\n';
    }
  }
  {
    auto out = open(paths.category_map);
    out << "target\tcategory\n";
    for (const auto& [target, cat] : ls.category_map) out << target << '\t' << category_name(cat) << '\n';
  }
}

/// Scored terms whose offensiveness is strictly above `threshold`.
inline std::vector<ScoredTerm> active_terms(const LexiconSet& ls, int threshold) {
  std::vector<ScoredTerm> out;
  std::copy_if(ls.scored_terms.begin(), ls.scored_terms.end(), std::back_inserter(out),
               [threshold](const ScoredTerm& t) { return t.offensiveness > threshold; });
  return out;
}

inline std::vector<ScoredTerm> active_terms(const LexiconSet& ls) { return active_terms(ls, ls.threshold); }

/// Manual label for a normalized target; Other when unlabeled.
inline Category categorize(const LexiconSet& ls, std::string_view target) {
  const auto it = ls.category_map.find(target);
  return it == ls.category_map.end() ? Category::Other : it->second;
}

inline bool is_labeled(const LexiconSet& ls, std::string_view target) {
  return ls.category_map.find(target) != ls.category_map.end();
}

}  // namespace hatescan
