#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hatescan/category.hpp"
#include "hatescan/lexicon.hpp"
#include "hatescan/normalize.hpp"
#include "hatescan/post.hpp"

namespace hatescan {

enum class TargetTemplate {
  People,   // "<word> people"
  Lexicon,  // an active scored term
};

inline constexpr std::string_view template_name(TargetTemplate t) noexcept {
  return t == TargetTemplate::People ? "people" : "lexicon";
}

inline std::optional<TargetTemplate> parse_template(std::string_view s) noexcept {
  if (s == "people") return TargetTemplate::People;
  if (s == "lexicon") return TargetTemplate::Lexicon;
  return std::nullopt;
}

/// One detected "subject [intensifiers] intent target" expression.
struct HateMatch {
  std::string post_id;
  std::string expression;  // "subject intensifiers... intent", space-joined
  std::string target;
  TargetTemplate target_template = TargetTemplate::People;
  Category category = Category::Other;
  bool labeled = false;  // target has an explicit entry in the category map
  std::size_t span_begin = 0;  // token index of the subject
  std::size_t span_end = 0;    // one past the last target token

  bool operator==(const HateMatch&) const = default;
};

struct MatcherConfig {
  std::size_t max_intensifiers = 3;
  /// Also reject "<word> people" targets whose word ends in "ing".
  bool gerund_filter = false;
  /// Replaces LexiconSet::threshold when set.
  std::optional<int> threshold;
};

inline bool ends_with_ing(std::string_view word) noexcept { return word.ends_with("ing"); }

inline bool has_non_digit(std::string_view word) noexcept {
  for (char c : word) {
    if (c < '0' || c > '9') return true;
  }
  return false;
}

/// Token trie over multiword phrases with longest-match lookup.
class PhraseTrie {
 public:
  PhraseTrie() : nodes_(1) {}

  void insert(const std::vector<std::string>& phrase) {
    std::uint32_t node = 0;
    for (const auto& tok : phrase) {
      auto it = nodes_[node].children.find(tok);
      if (it == nodes_[node].children.end()) {
        const auto next = static_cast<std::uint32_t>(nodes_.size());
        nodes_[node].children.emplace(tok, next);
        nodes_.emplace_back();
        node = next;
      } else {
        node = it->second;
      }
    }
    nodes_[node].terminal = true;
  }

  /// Length in tokens of the longest phrase starting at `pos`, 0 if none.
  std::size_t longest_match(const TokenStream& tokens, std::size_t pos) const {
    std::uint32_t node = 0;
    std::size_t best = 0;
    for (std::size_t i = pos; i < tokens.size(); ++i) {
      const auto& children = nodes_[node].children;
      auto it = children.find(tokens[i].text);
      if (it == children.end()) break;
      node = it->second;
      if (nodes_[node].terminal) best = i - pos + 1;
    }
    return best;
  }

 private:
  struct Node {
    std::unordered_map<std::string, std::uint32_t> children;
    bool terminal = false;
  };
  std::vector<Node> nodes_;
};

/// Compiled form of the expression grammar. Holds a reference to the
/// LexiconSet for category lookups, so the set must outlive the matcher.
/// `match` is const and safe to call from many threads.
class Matcher {
 public:
  Matcher(const LexiconSet& lexicons, MatcherConfig config = {})
      : lexicons_(&lexicons),
        config_(config),
        subjects_(lexicons.subjects.begin(), lexicons.subjects.end()),
        negators_(lexicons.negators.begin(), lexicons.negators.end()),
        intensifiers_(lexicons.intensifiers.begin(), lexicons.intensifiers.end()),
        exclusions_(lexicons.exclusions.begin(), lexicons.exclusions.end()) {
    for (const auto& intent : lexicons.intents) intents_.insert(intent.tokens);
    for (const auto& term : active_terms(lexicons, config.threshold.value_or(lexicons.threshold))) {
      terms_.insert(term.phrase);
    }
  }

  const MatcherConfig& config() const noexcept { return config_; }

  std::vector<HateMatch> match(std::string_view post_id, const TokenStream& tokens) const {
    std::vector<HateMatch> out;
    std::size_t pos = 0;
    while (pos < tokens.size()) {
      if (subjects_.contains(tokens[pos].text)) {
        if (auto m = match_at(tokens, pos)) {
          m->post_id = std::string(post_id);
          pos = m->span_end;
          out.push_back(std::move(*m));
          continue;
        }
      }
      ++pos;
    }
    return out;
  }

  std::vector<HateMatch> match(const PostRecord& post) const { return match(post.id, tokenize(post.text)); }

 private:
  // Candidate anchored at the subject token `subject`.
  std::optional<HateMatch> match_at(const TokenStream& tokens, std::size_t subject) const {
    std::size_t pos = subject + 1;
    std::size_t intent_len = 0;
    for (;;) {
      if (pos >= tokens.size()) return std::nullopt;
      intent_len = intents_.longest_match(tokens, pos);
      if (intent_len > 0) break;
      const std::string& tok = tokens[pos].text;
      // Negators reject, anything else that is not an intensifier aborts.
      if (negators_.contains(tok) || !intensifiers_.contains(tok)) return std::nullopt;
      // Gap would now hold pos - subject intensifiers.
      if (pos - subject > config_.max_intensifiers) return std::nullopt;
      ++pos;
    }
    const std::size_t target = pos + intent_len;
    if (target >= tokens.size()) return std::nullopt;

    HateMatch m;
    std::size_t target_len = terms_.longest_match(tokens, target);
    if (target_len > 0) {
      m.target_template = TargetTemplate::Lexicon;
    } else if (target + 1 < tokens.size() && tokens[target + 1].text == "people") {
      const std::string& word = tokens[target].text;
      if (exclusions_.contains(word) || !has_non_digit(word)) return std::nullopt;
      if (config_.gerund_filter && ends_with_ing(word)) return std::nullopt;
      m.target_template = TargetTemplate::People;
      target_len = 2;
    } else {
      return std::nullopt;
    }

    for (std::size_t i = subject; i < target; ++i) {
      if (i != subject) m.expression.push_back(' ');
      m.expression += tokens[i].text;
    }
    for (std::size_t i = target; i < target + target_len; ++i) {
      if (i != target) m.target.push_back(' ');
      m.target += tokens[i].text;
    }
    m.category = categorize(*lexicons_, m.target);
    m.labeled = is_labeled(*lexicons_, m.target);
    m.span_begin = subject;
    m.span_end = target + target_len;
    return m;
  }

  const LexiconSet* lexicons_;
  MatcherConfig config_;
  std::unordered_set<std::string> subjects_;
  std::unordered_set<std::string> negators_;
  std::unordered_set<std::string> intensifiers_;
  std::unordered_set<std::string> exclusions_;
  PhraseTrie intents_;
  PhraseTrie terms_;
};

/// All non-overlapping matches in one post, left to right.
inline std::vector<HateMatch> match_post(const PostRecord& post, const LexiconSet& lexicons,
                                         const MatcherConfig& config = {}) {
  return Matcher(lexicons, config).match(post);
}

/// Multiset count of expression texts.
inline std::map<std::string, std::size_t> expression_breakdown(const std::vector<HateMatch>& matches) {
  std::map<std::string, std::size_t> counts;
  for (const auto& m : matches) ++counts[m.expression];
  return counts;
}

}  // namespace hatescan
