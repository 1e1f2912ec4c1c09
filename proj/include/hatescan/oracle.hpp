#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hatescan/corpus_io.hpp"
#include "hatescan/lexicon.hpp"
#include "hatescan/matcher.hpp"
#include "hatescan/normalize.hpp"

namespace hatescan::oracle {

using Words = std::vector<std::string>;

inline bool phrase_at(const Words& words, std::size_t pos, const Words& phrase) {
  if (pos + phrase.size() > words.size()) return false;
  return std::equal(phrase.begin(), phrase.end(), words.begin() + static_cast<std::ptrdiff_t>(pos));
}

/// Length of the longest phrase in `phrases` found at `pos`, 0 if none.
inline std::size_t longest_at(const Words& words, std::size_t pos, const std::vector<Words>& phrases) {
  std::size_t best = 0;
  for (const auto& p : phrases) {
    if (phrase_at(words, pos, p)) best = std::max(best, p.size());
  }
  return best;
}

/// Exhaustive reference for match_post. Every subject position is tried
/// against every (gap length, intent phrase, target) decomposition; a
/// decomposition is accepted only when it satisfies every grammar rule
/// stated declaratively:
///  - each gap token is an intensifier and no gap position starts an intent;
///  - the intent is the longest intent phrase at its position;
///  - the target is the longest active scored term when one starts right
///    after the intent, otherwise a valid "<word> people" pair.
/// Accepted matches never overlap: scanning resumes after the target.
inline std::vector<HateMatch> oracle_match(const PostRecord& post, const LexiconSet& ls,
                                           const MatcherConfig& cfg = {}) {
  const Words words = tokenize_words(post.text);
  std::vector<Words> intents;
  for (const auto& intent : ls.intents) intents.push_back(intent.tokens);
  std::vector<Words> terms;
  for (const auto& term : active_terms(ls, cfg.threshold.value_or(ls.threshold))) terms.push_back(term.phrase);

  struct Candidate {
    std::size_t gap;
    std::size_t intent_len;
    std::size_t target_len;
    TargetTemplate kind;
  };

  std::vector<HateMatch> out;
  std::size_t resume = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i < resume || !ls.subjects.contains(words[i])) continue;

    std::vector<Candidate> valid;
    for (std::size_t gap = 0; gap <= cfg.max_intensifiers; ++gap) {
      for (const auto& intent : intents) {
        const std::size_t at = i + 1 + gap;
        if (!phrase_at(words, at, intent)) continue;
        const std::size_t target = at + intent.size();

        bool gap_ok = true;
        for (std::size_t g = i + 1; g < at; ++g) {
          if (!ls.intensifiers.contains(words[g]) || ls.negators.contains(words[g]) ||
              longest_at(words, g, intents) > 0) {
            gap_ok = false;
          }
        }
        if (!gap_ok || longest_at(words, at, intents) != intent.size()) continue;

        std::vector<Candidate> targets;
        for (const auto& term : terms) {
          if (phrase_at(words, target, term)) targets.push_back({gap, intent.size(), term.size(), TargetTemplate::Lexicon});
        }
        if (target + 1 < words.size() && words[target + 1] == "people") {
          const std::string& w = words[target];
          const bool numeric = std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
          const bool gerund = w.size() >= 3 && w.compare(w.size() - 3, 3, "ing") == 0;
          if (!ls.exclusions.contains(w) && !numeric && !(cfg.gerund_filter && gerund)) {
            targets.push_back({gap, intent.size(), 2, TargetTemplate::People});
          }
        }
        const std::size_t longest_term = longest_at(words, target, terms);
        for (const auto& c : targets) {
          const bool chosen = longest_term > 0 ? (c.kind == TargetTemplate::Lexicon && c.target_len == longest_term)
                                               : c.kind == TargetTemplate::People;
          if (chosen) valid.push_back(c);
        }
      }
    }
    if (valid.empty()) continue;
    if (valid.size() > 1) throw std::logic_error("oracle: ambiguous decomposition in post " + post.id);

    const Candidate& c = valid.front();
    const std::size_t target = i + 1 + c.gap + c.intent_len;
    HateMatch m;
    m.post_id = post.id;
    m.expression = join_words(words, i, target);
    m.target = join_words(words, target, target + c.target_len);
    m.target_template = c.kind;
    m.category = categorize(ls, m.target);
    m.labeled = ls.category_map.count(m.target) > 0;
    m.span_begin = i;
    m.span_end = target + c.target_len;
    resume = m.span_end;
    out.push_back(std::move(m));
  }
  return out;
}

/// Shape of a synthetic ground-truth corpus.
struct SynthSpec {
  std::size_t n_posts = 1000;
  double positive_rate = 0.3;
  std::uint64_t seed = 7;
  double near_miss_rate = 0.3;

  void validate() const {
    if (!(positive_rate >= 0 && positive_rate <= 1) || !(near_miss_rate >= 0 && near_miss_rate <= 1)) {
      throw std::invalid_argument("rates must lie in [0, 1]");
    }
    if (positive_rate + near_miss_rate > 1.0 + 1e-12) {
      throw std::invalid_argument("positive rate + near-miss rate must not exceed 1");
    }
  }
};

enum class Label { Positive, NearMiss, Distractor };

inline constexpr std::string_view label_name(Label l) noexcept {
  switch (l) {
    case Label::Positive: return "positive";
    case Label::NearMiss: return "nearmiss";
    case Label::Distractor: return "distractor";
  }
  return "distractor";
}

inline std::optional<Label> parse_label(std::string_view s) noexcept {
  if (s == "positive") return Label::Positive;
  if (s == "nearmiss") return Label::NearMiss;
  if (s == "distractor") return Label::Distractor;
  return std::nullopt;
}

/// A generated post with its ground truth. Positives carry the one match
/// the grammar must find.
struct SynthRecord {
  PostRecord post;
  Label label = Label::Distractor;
  std::optional<HateMatch> expected;
};

inline nlohmann::json synth_to_json(const SynthRecord& r) {
  nlohmann::json obj = post_to_json(r.post);
  obj["label"] = label_name(r.label);
  if (r.expected) {
    nlohmann::json e = match_to_json(*r.expected);
    e.erase("postId");
    obj["expected"] = std::move(e);
  }
  return obj;
}

/// Parses a ground-truth line (corpus record plus `label` and optional
/// `expected`). Throws std::invalid_argument.
inline SynthRecord parse_synth(std::string_view line) {
  SynthRecord r;
  r.post = parse_post(line);
  const auto obj = nlohmann::json::parse(line);
  const auto label = parse_label(obj.value("label", std::string()));
  if (!label) throw std::invalid_argument("missing or unknown \"label\"");
  r.label = *label;
  if (const auto* e = detail::optional_field(obj, "expected")) {
    nlohmann::json copy = *e;
    copy["postId"] = r.post.id;
    r.expected = parse_match(copy.dump()).match;
  }
  return r;
}

inline std::vector<SynthRecord> read_synth_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(path.string(), 0, "cannot open ground-truth file");
  std::vector<SynthRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_synth(line));
    } catch (const std::exception& e) {
      throw CorpusError(path.string(), line_no, e.what());
    }
  }
  return out;
}

/// Deterministic synthetic corpus built from a LexiconSet.
///
/// Positives are assembled from the grammar (subject, 0..2 intensifiers,
/// intent, target from either template) inside neutral filler words.
/// Near-misses are positives broken by one mutation: a negator in the gap,
/// an exclusion word as the people-template word, a dropped subject or a
/// non-intensifier gap token. Distractors are word salads with no subject.
class CorpusGenerator {
 public:
  CorpusGenerator(const LexiconSet& ls, SynthSpec spec) : ls_(&ls), spec_(spec), rng_(spec.seed) {
    spec_.validate();
    build_pools();
  }

  bool done() const noexcept { return produced_ >= spec_.n_posts; }

  std::optional<SynthRecord> next() {
    if (done()) return std::nullopt;
    const std::size_t index = produced_++;
    const double r = unit_interval();
    SynthRecord rec;
    rec.post.id = "synth-" + std::to_string(index);
    rec.post.source = "synthetic";
    if (r < spec_.positive_rate) {
      rec.label = Label::Positive;
      Assembled a = assemble_positive();
      rec.expected = a.expected;
      rec.expected->post_id = rec.post.id;
      rec.post.text = render(a.words, a.subject_index);
    } else if (r < spec_.positive_rate + spec_.near_miss_rate) {
      rec.label = Label::NearMiss;
      Assembled a = assemble_near_miss();
      rec.post.text = render(a.words, a.subject_index);
    } else {
      rec.label = Label::Distractor;
      rec.post.text = render(word_salad(), std::nullopt);
    }
    return rec;
  }

  /// Random token soup over the full vocabulary, subjects included, for
  /// differential testing against the oracle. At most `max_tokens` tokens.
  PostRecord soup(std::size_t index, std::size_t max_tokens = 30) {
    Words words;
    const std::size_t target_len = pick(1, max_tokens);
    while (words.size() < target_len) {
      Words piece;
      switch (pick(0, 9)) {
        case 0: piece = {choice(subjects_)}; break;
        case 1: piece = {choice(intensifiers_all_)}; break;
        case 2: piece = {choice(negators_)}; break;
        case 3: piece = choice(intent_phrases_); break;
        case 4: piece = {choice(people_words_), "people"}; break;
        case 5: piece = all_terms_.empty() ? Words{choice(fillers_)} : choice(all_terms_); break;
        case 6: piece = {exclusions_.empty() ? choice(fillers_) : choice(exclusions_), "people"}; break;
        case 7: piece = {choice(odd_words_)}; break;
        case 8: piece = {choice(fillers_)}; break;
        default: piece = {choice(subjects_), choice(intent_phrases_).front()}; break;
      }
      for (auto& w : piece) {
        if (words.size() < target_len) words.push_back(std::move(w));
      }
    }
    PostRecord post;
    post.id = "soup-" + std::to_string(index);
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) text += pick(0, 5) == 0 ? ", " : " ";
      std::string w = words[i];
      if (pick(0, 3) == 0) {
        for (auto& ch : w) {
          if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
        }
      }
      text += w;
    }
    post.text = text;
    return post;
  }

 private:
  struct Assembled {
    Words words;
    std::optional<std::size_t> subject_index;
    HateMatch expected;
    std::size_t gap_begin = 0;
    std::size_t intent_begin = 0;
    std::size_t target_begin = 0;
  };

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double unit_interval() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  template <class T>
  const T& choice(const std::vector<T>& v) {
    return v[pick(0, v.size() - 1)];
  }

  bool is_lexicon_token(const std::string& w) const {
    return ls_->subjects.contains(w) || ls_->negators.contains(w) || ls_->intensifiers.contains(w) ||
           ls_->exclusions.contains(w) || vocab_.contains(w) || w == "people";
  }

  void build_pools() {
    for (const auto& intent : ls_->intents) {
      intent_phrases_.push_back(intent.tokens);
      for (const auto& t : intent.tokens) vocab_.insert(t);
    }
    for (const auto& term : ls_->scored_terms) {
      all_terms_.push_back(term.phrase);
      for (const auto& t : term.phrase) vocab_.insert(t);
    }
    for (const auto& term : active_terms(*ls_)) active_terms_.push_back(term.phrase);
    subjects_.assign(ls_->subjects.begin(), ls_->subjects.end());
    negators_.assign(ls_->negators.begin(), ls_->negators.end());
    exclusions_.assign(ls_->exclusions.begin(), ls_->exclusions.end());
    intensifiers_all_.assign(ls_->intensifiers.begin(), ls_->intensifiers.end());
    for (const auto& w : intensifiers_all_) {
      if (!starts_intent(w)) intensifiers_.push_back(w);
    }
    if (negators_.empty()) negators_.push_back("not");
    if (intensifiers_all_.empty()) intensifiers_all_.push_back("really");

    Words people_candidates = {"black",  "white",   "fake",    "stupid", "rude",    "gay",     "fat",
                               "old",    "racist",  "ignorant", "lazy",  "arrogant", "selfish", "loud",
                               "short",  "tall",    "rich",    "poor",   "young",   "religious", "drunk"};
    for (const auto& [target, cat] : ls_->category_map) {
      const Words w = tokenize_words(target);
      if (w.size() == 2 && w[1] == "people") people_candidates.push_back(w[0]);
    }
    std::set<std::string> seen;
    for (const auto& w : people_candidates) {
      if (!seen.insert(w).second) continue;
      if (ls_->exclusions.contains(w) || w.ends_with("ing") || is_lexicon_token(w)) continue;
      people_words_.push_back(w);
    }
    for (const auto& w : Words{"today", "coffee", "weather", "morning", "bus",     "game",     "music",  "pizza",
                               "phone", "work",   "school",  "weekend", "movie",   "dog",      "cat",    "rain",
                               "traffic", "homework", "lunch", "monday", "friends", "party", "car",    "book",
                               "class", "team",   "song",    "beach",   "summer",  "winter",   "city",   "train",
                               "store", "news",   "show",    "the",     "a",       "with",     "about",  "after"}) {
      if (!is_lexicon_token(w) && !seen.contains(w)) fillers_.push_back(w);
    }
    odd_words_ = {"owing", "following", "2pac", "123", "watching", "hates", "people", "i'd", "me", "myself"};
  }

  bool starts_intent(const std::string& w) const {
    return std::any_of(intent_phrases_.begin(), intent_phrases_.end(), [&](const Words& p) { return p.front() == w; });
  }

  Words fillers(std::size_t lo, std::size_t hi) {
    Words out;
    const std::size_t n = pick(lo, hi);
    for (std::size_t i = 0; i < n; ++i) out.push_back(choice(fillers_));
    return out;
  }

  // Checks that the assembled words decompose as constructed: no gap
  // token starts an intent, the intent is the longest one at its position,
  // and the target is resolved to the constructed template.
  bool consistent(const Assembled& a, std::size_t intent_len, std::size_t target_len, TargetTemplate kind) const {
    for (std::size_t g = a.gap_begin; g < a.intent_begin; ++g) {
      if (longest_at(a.words, g, intent_phrases_) > 0) return false;
    }
    if (longest_at(a.words, a.intent_begin, intent_phrases_) != intent_len) return false;
    const std::size_t term = longest_at(a.words, a.target_begin, active_terms_);
    if (kind == TargetTemplate::Lexicon) return term == target_len;
    return term == 0;
  }

  Assembled assemble_positive(bool force_people = false) {
    for (;;) {
      Assembled a;
      a.words = fillers(0, 3);
      a.subject_index = a.words.size();
      const std::string subject = choice(subjects_);
      a.words.push_back(subject);
      a.gap_begin = a.words.size();
      const std::size_t n_intens = intensifiers_.empty() ? 0 : pick(0, 2);
      for (std::size_t i = 0; i < n_intens; ++i) a.words.push_back(choice(intensifiers_));
      a.intent_begin = a.words.size();
      const Words& intent = choice(intent_phrases_);
      a.words.insert(a.words.end(), intent.begin(), intent.end());
      a.target_begin = a.words.size();
      Words target;
      TargetTemplate kind;
      if (!force_people && !active_terms_.empty() && pick(0, 2) == 0) {
        target = choice(active_terms_);
        kind = TargetTemplate::Lexicon;
      } else {
        target = {choice(people_words_), "people"};
        kind = TargetTemplate::People;
      }
      a.words.insert(a.words.end(), target.begin(), target.end());
      const std::size_t end = a.words.size();
      const Words tail = fillers(0, 3);
      a.words.insert(a.words.end(), tail.begin(), tail.end());
      if (!consistent(a, intent.size(), target.size(), kind)) continue;

      HateMatch& m = a.expected;
      m.expression = join_words(a.words, *a.subject_index, a.target_begin);
      m.target = join_words(target);
      m.target_template = kind;
      m.category = categorize(*ls_, m.target);
      m.labeled = is_labeled(*ls_, m.target);
      m.span_begin = *a.subject_index;
      m.span_end = end;
      return a;
    }
  }

  Assembled assemble_near_miss() {
    for (int attempt = 0;; ++attempt) {
      const std::size_t mutation = attempt < 8 ? pick(0, 3) : 3;
      Assembled a = assemble_positive(/*force_people=*/mutation == 1);
      switch (mutation) {
        case 0: {  // negator somewhere in the gap
          const std::size_t at = pick(a.gap_begin, a.intent_begin);
          a.words.insert(a.words.begin() + static_cast<std::ptrdiff_t>(at), choice(negators_));
          if (longest_at(a.words, at, intent_phrases_) > 0) continue;  // e.g. "don't" + "like"
          return a;
        }
        case 1: {  // exclusion word in the people template
          if (exclusions_.empty()) continue;
          const std::size_t intent_len = longest_at(a.words, a.intent_begin, intent_phrases_);
          a.words[a.target_begin] = choice(exclusions_);
          if (longest_at(a.words, a.target_begin, active_terms_) > 0) continue;
          if (longest_at(a.words, a.intent_begin, intent_phrases_) != intent_len) continue;
          return a;
        }
        case 2: {  // no subject
          a.words.erase(a.words.begin() + static_cast<std::ptrdiff_t>(*a.subject_index));
          a.subject_index.reset();
          return a;
        }
        default: {  // non-intensifier in the gap
          const std::size_t at = pick(a.gap_begin, a.intent_begin);
          a.words.insert(a.words.begin() + static_cast<std::ptrdiff_t>(at), choice(fillers_));
          return a;
        }
      }
    }
  }

  Words word_salad() {
    Words words;
    const std::size_t n = pick(3, 12);
    for (std::size_t i = 0; i < n; ++i) {
      switch (pick(0, 5)) {
        case 0: words.push_back(choice(intensifiers_all_)); break;
        case 1: {
          const Words& p = choice(intent_phrases_);
          words.insert(words.end(), p.begin(), p.end());
          break;
        }
        case 2:
          words.push_back(choice(people_words_));
          words.push_back("people");
          break;
        default: words.push_back(choice(fillers_)); break;
      }
    }
    return words;
  }

  // Joins words into post text: capitalized subject, occasional curly
  // apostrophes and trailing punctuation.
  std::string render(const Words& words, std::optional<std::size_t> subject_index) {
    std::string text;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) text.push_back(' ');
      std::string w = words[i];
      if (subject_index && i == *subject_index && !w.empty() && w[0] >= 'a' && w[0] <= 'z') {
        w[0] = static_cast<char>(w[0] - 'a' + 'A');
      }
      if (w.find('\'') != std::string::npos && pick(0, 4) == 0) {
        std::string curly;
        for (char ch : w) {
          if (ch == '\'') {
            curly += "\xE2\x80\x99";
          } else {
            curly.push_back(ch);
          }
        }
        w = std::move(curly);
      }
      text += w;
    }
    static const char* const kEndings[] = {"", "", ".", "!", "!!", "?"};
    text += kEndings[pick(0, 5)];
    return text;
  }

  const LexiconSet* ls_;
  SynthSpec spec_;
  std::mt19937_64 rng_;
  std::size_t produced_ = 0;
  std::set<std::string> vocab_;
  std::vector<Words> intent_phrases_;
  std::vector<Words> all_terms_;
  std::vector<Words> active_terms_;
  Words subjects_, negators_, exclusions_, intensifiers_, intensifiers_all_, people_words_, fillers_, odd_words_;
};

/// Materializes a whole synthetic corpus. Prefer CorpusGenerator::next()
/// for large corpora.
inline std::vector<SynthRecord> generate_corpus(const SynthSpec& spec, const LexiconSet& ls) {
  CorpusGenerator gen(ls, spec);
  std::vector<SynthRecord> out;
  out.reserve(spec.n_posts);
  while (auto r = gen.next()) out.push_back(std::move(*r));
  return out;
}

}  // namespace hatescan::oracle
