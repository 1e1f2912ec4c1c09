#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hatescan/category.hpp"
#include "hatescan/matcher.hpp"

namespace hatescan {

/// Post-level counters over a scan. A post adds at most one to each
/// distinct expression, target, category and template it matched. Summaries
/// from disjoint post sets combine exactly with merge().
struct ScanSummary {
  std::uint64_t total_posts = 0;
  std::uint64_t matched_posts = 0;
  std::uint64_t labeled_target_posts = 0;
  std::map<std::string, std::uint64_t> per_expression;
  std::map<std::string, std::uint64_t> per_target;
  std::map<Category, std::uint64_t> per_category;
  std::map<TargetTemplate, std::uint64_t> per_template;

  void add_post(std::span<const HateMatch> matches) {
    ++total_posts;
    if (matches.empty()) return;
    ++matched_posts;
    std::set<std::string_view> expressions;
    std::set<std::string_view> targets;
    std::set<Category> categories;
    std::set<TargetTemplate> templates;
    bool labeled = false;
    for (const auto& m : matches) {
      expressions.insert(m.expression);
      targets.insert(m.target);
      categories.insert(m.category);
      templates.insert(m.target_template);
      labeled = labeled || m.labeled;
    }
    for (auto e : expressions) ++per_expression[std::string(e)];
    for (auto t : targets) ++per_target[std::string(t)];
    for (auto c : categories) ++per_category[c];
    for (auto t : templates) ++per_template[t];
    if (labeled) ++labeled_target_posts;
  }

  ScanSummary& merge(const ScanSummary& other) {
    total_posts += other.total_posts;
    matched_posts += other.matched_posts;
    labeled_target_posts += other.labeled_target_posts;
    for (const auto& [k, v] : other.per_expression) per_expression[k] += v;
    for (const auto& [k, v] : other.per_target) per_target[k] += v;
    for (const auto& [k, v] : other.per_category) per_category[k] += v;
    for (const auto& [k, v] : other.per_template) per_template[k] += v;
    return *this;
  }

  bool operator==(const ScanSummary&) const = default;
};

inline ScanSummary merge(ScanSummary a, const ScanSummary& b) { return a.merge(b); }

/// Summarizes a range of (post, matches) pairs; the post half is unused
/// beyond counting, so any pair-like element works.
template <class Range>
ScanSummary summarize(const Range& posts_with_matches) {
  ScanSummary s;
  for (const auto& [post, matches] : posts_with_matches) {
    (void)post;
    s.add_post(std::span<const HateMatch>(matches.data(), matches.size()));
  }
  return s;
}

inline nlohmann::json to_json(const ScanSummary& s) {
  nlohmann::json categories = nlohmann::json::object();
  for (const auto& [c, n] : s.per_category) categories[std::string(category_name(c))] = n;
  nlohmann::json templates = nlohmann::json::object();
  for (const auto& [t, n] : s.per_template) templates[std::string(template_name(t))] = n;
  return {
      {"totalPosts", s.total_posts},
      {"matchedPosts", s.matched_posts},
      {"labeledTargetPosts", s.labeled_target_posts},
      {"perExpression", s.per_expression},
      {"perTarget", s.per_target},
      {"perCategory", categories},
      {"perTemplate", templates},
  };
}

/// Inverse of to_json. Throws std::invalid_argument on schema violations.
inline ScanSummary summary_from_json(const nlohmann::json& j) {
  try {
    ScanSummary s;
    s.total_posts = j.at("totalPosts").get<std::uint64_t>();
    s.matched_posts = j.at("matchedPosts").get<std::uint64_t>();
    s.labeled_target_posts = j.at("labeledTargetPosts").get<std::uint64_t>();
    s.per_expression = j.at("perExpression").get<std::map<std::string, std::uint64_t>>();
    s.per_target = j.at("perTarget").get<std::map<std::string, std::uint64_t>>();
    for (const auto& [name, n] : j.at("perCategory").items()) {
      const auto c = parse_category(name);
      if (!c) throw std::invalid_argument("unknown category '" + name + "'");
      s.per_category[*c] = n.get<std::uint64_t>();
    }
    for (const auto& [name, n] : j.at("perTemplate").items()) {
      const auto t = parse_template(name);
      if (!t) throw std::invalid_argument("unknown template '" + name + "'");
      s.per_template[*t] = n.get<std::uint64_t>();
    }
    if (s.matched_posts > s.total_posts || s.labeled_target_posts > s.matched_posts) {
      throw std::invalid_argument("inconsistent post counts");
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad summary: ") + e.what());
  }
}

/// 100 * count / denominator in hundredths of a percent, rounded half-up.
inline std::uint64_t percent_hundredths(std::uint64_t count, std::uint64_t denominator) {
  return (count * 20000 + denominator) / (2 * denominator);
}

inline std::string format_hundredths(std::uint64_t h) {
  const std::uint64_t frac = h % 100;
  return std::to_string(h / 100) + (frac < 10 ? ".0" : ".") + std::to_string(frac);
}

enum class Dimension { Expression, Target, Category };

struct ReportRow {
  std::string label;
  std::uint64_t count = 0;
  std::uint64_t percent_hundredths = 0;

  double percent() const noexcept { return static_cast<double>(percent_hundredths) / 100.0; }
  bool operator==(const ReportRow&) const = default;
};

/// Ranked rows with a "% of matched posts" column.
struct ReportTable {
  std::vector<ReportRow> rows;
  std::uint64_t denominator = 0;

  bool operator==(const ReportTable&) const = default;
};

/// Top-k rows of one dimension, ordered by count descending then label
/// ascending. For the category dimension an Other row, when present, always
/// takes the last of the k slots. Returns nullopt when no post matched.
inline std::optional<ReportTable> top_table(const ScanSummary& s, Dimension dim, std::size_t k) {
  if (k == 0) throw std::invalid_argument("top_table: k must be at least 1");
  if (s.matched_posts == 0) return std::nullopt;

  std::vector<std::pair<std::string, std::uint64_t>> items;
  std::optional<std::uint64_t> other;
  switch (dim) {
    case Dimension::Expression:
      items.assign(s.per_expression.begin(), s.per_expression.end());
      break;
    case Dimension::Target:
      items.assign(s.per_target.begin(), s.per_target.end());
      break;
    case Dimension::Category:
      for (const auto& [c, n] : s.per_category) {
        if (c == Category::Other) {
          other = n;
        } else {
          items.emplace_back(std::string(category_name(c)), n);
        }
      }
      break;
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  const std::size_t keep = std::min(items.size(), other ? k - 1 : k);
  ReportTable table;
  table.denominator = s.matched_posts;
  for (std::size_t i = 0; i < keep; ++i) {
    table.rows.push_back({items[i].first, items[i].second, percent_hundredths(items[i].second, s.matched_posts)});
  }
  if (other) {
    table.rows.push_back({std::string(category_name(Category::Other)), *other,
                          percent_hundredths(*other, s.matched_posts)});
  }
  return table;
}

struct TemplateSplit {
  double people_percent = 0;
  double lexicon_percent = 0;
};

/// Share of matched posts with at least one match of each template. The
/// two values can sum past 100 when a post carries both.
inline std::optional<TemplateSplit> template_split(const ScanSummary& s) {
  if (s.matched_posts == 0) return std::nullopt;
  auto share = [&](TargetTemplate t) {
    const auto it = s.per_template.find(t);
    const std::uint64_t n = it == s.per_template.end() ? 0 : it->second;
    return 100.0 * static_cast<double>(n) / static_cast<double>(s.matched_posts);
  };
  return TemplateSplit{share(TargetTemplate::People), share(TargetTemplate::Lexicon)};
}

/// Percentage of matched posts with at least one explicitly labeled target.
inline std::optional<double> coverage(const ScanSummary& s) {
  if (s.matched_posts == 0) return std::nullopt;
  return 100.0 * static_cast<double>(s.labeled_target_posts) / static_cast<double>(s.matched_posts);
}

/// Uniform sample without replacement over a stream of unknown length
/// (Algorithm R). Deterministic for a fixed seed. Samples come back in
/// stream order.
template <class T>
class ReservoirSampler {
 public:
  ReservoirSampler(std::size_t capacity, std::uint64_t seed) : capacity_(capacity), rng_(seed) {
    if (capacity == 0) throw std::invalid_argument("sample size must be at least 1");
  }

  void offer(T item) {
    const std::uint64_t index = seen_++;
    if (reservoir_.size() < capacity_) {
      reservoir_.emplace_back(index, std::move(item));
      return;
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, index);
    const std::uint64_t slot = pick(rng_);
    if (slot < capacity_) reservoir_[slot] = {index, std::move(item)};
  }

  std::uint64_t seen() const noexcept { return seen_; }

  std::vector<T> take() && {
    std::sort(reservoir_.begin(), reservoir_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<T> out;
    out.reserve(reservoir_.size());
    for (auto& [index, item] : reservoir_) out.push_back(std::move(item));
    return out;
  }

 private:
  std::size_t capacity_;
  std::mt19937_64 rng_;
  std::uint64_t seen_ = 0;
  std::vector<std::pair<std::uint64_t, T>> reservoir_;
};

/// Draws min(n, population) items uniformly from `items`.
template <class Range>
auto sample_for_audit(const Range& items, std::size_t n, std::uint64_t seed) {
  using T = std::decay_t<decltype(*std::begin(items))>;
  ReservoirSampler<T> sampler(n, seed);
  for (const auto& item : items) sampler.offer(item);
  return std::move(sampler).take();
}

}  // namespace hatescan
