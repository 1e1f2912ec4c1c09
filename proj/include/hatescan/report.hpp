#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hatescan/analytics.hpp"
#include "hatescan/corpus_io.hpp"

namespace hatescan {

/// Rebuilds post-level counters from a match file. Matches of one post are
/// contiguous in files written by the scanner. The file carries no
/// unmatched posts, so total_posts equals matched_posts here.
inline ScanSummary recount_match_file(const std::filesystem::path& path) {
  MatchReader reader(path);
  ScanSummary s;
  std::vector<HateMatch> group;
  auto flush = [&] {
    if (!group.empty()) s.add_post(group);
    group.clear();
  };
  while (auto rec = reader.next()) {
    if (!group.empty() && group.back().post_id != rec->match.post_id) flush();
    group.push_back(std::move(rec->match));
  }
  flush();
  return s;
}

struct AuditSample {
  std::vector<MatchRecord> records;
  std::uint64_t population = 0;
};

/// Reservoir sample of match records straight from a match file.
inline AuditSample sample_match_file(const std::filesystem::path& path, std::size_t n, std::uint64_t seed) {
  MatchReader reader(path);
  ReservoirSampler<MatchRecord> sampler(n, seed);
  while (auto rec = reader.next()) sampler.offer(std::move(*rec));
  AuditSample out;
  out.population = sampler.seen();
  out.records = std::move(sampler).take();
  return out;
}

namespace detail {

inline nlohmann::json table_json(const std::optional<ReportTable>& table) {
  nlohmann::json rows = nlohmann::json::array();
  if (!table) return rows;
  for (const auto& r : table->rows) {
    rows.push_back({{"label", r.label}, {"count", r.count}, {"percent", r.percent()}});
  }
  return rows;
}

inline double rounded_percent(std::uint64_t count, std::uint64_t denominator) {
  return static_cast<double>(percent_hundredths(count, denominator)) / 100.0;
}

inline std::uint64_t template_posts(const ScanSummary& s, TargetTemplate t) {
  const auto it = s.per_template.find(t);
  return it == s.per_template.end() ? 0 : it->second;
}

}  // namespace detail

/// Report document: the three ranked tables plus template split and
/// labeled-target coverage. Fields that need matched posts are null when
/// there are none.
inline nlohmann::json build_report(const ScanSummary& s, std::size_t k) {
  nlohmann::json report;
  report["tables"] = {
      {"expressions", detail::table_json(top_table(s, Dimension::Expression, k))},
      {"targets", detail::table_json(top_table(s, Dimension::Target, k))},
      {"categories", detail::table_json(top_table(s, Dimension::Category, k))},
  };
  if (s.matched_posts > 0) {
    report["templateSplit"] = {
        {"people", detail::rounded_percent(detail::template_posts(s, TargetTemplate::People), s.matched_posts)},
        {"lexicon", detail::rounded_percent(detail::template_posts(s, TargetTemplate::Lexicon), s.matched_posts)}};
    report["coverage"] = detail::rounded_percent(s.labeled_target_posts, s.matched_posts);
  } else {
    report["templateSplit"] = nullptr;
    report["coverage"] = nullptr;
  }
  report["matchedPosts"] = s.matched_posts;
  report["totalPosts"] = s.total_posts;
  if (s.matched_posts == 0) report["message"] = "no matches";
  return report;
}

namespace detail {

inline void render_table(std::ostringstream& out, const std::string& title, const std::string& heading,
                         const std::optional<ReportTable>& table) {
  out << title << '\n';
  std::size_t width = heading.size();
  for (const auto& r : table->rows) width = std::max(width, r.label.size());
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  auto lpad = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
  out << "  " << pad(heading, width) << "  " << lpad("% posts", 8) << "  " << lpad("posts", 8) << '\n';
  for (const auto& r : table->rows) {
    out << "  " << pad(r.label, width) << "  " << lpad(format_hundredths(r.percent_hundredths), 8) << "  "
        << lpad(std::to_string(r.count), 8) << '\n';
  }
  out << '\n';
}

}  // namespace detail

/// Aligned-column text rendering of build_report.
inline std::string render_text(const ScanSummary& s, std::size_t k) {
  std::ostringstream out;
  out << "Matched posts: " << s.matched_posts << " / " << s.total_posts << "\n\n";
  if (s.matched_posts == 0) {
    out << "No matches.\n";
    return out.str();
  }
  detail::render_table(out, "Top hate expressions", "Expression", top_table(s, Dimension::Expression, k));
  detail::render_table(out, "Top hate targets", "Target", top_table(s, Dimension::Target, k));
  detail::render_table(out, "Hate categories", "Category", top_table(s, Dimension::Category, k));
  out << "Template split: people "
      << format_hundredths(percent_hundredths(detail::template_posts(s, TargetTemplate::People), s.matched_posts))
      << "%, lexicon "
      << format_hundredths(percent_hundredths(detail::template_posts(s, TargetTemplate::Lexicon), s.matched_posts)) << "%\n";
  out << "Labeled-target coverage: " << format_hundredths(percent_hundredths(s.labeled_target_posts, s.matched_posts))
      << "%\n";
  return out.str();
}

}  // namespace hatescan
