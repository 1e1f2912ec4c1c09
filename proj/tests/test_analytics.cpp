#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hatescan/analytics.hpp"
#include "hatescan/oracle.hpp"
#include "hatescan/report.hpp"
#include "test_support.hpp"

using namespace hatescan;
using hatescan::testing::curated_corpus;
using hatescan::testing::default_lexicons;

namespace {

HateMatch make(std::string target, Category cat, TargetTemplate tmpl = TargetTemplate::People,
               std::string expr = "i hate", bool labeled = true) {
  HateMatch m;
  m.post_id = "p";
  m.expression = std::move(expr);
  m.target = std::move(target);
  m.category = cat;
  m.target_template = tmpl;
  m.labeled = labeled;
  m.span_end = 3;
  return m;
}

using PostMatches = std::pair<PostRecord, std::vector<HateMatch>>;

std::vector<PostMatches> scan_posts(const std::vector<PostRecord>& posts, const MatcherConfig& cfg = {}) {
  const Matcher matcher(default_lexicons(), cfg);
  std::vector<PostMatches> out;
  for (const auto& p : posts) out.emplace_back(p, matcher.match(p));
  return out;
}

std::vector<PostRecord> soup(std::size_t n, std::uint64_t seed) {
  oracle::CorpusGenerator gen(default_lexicons(), {0, 0, seed, 0});
  std::vector<PostRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen.soup(i));
  return out;
}

}  // namespace

TEST(Summarize, NoMatches) {
  std::vector<PostMatches> rows(10);
  const auto s = summarize(rows);
  EXPECT_EQ(s.total_posts, 10u);
  EXPECT_EQ(s.matched_posts, 0u);
  EXPECT_TRUE(s.per_expression.empty());
  EXPECT_TRUE(s.per_target.empty());
  EXPECT_TRUE(s.per_category.empty());
  EXPECT_TRUE(s.per_template.empty());
}

TEST(Summarize, DistinctValuesCountOncePerPost) {
  std::vector<PostMatches> rows(1);
  rows[0].second = {make("black people", Category::Race), make("nigga", Category::Race, TargetTemplate::Lexicon),
                    make("black people", Category::Race)};
  const auto s = summarize(rows);
  EXPECT_EQ(s.matched_posts, 1u);
  EXPECT_EQ(s.per_target.at("black people"), 1u);
  EXPECT_EQ(s.per_target.at("nigga"), 1u);
  EXPECT_EQ(s.per_category.at(Category::Race), 1u);
  EXPECT_EQ(s.per_expression.at("i hate"), 1u);
  EXPECT_EQ(s.per_template.at(TargetTemplate::People), 1u);
  EXPECT_EQ(s.per_template.at(TargetTemplate::Lexicon), 1u);
  EXPECT_EQ(s.labeled_target_posts, 1u);
}

TEST(Summarize, CuratedFixtureEqualsHandLabelRecount) {
  // Independent route: the same counters built from the hand-written
  // expected matches instead of the matcher's output.
  const auto records = oracle::read_synth_corpus(curated_corpus());
  std::vector<PostMatches> labeled;
  std::vector<PostRecord> posts;
  for (const auto& r : records) {
    std::vector<HateMatch> ms;
    if (r.expected) ms.push_back(*r.expected);
    labeled.emplace_back(r.post, ms);
    posts.push_back(r.post);
  }
  MatcherConfig cfg;
  cfg.gerund_filter = true;
  const auto scanned = summarize(scan_posts(posts, cfg));
  EXPECT_EQ(scanned, summarize(labeled));
  EXPECT_EQ(scanned.total_posts, 60u);
  EXPECT_EQ(scanned.matched_posts, 30u);
}

TEST(Merge, IdentityCommutativityAndSharding) {
  const auto rows = scan_posts(soup(2000, 41));
  const ScanSummary whole = summarize(rows);
  EXPECT_EQ(merge(whole, ScanSummary{}), whole);
  EXPECT_EQ(merge(ScanSummary{}, whole), whole);

  const std::size_t half = rows.size() / 2;
  const auto a = summarize(std::vector<PostMatches>(rows.begin(), rows.begin() + half));
  const auto b = summarize(std::vector<PostMatches>(rows.begin() + half, rows.end()));
  EXPECT_EQ(merge(a, b), merge(b, a));
  EXPECT_EQ(merge(a, b), whole);

  ScanSummary sharded;
  for (std::size_t shard = 0; shard < 4; ++shard) {
    std::vector<PostMatches> part;
    for (std::size_t i = shard; i < rows.size(); i += 4) part.push_back(rows[i]);
    sharded.merge(summarize(part));
  }
  EXPECT_EQ(sharded, whole);
}

TEST(MergeProperty, AssociativeForRandomShardings) {
  const auto rows = scan_posts(soup(1500, 42));
  const ScanSummary whole = summarize(rows);
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
    std::vector<std::vector<PostMatches>> shards(k);
    for (const auto& r : rows) shards[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)].push_back(r);
    std::vector<ScanSummary> parts;
    for (const auto& sh : shards) parts.push_back(summarize(sh));
    ScanSummary left;
    for (const auto& p : parts) left = merge(left, p);
    ScanSummary right;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) right = merge(*it, right);
    EXPECT_EQ(left, whole);
    EXPECT_EQ(right, whole);
  }
}

TEST(TopTable, SingleCategory) {
  std::vector<PostMatches> rows(3);
  for (auto& r : rows) r.second = {make("black people", Category::Race)};
  const auto t = top_table(summarize(rows), Dimension::Category, 10);
  ASSERT_TRUE(t);
  ASSERT_EQ(t->rows.size(), 1u);
  EXPECT_EQ(t->rows[0].label, "Race");
  EXPECT_EQ(t->rows[0].percent_hundredths, 10000u);
  EXPECT_DOUBLE_EQ(t->rows[0].percent(), 100.0);
}

TEST(TopTable, OrderingTiesAndTruncation) {
  ScanSummary s;
  s.total_posts = s.matched_posts = 8;
  s.per_target = {{"b", 2}, {"a", 2}, {"c", 5}, {"d", 1}};
  auto t = top_table(s, Dimension::Target, 10);
  ASSERT_TRUE(t);
  std::vector<std::string> labels;
  for (const auto& r : t->rows) labels.push_back(r.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"c", "a", "b", "d"}));
  EXPECT_EQ(t->rows[0].percent_hundredths, 6250u);
  t = top_table(s, Dimension::Target, 2);
  ASSERT_EQ(t->rows.size(), 2u);
  EXPECT_EQ(t->rows[1].label, "a");
  EXPECT_THROW(top_table(s, Dimension::Target, 0), std::invalid_argument);
}

TEST(TopTable, OtherRowAlwaysLast) {
  ScanSummary s;
  s.total_posts = s.matched_posts = 100;
  s.per_category = {{Category::Other, 60}, {Category::Race, 20}, {Category::Behavior, 15}, {Category::Gender, 5}};
  auto t = top_table(s, Dimension::Category, 10);
  ASSERT_EQ(t->rows.size(), 4u);
  EXPECT_EQ(t->rows.back().label, "Other");
  EXPECT_EQ(t->rows.front().label, "Race");
  t = top_table(s, Dimension::Category, 2);
  ASSERT_EQ(t->rows.size(), 2u);
  EXPECT_EQ(t->rows[0].label, "Race");
  EXPECT_EQ(t->rows[1].label, "Other");
}

TEST(TopTable, NoMatchedPostsSignalsEmpty) {
  ScanSummary s;
  s.total_posts = 5;
  EXPECT_FALSE(top_table(s, Dimension::Expression, 10).has_value());
  EXPECT_FALSE(template_split(s).has_value());
  EXPECT_FALSE(coverage(s).has_value());
}

TEST(Percent, HalfUpRounding) {
  EXPECT_EQ(percent_hundredths(1, 3), 3333u);
  EXPECT_EQ(percent_hundredths(2, 3), 6667u);
  EXPECT_EQ(percent_hundredths(1, 800), 13u);   // 0.125 -> 0.13
  EXPECT_EQ(percent_hundredths(3, 1600), 19u);  // 0.1875 -> 0.19
  EXPECT_EQ(format_hundredths(7), "0.07");
  EXPECT_EQ(format_hundredths(12345), "123.45");
  EXPECT_EQ(format_hundredths(10000), "100.00");
}

TEST(TopTableProperty, PercentagesSumToHundred) {
  // One match per post, so each dimension partitions the matched posts.
  std::mt19937 rng(7);
  const std::vector<std::string> targets = {"a people", "b people", "c", "d people", "e", "f people", "g"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PostMatches> rows(std::uniform_int_distribution<int>(1, 300)(rng));
    for (auto& r : rows) {
      const auto& t = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
      const auto cat = kAllCategories[std::uniform_int_distribution<std::size_t>(0, 9)(rng)];
      r.second = {make(t, cat, TargetTemplate::People, "i hate " + t.substr(0, 1))};
    }
    const auto s = summarize(rows);
    for (Dimension d : {Dimension::Expression, Dimension::Target, Dimension::Category}) {
      const auto t = top_table(s, d, 1000);
      std::uint64_t sum = 0;
      for (const auto& r : t->rows) sum += r.percent_hundredths;
      const auto diff = static_cast<std::int64_t>(sum) - 10000;
      EXPECT_LE(std::abs(diff), static_cast<std::int64_t>(t->rows.size())) << "trial " << trial;
    }
  }
}

TEST(TemplateSplit, Cases) {
  std::vector<PostMatches> rows(2);
  rows[0].second = {make("a people", Category::Other)};
  rows[1].second = {make("b people", Category::Other)};
  auto split = template_split(summarize(rows));
  EXPECT_DOUBLE_EQ(split->people_percent, 100.0);
  EXPECT_DOUBLE_EQ(split->lexicon_percent, 0.0);

  std::vector<PostMatches> both(1);
  both[0].second = {make("a people", Category::Other), make("nigga", Category::Race, TargetTemplate::Lexicon)};
  split = template_split(summarize(both));
  EXPECT_DOUBLE_EQ(split->people_percent, 100.0);
  EXPECT_DOUBLE_EQ(split->lexicon_percent, 100.0);
}

TEST(Coverage, Cases) {
  std::vector<PostMatches> rows(4);
  for (auto& r : rows) r.second = {make("x people", Category::Other, TargetTemplate::People, "i hate", true)};
  EXPECT_DOUBLE_EQ(*coverage(summarize(rows)), 100.0);
  for (auto& r : rows) r.second[0].labeled = false;
  EXPECT_DOUBLE_EQ(*coverage(summarize(rows)), 0.0);
  rows[0].second[0].labeled = true;
  EXPECT_DOUBLE_EQ(*coverage(summarize(rows)), 25.0);
}

TEST(SummaryJson, RoundTrip) {
  const auto s = summarize(scan_posts(soup(1000, 43)));
  EXPECT_EQ(summary_from_json(to_json(s)), s);
  auto j = to_json(s);
  j["matchedPosts"] = s.total_posts + 1;
  EXPECT_THROW(summary_from_json(j), std::invalid_argument);
}

TEST(SampleForAudit, WholePopulationWhenSmall) {
  const std::vector<int> items = {1, 2, 3, 4, 5};
  EXPECT_EQ(sample_for_audit(items, 5, 1), items);
  EXPECT_EQ(sample_for_audit(items, 50, 1), items);
  EXPECT_THROW(sample_for_audit(items, 0, 1), std::invalid_argument);
}

TEST(SampleForAudit, DeterministicForSeed) {
  std::vector<int> items(1000);
  std::iota(items.begin(), items.end(), 0);
  const auto a = sample_for_audit(items, 100, 99);
  EXPECT_EQ(a, sample_for_audit(items, 100, 99));
  EXPECT_EQ(a.size(), 100u);
  EXPECT_NE(a, sample_for_audit(items, 100, 100));
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::set<int>(a.begin(), a.end()).size(), 100u);
}

TEST(SampleForAudit, UniformOverSeeds) {
  // 10,000 draws of n=1 from 10 items: each count ~ Binomial(10000, 0.1),
  // sd = 30, so 1000 +/- 150 is a 5-sigma band.
  std::vector<int> items(10);
  std::iota(items.begin(), items.end(), 0);
  std::vector<int> counts(10, 0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) ++counts[sample_for_audit(items, 1, seed).at(0)];
  for (int c : counts) {
    EXPECT_GE(c, 850);
    EXPECT_LE(c, 1150);
  }
}
