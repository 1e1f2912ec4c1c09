// hatescan: command-line front end for scanning corpora, building reports,
// drawing audit samples, generating synthetic corpora and checking lexicons.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hatescan/hatescan.hpp"
#include "hatescan/oracle.hpp"

namespace fs = std::filesystem;
using namespace hatescan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

#ifndef HATESCAN_DEFAULT_LEXICONS
#define HATESCAN_DEFAULT_LEXICONS "data/lexicons"
#endif

int fail(int code, const std::string& message) {
  std::cerr << "hatescan: " << message << '\n';
  return code;
}

// CorpusError without a line number means the file itself could not be
// opened or read.
int corpus_failure(const CorpusError& e) { return fail(e.line() == 0 ? kExitIo : kExitInvalid, e.what()); }

fs::path summary_path_for(const fs::path& matches) { return fs::path(matches.string() + ".summary.json"); }

struct ScanArgs {
  std::string lexicons = HATESCAN_DEFAULT_LEXICONS;
  std::string corpus;
  std::string out;
  std::string summary;
  int threshold = kDefaultThreshold;
  bool gerund_filter = false;
  std::size_t workers = 1;
  bool lenient = false;
};

int cmd_scan(const ScanArgs& args) {
  LexiconSet ls;
  try {
    ls = load_lexicons(fs::path(args.lexicons), args.threshold);
  } catch (const LexiconError& e) {
    return fail(kExitInvalid, e.what());
  }
  if (args.workers == 0) return fail(kExitInvalid, "--workers must be at least 1");

  MatcherConfig cfg;
  cfg.gerund_filter = args.gerund_filter;
  const Matcher matcher(ls, cfg);
  const fs::path summary_path = args.summary.empty() ? summary_path_for(args.out) : fs::path(args.summary);

  try {
    CorpusReader reader(args.corpus, args.lenient);
    MatchWriter writer(args.out);
    ScanOptions options;
    options.workers = args.workers;
    const ScanSummary summary = scan_stream([&] { return reader.next(); }, matcher, options,
                                            [&](const PostRecord& post, const std::vector<HateMatch>& matches) {
                                              for (const auto& m : matches) writer.write(m, post.text);
                                            });
    writer.close();

    std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
    out << to_json(summary).dump(2) << '\n';
    if (!out) return fail(kExitIo, summary_path.string() + ": write failed");

    std::cout << "matched " << summary.matched_posts << "/" << summary.total_posts << " posts, " << writer.written()
              << " matches\n";
    if (reader.skipped() > 0) std::cerr << "hatescan: skipped " << reader.skipped() << " malformed line(s)\n";
  } catch (const CorpusError& e) {
    return corpus_failure(e);
  } catch (const WriteError& e) {
    return fail(kExitIo, std::string(e.what()) + " after " + std::to_string(e.written()) + " matches");
  }
  return kExitOk;
}

struct ReportArgs {
  std::string matches;
  std::string summary;
  std::string out;
  std::size_t top = 10;
};

int cmd_report(const ReportArgs& args) {
  if (args.top == 0) return fail(kExitInvalid, "--top must be at least 1");
  ScanSummary recount;
  try {
    recount = recount_match_file(args.matches);
  } catch (const CorpusError& e) {
    return corpus_failure(e);
  }

  ScanSummary summary = recount;
  const fs::path summary_path = args.summary.empty() ? summary_path_for(args.matches) : fs::path(args.summary);
  if (!args.summary.empty() || fs::exists(summary_path)) {
    std::ifstream in(summary_path, std::ios::binary);
    if (!in) return fail(kExitIo, summary_path.string() + ": cannot open summary file");
    try {
      summary = summary_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      return fail(kExitInvalid, summary_path.string() + ": " + e.what());
    }
    ScanSummary comparable = summary;
    comparable.total_posts = recount.total_posts;
    if (!(comparable == recount)) {
      return fail(kExitInvalid, summary_path.string() + ": summary does not match " + args.matches);
    }
  }

  const nlohmann::json report = build_report(summary, args.top);
  const fs::path out_path = args.out.empty() ? fs::path(args.matches + ".report.json") : fs::path(args.out);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << report.dump(2) << '\n';
  if (!out) return fail(kExitIo, out_path.string() + ": write failed");

  std::cout << render_text(summary, args.top);
  return kExitOk;
}

struct SampleArgs {
  std::string matches;
  std::size_t n = 100;
  std::uint64_t seed = 1;
};

int cmd_sample(const SampleArgs& args) {
  if (args.n == 0) return fail(kExitInvalid, "--n must be at least 1");
  AuditSample sample;
  try {
    sample = sample_match_file(args.matches, args.n, args.seed);
  } catch (const CorpusError& e) {
    return corpus_failure(e);
  }
  if (sample.population == 0) return fail(kExitInvalid, args.matches + ": no matches to sample");
  if (args.n > sample.population) {
    std::cerr << "hatescan: warning: requested " << args.n << " samples but only " << sample.population
              << " matches exist; returning all of them\n";
  }
  std::cout << "postId\texpression\ttarget\tcategory\ttext\n";
  for (const auto& rec : sample.records) {
    const auto& m = rec.match;
    std::cout << m.post_id << '\t' << m.expression << '\t' << m.target << '\t' << category_name(m.category) << '\t'
              << rec.text << '\n';
  }
  return kExitOk;
}

struct SynthArgs {
  std::string lexicons = HATESCAN_DEFAULT_LEXICONS;
  std::string out;
  oracle::SynthSpec spec;
};

int cmd_synth(const SynthArgs& args) {
  try {
    args.spec.validate();
  } catch (const std::invalid_argument& e) {
    return fail(kExitInvalid, e.what());
  }
  LexiconSet ls;
  try {
    ls = load_lexicons(fs::path(args.lexicons));
  } catch (const LexiconError& e) {
    return fail(kExitInvalid, e.what());
  }
  std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
  if (!out) return fail(kExitIo, args.out + ": cannot open for writing");
  oracle::CorpusGenerator gen(ls, args.spec);
  std::size_t written = 0;
  while (auto rec = gen.next()) {
    out << oracle::synth_to_json(*rec).dump() << '\n';
    ++written;
  }
  if (!out) return fail(kExitIo, args.out + ": write failed");
  std::cout << "wrote " << written << " posts to " << args.out << '\n';
  return kExitOk;
}

struct LexiconCheckArgs {
  std::string lexicons = HATESCAN_DEFAULT_LEXICONS;
  int threshold = kDefaultThreshold;
};

int cmd_lexicon_check(const LexiconCheckArgs& args) {
  LexiconSet ls;
  try {
    ls = load_lexicons(fs::path(args.lexicons), args.threshold);
  } catch (const LexiconError& e) {
    return fail(kExitInvalid, e.what());
  }
  const auto paths = LexiconPaths::in_directory(args.lexicons);
  auto row = [](const fs::path& p, std::size_t n) {
    std::cout << p.filename().string() << '\t' << n << '\n';
  };
  row(paths.subjects, ls.subjects.size());
  row(paths.negators, ls.negators.size());
  row(paths.intensifiers, ls.intensifiers.size());
  row(paths.intents, ls.intents.size());
  row(paths.exclusions, ls.exclusions.size());
  row(paths.scored_terms, ls.scored_terms.size());
  row(paths.category_map, ls.category_map.size());
  std::cout << "active terms (score > " << ls.threshold << ")\t" << active_terms(ls).size() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence-structure hate speech detection over post corpora"};
  app.require_subcommand(1);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Match a corpus and write matches plus a summary");
  scan_cmd->add_option("--lexicons", scan.lexicons, "Lexicon directory")->capture_default_str();
  scan_cmd->add_option("--corpus", scan.corpus, "Corpus JSON-Lines file")->required();
  scan_cmd->add_option("--out", scan.out, "Match JSON-Lines output")->required();
  scan_cmd->add_option("--summary", scan.summary, "Summary JSON output (default: <out>.summary.json)");
  scan_cmd->add_option("--threshold", scan.threshold, "Offensiveness threshold")->capture_default_str();
  scan_cmd->add_flag("--gerund-filter", scan.gerund_filter, "Reject '<word>ing people' targets");
  scan_cmd->add_option("--workers", scan.workers, "Worker threads")->capture_default_str();
  scan_cmd->add_flag("--lenient", scan.lenient, "Skip malformed corpus lines instead of failing");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Build ranked report tables from a match file");
  report_cmd->add_option("--matches", report.matches, "Match JSON-Lines file")->required();
  report_cmd->add_option("--summary", report.summary, "Summary JSON (default: <matches>.summary.json if present)");
  report_cmd->add_option("--out", report.out, "Report JSON output (default: <matches>.report.json)");
  report_cmd->add_option("--top", report.top, "Rows per table")->capture_default_str();

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a uniform audit sample of matches");
  sample_cmd->add_option("--matches", sample.matches, "Match JSON-Lines file")->required();
  sample_cmd->add_option("--n", sample.n, "Sample size")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Random seed")->capture_default_str();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
  synth_cmd->add_option("--lexicons", synth.lexicons, "Lexicon directory")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Ground-truth JSON-Lines output")->required();
  synth_cmd->add_option("--n", synth.spec.n_posts, "Number of posts")->capture_default_str();
  synth_cmd->add_option("--positive-rate", synth.spec.positive_rate, "Share of grammar positives")
      ->capture_default_str();
  synth_cmd->add_option("--near-miss-rate", synth.spec.near_miss_rate, "Share of near-miss negatives")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed, "Random seed")->capture_default_str();

  LexiconCheckArgs check;
  auto* check_cmd = app.add_subcommand("lexicon-check", "Validate a lexicon directory");
  check_cmd->add_option("--lexicons", check.lexicons, "Lexicon directory")->capture_default_str();
  check_cmd->add_option("--threshold", check.threshold, "Offensiveness threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*scan_cmd) return cmd_scan(scan);
  if (*report_cmd) return cmd_report(report);
  if (*sample_cmd) return cmd_sample(sample);
  if (*synth_cmd) return cmd_synth(synth);
  if (*check_cmd) return cmd_lexicon_check(check);
  return kExitInvalid;
}
