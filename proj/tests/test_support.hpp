#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "hatescan/lexicon.hpp"

namespace hatescan::testing {

inline std::filesystem::path data_dir() { return HATESCAN_DATA_DIR; }
inline std::filesystem::path lexicon_dir() { return data_dir() / "lexicons"; }
inline std::filesystem::path curated_corpus() { return data_dir() / "fixtures" / "curated_corpus.jsonl"; }
inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(HATESCAN_FIXTURE_DIR) / name; }
inline std::string cli() { return HATESCAN_CLI; }

inline const LexiconSet& default_lexicons() {
  static const LexiconSet ls = load_lexicons(lexicon_dir());
  return ls;
}

/// Fresh scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("hatescan-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommandResult {
  int exit_code;
  std::string out;
  std::string err;
};

/// Runs a shell command, capturing stdout and stderr through temp files.
inline CommandResult run(const std::string& command) {
  TempDir tmp;
  const auto out = tmp / "stdout";
  const auto err = tmp / "stderr";
  const std::string full = command + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(full.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out), read_file(err)};
}

}  // namespace hatescan::testing
