#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hatescan/matcher.hpp"
#include "hatescan/post.hpp"

namespace hatescan {

/// Malformed record or unreadable file. `line` is 1-based, 0 for file-level
/// failures.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::string file, std::size_t line, const std::string& reason)
      : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + reason),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Output failure. `written` records how many matches reached the file.
class WriteError : public std::runtime_error {
 public:
  WriteError(const std::string& what, std::size_t written) : std::runtime_error(what), written_(written) {}
  std::size_t written() const noexcept { return written_; }

 private:
  std::size_t written_;
};

namespace detail {

inline const nlohmann::json* optional_field(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

}  // namespace detail

/// Parses one corpus line. Required: `id` (string or integer) and non-empty
/// `text`. Optional: `source`, `timestamp` (integer seconds), `location`.
/// Unknown fields are ignored. Throws std::invalid_argument with a reason.
inline PostRecord parse_post(std::string_view line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw std::invalid_argument("record is not a JSON object");
  PostRecord post;
  const auto* id = detail::optional_field(obj, "id");
  if (!id) throw std::invalid_argument("missing \"id\"");
  if (id->is_string()) {
    post.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    post.id = id->dump();
  } else {
    throw std::invalid_argument("\"id\" must be a string or integer");
  }
  if (post.id.empty()) throw std::invalid_argument("empty \"id\"");
  const auto* text = detail::optional_field(obj, "text");
  if (!text) throw std::invalid_argument("missing \"text\"");
  if (!text->is_string()) throw std::invalid_argument("\"text\" must be a string");
  post.text = text->get<std::string>();
  if (post.text.empty()) throw std::invalid_argument("empty \"text\"");
  if (const auto* v = detail::optional_field(obj, "source")) {
    if (!v->is_string()) throw std::invalid_argument("\"source\" must be a string");
    post.source = v->get<std::string>();
  }
  if (const auto* v = detail::optional_field(obj, "timestamp")) {
    if (!v->is_number_integer()) throw std::invalid_argument("\"timestamp\" must be an integer");
    post.timestamp = v->get<std::int64_t>();
  }
  if (const auto* v = detail::optional_field(obj, "location")) {
    if (!v->is_string()) throw std::invalid_argument("\"location\" must be a string");
    post.location = v->get<std::string>();
  }
  return post;
}

inline nlohmann::json post_to_json(const PostRecord& post) {
  nlohmann::json obj = {{"id", post.id}, {"text", post.text}};
  if (post.source) obj["source"] = *post.source;
  if (post.timestamp) obj["timestamp"] = *post.timestamp;
  if (post.location) obj["location"] = *post.location;
  return obj;
}

/// Streams PostRecords from a JSON-Lines file, one record in memory at a
/// time. In lenient mode malformed lines are counted and skipped instead
/// of raising CorpusError.
class CorpusReader {
 public:
  explicit CorpusReader(const std::filesystem::path& path, bool lenient = false)
      : path_(path.string()), in_(path, std::ios::binary), lenient_(lenient) {
    if (!in_) throw CorpusError(path_, 0, "cannot open corpus file");
  }

  std::optional<PostRecord> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        return parse_post(line);
      } catch (const std::invalid_argument& e) {
        if (!lenient_) throw CorpusError(path_, line_no_, e.what());
        ++skipped_;
      }
    }
    if (in_.bad()) throw CorpusError(path_, line_no_, "read failure");
    return std::nullopt;
  }

  std::size_t skipped() const noexcept { return skipped_; }
  std::size_t line() const noexcept { return line_no_; }

 private:
  std::string path_;
  std::ifstream in_;
  bool lenient_;
  std::size_t line_no_ = 0;
  std::size_t skipped_ = 0;
};

/// Reads a whole corpus into memory. Convenience for tests and small files.
inline std::vector<PostRecord> read_corpus(const std::filesystem::path& path, bool lenient = false,
                                           std::size_t* skipped = nullptr) {
  CorpusReader reader(path, lenient);
  std::vector<PostRecord> posts;
  while (auto post = reader.next()) posts.push_back(std::move(*post));
  if (skipped) *skipped = reader.skipped();
  return posts;
}

/// A match as stored in a match file. `text` carries the post body so audit
/// samples can be reviewed without the corpus; it may be empty.
struct MatchRecord {
  HateMatch match;
  std::string text;

  bool operator==(const MatchRecord&) const = default;
};

inline nlohmann::json match_to_json(const HateMatch& m, std::string_view text = {}) {
  nlohmann::json obj = {
      {"postId", m.post_id},
      {"expression", m.expression},
      {"target", m.target},
      {"template", template_name(m.target_template)},
      {"category", category_name(m.category)},
      {"labeled", m.labeled},
      {"span", {m.span_begin, m.span_end}},
  };
  if (!text.empty()) obj["text"] = text;
  return obj;
}

/// Inverse of match_to_json. Throws std::invalid_argument.
inline MatchRecord parse_match(std::string_view line) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  try {
    MatchRecord rec;
    HateMatch& m = rec.match;
    m.post_id = obj.at("postId").get<std::string>();
    m.expression = obj.at("expression").get<std::string>();
    m.target = obj.at("target").get<std::string>();
    const auto tmpl = parse_template(obj.at("template").get<std::string>());
    if (!tmpl) throw std::invalid_argument("unknown template");
    m.target_template = *tmpl;
    const auto cat = parse_category(obj.at("category").get<std::string>());
    if (!cat) throw std::invalid_argument("unknown category");
    m.category = *cat;
    m.labeled = obj.value("labeled", false);
    const auto& span = obj.at("span");
    if (!span.is_array() || span.size() != 2) throw std::invalid_argument("\"span\" must be [begin, end]");
    m.span_begin = span[0].get<std::size_t>();
    m.span_end = span[1].get<std::size_t>();
    if (m.post_id.empty() || m.expression.empty() || m.target.empty() || m.span_end <= m.span_begin) {
      throw std::invalid_argument("empty field or inverted span");
    }
    if (const auto* t = detail::optional_field(obj, "text")) rec.text = t->get<std::string>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad match record: ") + e.what());
  }
}

/// Single-owner JSON-Lines match writer.
class MatchWriter {
 public:
  explicit MatchWriter(const std::filesystem::path& path)
      : path_(path.string()), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw WriteError(path_ + ": cannot open for writing", 0);
  }

  void write(const HateMatch& m, std::string_view text = {}) {
    out_ << match_to_json(m, text).dump() << '\n';
    if (!out_) throw WriteError(path_ + ": write failed", written_);
    ++written_;
  }

  void close() {
    out_.flush();
    if (!out_) throw WriteError(path_ + ": flush failed", written_);
    out_.close();
  }

  std::size_t written() const noexcept { return written_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t written_ = 0;
};

/// Writes one record per match and returns the count written.
template <class Range>
std::size_t write_matches(const Range& matches, const std::filesystem::path& path) {
  MatchWriter writer(path);
  for (const HateMatch& m : matches) writer.write(m);
  writer.close();
  return writer.written();
}

/// Streaming reader for match files.
class MatchReader {
 public:
  explicit MatchReader(const std::filesystem::path& path) : path_(path.string()), in_(path, std::ios::binary) {
    if (!in_) throw CorpusError(path_, 0, "cannot open match file");
  }

  std::optional<MatchRecord> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        return parse_match(line);
      } catch (const std::invalid_argument& e) {
        throw CorpusError(path_, line_no_, e.what());
      }
    }
    return std::nullopt;
  }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

inline std::vector<MatchRecord> read_matches(const std::filesystem::path& path) {
  MatchReader reader(path);
  std::vector<MatchRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  return out;
}

}  // namespace hatescan
