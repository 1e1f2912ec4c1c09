#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace hatescan {

/// One social-media post as read from a corpus file.
struct PostRecord {
  std::string id;
  std::string text;
  std::optional<std::string> source;
  std::optional<std::int64_t> timestamp;  // epoch seconds
  std::optional<std::string> location;

  bool operator==(const PostRecord&) const = default;
};

}  // namespace hatescan
