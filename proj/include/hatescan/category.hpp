#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace hatescan {

/// Target classes used to label hate targets. `Other` is the fallback for
/// anything that has not been labeled.
enum class Category {
  Race,
  Behavior,
  Physical,
  SexualOrientation,
  Class,
  Gender,
  Ethnicity,
  Disability,
  Religion,
  Other,
};

inline constexpr std::array<Category, 10> kAllCategories = {
    Category::Race,      Category::Behavior,  Category::Physical, Category::SexualOrientation,
    Category::Class,     Category::Gender,    Category::Ethnicity, Category::Disability,
    Category::Religion,  Category::Other,
};

inline constexpr std::string_view category_name(Category c) noexcept {
  switch (c) {
    case Category::Race: return "Race";
    case Category::Behavior: return "Behavior";
    case Category::Physical: return "Physical";
    case Category::SexualOrientation: return "Sexual orientation";
    case Category::Class: return "Class";
    case Category::Gender: return "Gender";
    case Category::Ethnicity: return "Ethnicity";
    case Category::Disability: return "Disability";
    case Category::Religion: return "Religion";
    case Category::Other: return "Other";
  }
  return "Other";
}

/// Accepts the display name or any spelling that differs only in case,
/// spaces or underscores ("Sexual orientation", "SexualOrientation",
/// "sexual_orientation").
inline std::optional<Category> parse_category(std::string_view text) {
  auto squash = [](std::string_view s) {
    std::string out;
    for (char ch : s) {
      if (ch == ' ' || ch == '_' || ch == '-') continue;
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
  };
  const std::string key = squash(text);
  if (key.empty()) return std::nullopt;
  for (Category c : kAllCategories) {
    if (squash(category_name(c)) == key) return c;
  }
  return std::nullopt;
}

}  // namespace hatescan
