#pragma once

#include <sstream>
#include <string_view>

#include "hatescan/lexicon.hpp"

namespace hatescan {

/// Contents of data/lexicons/categories.tsv, compiled in so the taxonomy is
/// available without a lexicon directory. A unit test keeps the two in sync.
inline constexpr std::string_view kDefaultCategoryMapTsv = R"tsv(
target	category
# Manually labeled hate targets (partial reconstruction; unlabeled targets
# fall back to Other).
nigga	Race
black people	Race
white people	Race
insecure people	Behavior
sensitive people	Behavior
obese people	Physical
beautiful people	Physical
gay people	Sexual orientation
straight people	Sexual orientation
ghetto people	Class
rich people	Class
pregnant people	Gender
cunt	Gender
sexist people	Gender
chinese people	Ethnicity
indian people	Ethnicity
paki	Ethnicity
retard	Disability
bipolar people	Disability
religious people	Religion
jewish people	Religion
drunk people	Other
shallow people	Other
# Inferred: frequent targets with no explicit label. Placed by the category
# definitions (behavioral traits vs. physical traits vs. group membership);
# review before relying on them.
nigger	Race
fake people	Behavior
stupid people	Behavior
rude people	Behavior
negative people	Behavior
ignorant people	Behavior
ungrateful people	Behavior
racist people	Behavior
fat people	Physical
old people	Physical
mexican people	Ethnicity
)tsv";

/// Labeled targets recovered from the published examples and top-target
/// lists. A partial reconstruction of the full manual labeling.
inline CategoryMap default_category_map() {
  std::istringstream in{std::string(kDefaultCategoryMapTsv)};
  return parse_category_map(in, "<default category map>");
}

}  // namespace hatescan
