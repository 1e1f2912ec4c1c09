#pragma once

#include "hatescan/analytics.hpp"
#include "hatescan/category.hpp"
#include "hatescan/corpus_io.hpp"
#include "hatescan/default_data.hpp"
#include "hatescan/lexicon.hpp"
#include "hatescan/matcher.hpp"
#include "hatescan/normalize.hpp"
#include "hatescan/post.hpp"
#include "hatescan/report.hpp"
#include "hatescan/scan.hpp"
