#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hatescan/analytics.hpp"
#include "hatescan/matcher.hpp"
#include "hatescan/post.hpp"

namespace hatescan {

struct ScanOptions {
  std::size_t workers = 1;
  std::size_t batch_per_worker = 2048;
};

/// Matches every post produced by `next_post` (a callable returning
/// std::optional<PostRecord>) and hands each post with its matches to
/// `on_post` in input order.
///
/// Posts are read in batches of workers * batch_per_worker; each worker
/// matches a contiguous slice into a private summary and the summaries are
/// merged at the end, so the result does not depend on the worker count.
/// Memory is bounded by one batch.
template <class NextPost, class OnPost>
ScanSummary scan_stream(NextPost&& next_post, const Matcher& matcher, const ScanOptions& options, OnPost&& on_post) {
  if (options.workers == 0) throw std::invalid_argument("worker count must be at least 1");
  const std::size_t workers = options.workers;
  const std::size_t batch_cap = workers * std::max<std::size_t>(1, options.batch_per_worker);

  std::vector<ScanSummary> partial(workers);
  std::vector<PostRecord> batch;
  std::vector<std::vector<HateMatch>> results;
  batch.reserve(batch_cap);
  bool exhausted = false;
  while (!exhausted) {
    batch.clear();
    while (batch.size() < batch_cap) {
      std::optional<PostRecord> post = next_post();
      if (!post) {
        exhausted = true;
        break;
      }
      batch.push_back(std::move(*post));
    }
    if (batch.empty()) break;
    results.assign(batch.size(), {});

    auto run_slice = [&](std::size_t w, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        results[i] = matcher.match(batch[i]);
        partial[w].add_post(results[i]);
      }
    };
    if (workers == 1) {
      run_slice(0, 0, batch.size());
    } else {
      const std::size_t slice = (batch.size() + workers - 1) / workers;
      std::vector<std::jthread> threads;
      threads.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(batch.size(), w * slice);
        const std::size_t end = std::min(batch.size(), begin + slice);
        if (begin == end) break;
        threads.emplace_back(run_slice, w, begin, end);
      }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) on_post(batch[i], results[i]);
  }

  ScanSummary total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace hatescan
