#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace pilot {

/// Runs body(i) for i in [0, count) over contiguous chunks on hardware threads.
/// body must not throw and must only write state owned by index i.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 2048) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, (count + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
}

}  // namespace pilot
