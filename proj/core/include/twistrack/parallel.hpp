#ifndef TWISTRACK_PARALLEL_HPP
#define TWISTRACK_PARALLEL_HPP

#include <functional>
#include <thread>
#include <vector>

namespace twr {

// Deterministic fork-join over an index range: the range is cut into one
// contiguous chunk per worker; results must be merged by the caller in chunk
// order so output is independent of the worker count.
inline void parallel_chunks(size_t total, int workers,
                            const std::function<void(size_t, size_t, int)>& fn) {
  if (workers <= 1 || total < 2048) {
    fn(0, total, 0);
    return;
  }
  size_t per = (total + workers - 1) / workers;
  std::vector<std::thread> ts;
  for (int w = 0; w < workers; ++w) {
    size_t b = per * w;
    size_t e = std::min(total, b + per);
    if (b >= e) break;
    ts.emplace_back(fn, b, e, w);
  }
  for (auto& t : ts) t.join();
}

}  // namespace twr

#endif
