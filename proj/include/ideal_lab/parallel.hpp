#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ideal_lab {

struct ExecPolicy {
  unsigned threads = 1;
};

/// Runs body(chunk, begin, end) over [0, n) split into contiguous chunks.
/// Chunk boundaries depend only on n and the chunk count, so callers that
/// merge per-chunk results in chunk order get thread-count independent output.
template <typename Body>
void parallel_chunks(std::size_t n, const ExecPolicy& policy, std::size_t chunks, Body&& body) {
  if (n == 0) return;
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  const std::size_t per = (n + chunks - 1) / chunks;
  const unsigned workers = std::max(1u, std::min<unsigned>(policy.threads, static_cast<unsigned>(chunks)));

  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t b = c * per;
      if (b >= n) break;
      body(c, b, std::min(n, b + per));
    }
    return;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) {
          const std::size_t b = c * per;
          if (b >= n) break;
          body(c, b, std::min(n, b + per));
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ideal_lab
