#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mevd {

inline unsigned default_threads() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

// Runs fn(chunk, begin, end) over [0, total) split into fixed chunks and
// returns the per-chunk results in chunk order. Chunk boundaries depend only
// on `chunk_size`, never on the thread count.
template <class T, class Fn>
std::vector<T> map_chunks(std::uint64_t total, std::uint64_t chunk_size, unsigned threads, Fn fn) {
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
  std::vector<T> out(chunks);
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

  auto run = [&](std::uint64_t c) {
    std::uint64_t begin = c * chunk_size;
    std::uint64_t end = std::min(total, begin + chunk_size);
    out[c] = fn(c, begin, end);
  };
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run(c);
    return out;
  }

  std::mutex lock;
  std::uint64_t next = 0;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t c;
        {
          std::lock_guard<std::mutex> g(lock);
          if (next >= chunks || failure) return;
          c = next++;
        }
        try {
          run(c);
        } catch (...) {
          std::lock_guard<std::mutex> g(lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace mevd
