#include "satake/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace satake {

namespace {
std::atomic<unsigned> g_threads{1};
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::add(const CompensatedSum& other) {
  add(other.sum_);
  add(other.comp_);
}

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }
unsigned thread_count() { return g_threads.load(); }

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  const std::size_t workers = std::min<std::size_t>(thread_count(), chunks);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunkSize;
    body(begin, std::min(n, begin + kChunkSize));
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
    });
  }
}

double chunked_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<CompensatedSum> partial(chunks);
  parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
    CompensatedSum acc;
    for (std::size_t i = begin; i < end; ++i) acc.add(term(i));
    partial[begin / kChunkSize] = acc;
  });
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

}  // namespace satake
