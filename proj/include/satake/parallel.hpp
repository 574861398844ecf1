#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace satake {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  void add(const CompensatedSum& other);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Worker count used by the data-parallel kernels. Results never depend on
/// this value: work is split into fixed-size chunks and reduced in order.
void set_thread_count(unsigned n);
unsigned thread_count();

inline constexpr std::size_t kChunkSize = 1 << 14;

/// Runs body(begin, end) over [0, n) in fixed chunks across the configured
/// workers. Chunks must write disjoint outputs.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of term(i) for i in [0, n): compensated within each chunk, chunk
/// partials combined in index order.
double chunked_sum(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace satake
