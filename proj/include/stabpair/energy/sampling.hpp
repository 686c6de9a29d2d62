#pragma once

#include "stabpair/core/scalar.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace stabpair {

/// Points of the unit sphere in C^dim, drawn as normalized standard complex Gaussians.
/// Chunk c of kSampleChunk points uses the stream derive_seed(seed, c), so the set
/// does not depend on the worker count.
class SampleSet {
 public:
  SampleSet(int dim, int count, std::uint64_t seed);

  int dim() const { return dim_; }
  int count() const { return count_; }
  std::uint64_t seed() const { return seed_; }
  const Complex* point(int i) const { return data_.data() + static_cast<std::size_t>(i) * dim_; }

 private:
  int dim_, count_;
  std::uint64_t seed_;
  std::vector<Complex> data_;
};

inline constexpr int kSampleChunk = 4096;

/// Runs body(begin, end, chunk) over fixed chunks of [0, count) on up to `threads` workers.
void for_each_chunk(int count, int threads, const std::function<void(int, int, int)>& body);

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0, comp_ = 0.0;
};

}  // namespace stabpair
