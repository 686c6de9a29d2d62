#include "stabpair/energy/sampling.hpp"

#include "stabpair/core/errors.hpp"
#include "stabpair/core/group.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace stabpair {

SampleSet::SampleSet(int dim, int count, std::uint64_t seed) : dim_(dim), count_(count), seed_(seed) {
  require_dims(dim >= 1, "sample dimension must be positive");
  require(count >= 1, "need at least one sample");
  data_.resize(static_cast<std::size_t>(dim) * count);
  const int chunks = (count + kSampleChunk - 1) / kSampleChunk;
  for (int c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    std::normal_distribution<double> g(0.0, 1.0);
    const int end = std::min(count, (c + 1) * kSampleChunk);
    for (int i = c * kSampleChunk; i < end; ++i) {
      Complex* z = data_.data() + static_cast<std::size_t>(i) * dim;
      double norm = 0.0;
      do {
        norm = 0.0;
        for (int k = 0; k < dim; ++k) {
          double re = g(rng), im = g(rng);
          z[k] = Complex(re, im);
          norm += re * re + im * im;
        }
      } while (norm == 0.0);
      const double s = 1.0 / std::sqrt(norm);
      for (int k = 0; k < dim; ++k) z[k] *= s;
    }
  }
}

void for_each_chunk(int count, int threads, const std::function<void(int, int, int)>& body) {
  const int chunks = (count + kSampleChunk - 1) / kSampleChunk;
  auto run = [&](int c) { body(c * kSampleChunk, std::min(count, (c + 1) * kSampleChunk), c); };
  if (threads <= 1 || chunks <= 1) {
    for (int c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::vector<std::thread> pool;
  const int workers = std::min(threads, chunks);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int c = w; c < chunks; c += workers) run(c);
    });
  for (auto& t : pool) t.join();
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace stabpair
