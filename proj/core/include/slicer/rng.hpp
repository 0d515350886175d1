#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace slicer {

// Deterministic random source. mt19937_64 supplies the bits; the
// distributions are spelled out here instead of using <random>'s, whose
// output is implementation-defined and would break run reproducibility
// across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling keeps it
  // exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return r % bound;
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1].
  double unit_open_closed() { return 1.0 - unit(); }

  bool bernoulli(double p) { return unit() < p; }

  double exponential(double mean) { return -mean * std::log(unit_open_closed()); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n), Floyd's algorithm. Order is the draw
  // order, not sorted.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

private:
  std::mt19937_64 gen_;
};

inline std::vector<std::size_t> Rng::sample_indices(std::size_t n, std::size_t k) {
  if (k > n) k = n;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = n - k; i < n; ++i) {
    std::size_t j = static_cast<std::size_t>(below(i + 1));
    bool seen = false;
    for (std::size_t s : out) {
      if (s == j) {
        seen = true;
        break;
      }
    }
    out.push_back(seen ? i : j);
  }
  return out;
}

}  // namespace slicer
