#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace debias {

// splitmix64 finalizer, used both as a PRNG step and as a seed mixer.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent sub-seed from (base, a, b). Every random decision in
// the library draws from a stream keyed this way, so results do not depend on
// scheduling or worker count.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = splitmix64(base ^ (0x9e3779b97f4a7c15ULL * (a + 1)));
  return splitmix64(s ^ (0xd1b54a32d192ed03ULL * (b + 1)));
}

// xoshiro256** with an explicit, self-contained set of variate transforms.
// The standard library distributions are implementation-defined, which would
// break the byte-identical reproducibility contract across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
      sm = splitmix64(sm);
      word = sm;
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1], safe as a log() argument.
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Marsaglia polar method with one cached variate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double exponential() { return -std::log(uniform_pos()); }

  double laplace(double scale) {
    const double u = uniform() - 0.5;
    return (u < 0 ? scale : -scale) * std::log(1.0 - 2.0 * std::abs(u));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Partially shuffles `index` so its first `k` entries are a uniform draw
// without replacement. Prefixes of the result are nested by construction.
inline void partial_shuffle(std::vector<std::uint32_t>& index, std::size_t k, Rng& rng) {
  const std::size_t n = index.size();
  if (k > n) k = n;
  for (std::size_t i = 0; i + 1 < n && i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
    std::swap(index[i], index[j]);
  }
}

inline std::vector<std::uint32_t> identity_index(std::size_t n) {
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  return idx;
}

}  // namespace debias
