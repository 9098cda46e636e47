#ifndef SHAPLIT_RNG_HPP
#define SHAPLIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace shaplit {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// A seeded random stream. Distribution sampling is hand-rolled (no
// std::*_distribution) so a given seed yields the same draw sequence on
// every standard library.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two uniforms per call.
  double gaussian() {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double gaussian(double mu, double sigma) { return mu + sigma * gaussian(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t k = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[k]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Derive an independent stream from a master seed and task identifiers, so
// parallel work is reproducible regardless of scheduling.
inline RngStream derive_stream(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t s = master ^ 0x5bf03635d1787d2fULL;
  (void)splitmix64(s);
  for (std::uint64_t id : ids) {
    s ^= splitmix64(s) + id;
    (void)splitmix64(s);
  }
  return RngStream(splitmix64(s));
}

inline RngStream derive_stream(std::uint64_t master, std::uint64_t a) {
  return derive_stream(master, {a});
}
inline RngStream derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return derive_stream(master, {a, b});
}
inline RngStream derive_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) {
  return derive_stream(master, {a, b, c});
}

}  // namespace shaplit

#endif
