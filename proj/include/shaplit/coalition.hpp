#ifndef SHAPLIT_COALITION_HPP
#define SHAPLIT_COALITION_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shaplit {

// A subset of the players [0, n) held as a fixed-width bit pattern. Iteration
// over all 2^n coalitions is in ascending integer order of the bits.
struct Coalition {
  std::uint32_t bits = 0;
  int n = 0;

  Coalition() = default;
  Coalition(std::uint32_t bits, int n) : bits(bits), n(n) {}

  static Coalition empty(int n) { return Coalition(0, n); }
  static Coalition full(int n) { return Coalition(mask_all(n), n); }
  static std::uint32_t mask_all(int n) {
    return n >= 32 ? 0xffffffffu : ((std::uint32_t{1} << n) - 1u);
  }

  bool contains(int j) const { return (bits >> j) & 1u; }
  Coalition with(int j) const { return Coalition(bits | (std::uint32_t{1} << j), n); }
  Coalition without(int j) const { return Coalition(bits & ~(std::uint32_t{1} << j), n); }
  Coalition complement() const { return Coalition(~bits & mask_all(n), n); }
  int count() const { return std::popcount(bits); }
  bool is_empty() const { return bits == 0; }
  bool is_full() const { return bits == mask_all(n); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint32_t b = bits; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int j : members()) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
    return s + "}";
  }

  bool operator==(const Coalition&) const = default;
};

// The `packed`-th subset of [0, n) \ {j}, packed bits expanded to skip j.
// packed runs over [0, 2^(n-1)); expansion preserves ascending order.
inline Coalition subset_excluding(std::uint32_t packed, int n, int j) {
  if (j < 0 || j >= n) throw std::invalid_argument("subset_excluding: feature index out of range");
  const std::uint32_t low = packed & ((std::uint32_t{1} << j) - 1u);
  const std::uint32_t high = (packed >> j) << (j + 1);
  return Coalition(low | high, n);
}

}  // namespace shaplit

#endif
