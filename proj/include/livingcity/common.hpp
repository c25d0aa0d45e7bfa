#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace livingcity {

// Money is integer cents everywhere state is kept, so conservation audits
// can use exact equality. The balance math layer works in real-valued
// currency units and converts at the boundary.
using Cents = std::int64_t;
using Tick = std::int64_t;
using CityId = std::int32_t;
using Seq = std::uint64_t;

inline constexpr int kStageCap = 12;
inline constexpr int kCityLevelCap = 8;
inline constexpr Tick kTicksPerDay = 86'400;
inline constexpr Tick kTicksPerWeek = 7 * kTicksPerDay;

inline Cents to_cents(double currency) {
  return static_cast<Cents>(std::llround(currency * 100.0));
}

inline double to_currency(Cents cents) { return static_cast<double>(cents) / 100.0; }

// FNV-1a, used for state digests and log chain hashes. Not cryptographic;
// it only has to be stable across platforms and catch divergence loudly.
inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

struct Fnv1a {
  std::uint64_t h = kFnvOffset;

  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h ^= c;
      h *= kFnvPrime;
    }
  }
  void update_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<unsigned char>(v >> (8 * i));
      h *= kFnvPrime;
    }
  }
  std::uint64_t digest() const { return h; }
};

inline std::uint64_t fnv1a(std::string_view bytes) {
  Fnv1a f;
  f.update(bytes);
  return f.digest();
}

// Deterministic RNG helpers. mt19937_64's output sequence is pinned by the
// standard, but std::uniform_int_distribution is not, so the mapping from
// raw output to ranges is done by hand here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n) via rejection sampling, bias-free.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::range: lo > hi");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform in [0, 1) with 53 bits of entropy.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw std::invalid_argument("Rng::pick: empty vector");
    return v[static_cast<std::size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace livingcity
