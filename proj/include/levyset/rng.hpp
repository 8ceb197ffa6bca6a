#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace levyset {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// The triple (seed, stream, counter) fully determines every output, so
// distinct streams can be drawn concurrently and replayed exactly.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() {
    if (buffered_ == 0) refill();
    return buffer_[--buffered_];
  }

  // Uniform on (0,1), strictly inside the open interval.
  double next_unit() {
    const std::uint64_t bits = next_u64() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double next_exponential() { return -std::log(next_unit()); }

  bool next_sign() { return (next_u64() & 1u) != 0; }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  long long next_poisson(double mean);

  // Symmetric alpha-stable variate with characteristic function
  // exp(-|u|^alpha), via the Chambers-Mallows-Stuck transform.
  double next_stable_symmetric(double alpha) {
    const double v = 3.14159265358979323846 * (next_unit() - 0.5);
    const double e = next_exponential();
    if (alpha == 1.0) return std::tan(v);
    const double cv = std::cos(v);
    const double t = std::sin(alpha * v) / std::pow(cv, 1.0 / alpha);
    const double s = std::pow(std::cos((1.0 - alpha) * v) / e, (1.0 - alpha) / alpha);
    return t * s;
  }

 private:
  static void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mul_hi_lo(0xD2511F53u, c0, hi0, lo0);
      mul_hi_lo(0xCD9E8D57u, c2, hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    ++counter_;
    buffer_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
    buffer_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
    buffered_ = 2;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Poisson sampling: sequential inversion for small means, Hoermann's PTRD
// transformed rejection for large ones. Both consume the stream
// deterministically for a fixed sequence of calls.
inline long long CounterRng::next_poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("next_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double l = std::exp(-mean);
    long long k = 0;
    double p = next_unit();
    while (p > l) {
      p *= next_unit();
      ++k;
    }
    return k;
  }
  // PTRS transformed rejection (Hoermann 1993), valid for mean >= 10.
  const double smu = std::sqrt(mean);
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = next_unit() - 0.5;
    const double v = next_unit();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * log_mean - std::lgamma(k + 1.0)) {
      return static_cast<long long>(k);
    }
  }
}

}  // namespace levyset
