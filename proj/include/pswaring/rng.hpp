#pragma once

#include <complex>
#include <cstdint>

namespace pswaring {

// Deterministic splitmix64 stream. All randomness flows from one root seed;
// job i draws from stream(root, i), so results are independent of thread
// count and scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t root, std::uint64_t job) {
    Rng r(root + 0x9E3779B97F4A7C15ULL * (job + 1));
    r.next();
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1), 53 usable bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1,1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  // Uniform on the closed complex unit disc (rejection from the square).
  std::complex<double> unit_disc() {
    for (;;) {
      const double re = symmetric();
      const double im = symmetric();
      if (re * re + im * im <= 1.0) return {re, im};
    }
  }

  // Standardish complex gaussian (Box-Muller), used for initializations.
  std::complex<double> gaussian() {
    double u = unit();
    while (u == 0.0) u = unit();
    const double v = unit();
    const double rad = std::sqrt(-2.0 * std::log(u));
    constexpr double tau = 6.283185307179586476925286766559;
    return {rad * std::cos(tau * v), rad * std::sin(tau * v)};
  }

  // Uniform in [1, p-1]; chart-interior field element.
  std::uint32_t field_nonzero(std::uint64_t p) {
    return static_cast<std::uint32_t>(next() % (p - 1) + 1);
  }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace pswaring
