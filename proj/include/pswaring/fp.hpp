#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pswaring/bigint.hpp"

namespace pswaring {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;   // 2^31 - 1
inline constexpr std::uint64_t kFallbackPrime = 2147483629ULL;  // next prime down

// Prime field F_p for a 31-bit prime. Elements live in [0, p) as uint32;
// products fit a uint64.
class FpField {
 public:
  using Scalar = std::uint32_t;

  explicit FpField(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p < 3 || p >= (1ULL << 31)) throw std::invalid_argument("FpField: prime out of range");
  }

  std::uint64_t prime() const { return p_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  bool is_zero(Scalar a) const { return a == 0; }

  Scalar add(Scalar a, Scalar b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return Scalar(s);
  }
  Scalar sub(Scalar a, Scalar b) const {
    return a >= b ? a - b : Scalar(std::uint64_t(a) + p_ - b);
  }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : Scalar(p_ - a); }
  Scalar mul(Scalar a, Scalar b) const { return Scalar(std::uint64_t(a) * b % p_); }

  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1, base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Scalar inv(Scalar a) const {
    if (a == 0) throw std::domain_error("FpField: inverse of zero");
    return pow(a, p_ - 2);
  }

  Scalar from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return Scalar(m);
  }

  Scalar from_bigint(const BigInt& v) const {
    BigInt m = v % BigInt(p_);
    if (m < 0) m += BigInt(p_);
    return m.convert_to<Scalar>();
  }

 private:
  std::uint64_t p_;
};

// Dense row-major matrix over F_p.
struct FpMatrix {
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> a;

  FpMatrix() = default;
  FpMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

  std::uint32_t& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  std::uint32_t at(int i, int j) const { return a[std::size_t(i) * cols + j]; }
  std::uint32_t* row(int i) { return a.data() + std::size_t(i) * cols; }
  const std::uint32_t* row(int i) const { return a.data() + std::size_t(i) * cols; }
};

// Production rank kernel: row echelon with the elimination update loop
// parallelized over rows (OpenMP). Pivoting is deterministic (first nonzero
// in column order), so the result never depends on thread count.
int fp_rank(const FpField& F, FpMatrix m);

// The same kernel with the parallel update loop disabled; the benchmark
// baseline for the threading speedup.
int fp_rank_single_thread(const FpField& F, FpMatrix m);

// Independent textbook elimination (per-row pivot division, no
// normalization pass). Correctness reference for tests.
int fp_rank_reference(const FpField& F, FpMatrix m);

// Basis of the right null space {x : m x = 0}, from the reduced echelon form.
// Each basis vector has length m.cols.
std::vector<std::vector<std::uint32_t>> fp_nullspace(const FpField& F, FpMatrix m);

// Exact rank over Q of an integer matrix (entries as signed 64-bit).
// Small systems only; throws beyond the guard.
int rational_rank(const std::vector<std::vector<long long>>& m, int size_guard = 500);

}  // namespace pswaring
