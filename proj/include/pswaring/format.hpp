#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pswaring/bigint.hpp"

namespace pswaring {

// Combinatorial signature (n, r_i, d_i) of the Segre-Veronese embedding of
// P^{r_1} x ... x P^{r_n} with multidegree d. When all r_i are equal the
// degrees are kept sorted ascending (the smallest-degree-first convention the
// secant and nef checks rely on); the construction order is recorded so
// callers that single out a factor (the P^1 carrying a divisor pencil) can
// still find it after normalization. Degree 0 is admitted for internal
// residual systems; the CLI grammar enforces d_i >= 1 on user input.
class Format {
 public:
  Format(std::vector<int> r, std::vector<int> d);

  // Parse/print the canonical flag form "r=1,1;d=4,5".
  static Format parse(const std::string& spec);
  std::string to_string() const;

  int factors() const { return int(r_.size()); }
  int r(int i) const { return r_[i]; }
  int d(int i) const { return d_[i]; }
  const std::vector<int>& r() const { return r_; }
  const std::vector<int>& d() const { return d_; }

  // Dimension of the product variety (= number of affine variables).
  int sum_r() const { return sum_r_; }

  bool all_r_equal() const;

  // Position, in the normalized layout, of the factor that sat at
  // construction index `orig`.
  int position_of(int orig) const;
  // Factor that was last at construction time (the distinguished P^1 in the
  // divisor-pencil setting).
  int original_last() const { return position_of(factors() - 1); }

  // Derived formats; both renormalize and retrack positions.
  Format with_degree_at(int factor, int new_degree) const;
  Format without_factor(int factor) const;

  BigInt ncoeff_big() const;
  // ncoeff as int, guarded against matrix-size blowups.
  int ncoeff() const;

  bool operator==(const Format& o) const { return r_ == o.r_ && d_ == o.d_; }

 private:
  std::vector<int> r_, d_;
  std::vector<int> orig_of_pos_;  // orig_of_pos_[i] = construction index of factor i
  int sum_r_ = 0;
};

BigInt binomial(long long a, long long b);
BigInt multinomial(int d, const std::vector<int>& parts);

BigInt ncoeff(const Format& f);

// Perfect-case k with ncoeff = (sum_r + 1)(k+1), k+1 >= 2; empty when the
// divisibility fails. Requires all r_i equal and sum_r >= 2.
std::optional<long long> perfect_k(const Format& f);

struct PerfectCase {
  enum class Nu { unique, multiple, unknown };
  Format format;
  long long k = 0;
  Nu nu_expected = Nu::unknown;
};

// All (d1,d2), 4 <= d1 <= d2 <= dmax, with (d1+1)(d2+1) = 3(k+1), on P^1 x P^1.
std::vector<PerfectCase> enumerate_corollary_two(int dmax);

// All (d1,d2,d3), 3 <= d1 <= d2 <= d3 <= dmax, with
// (d1+1)(d2+1)(d3+1) = 4(k+1) and k+1 <= (d3-2) * floor((d1+1)(d2+1)/3),
// on P^1 x P^1 x P^1.
std::vector<PerfectCase> enumerate_corollary_three(int dmax);

// Nef inequality -(r+1) + d_i (r+1)/d_1 >= 0 for all i, exact arithmetic.
// Requires all r_i equal; degrees are already ascending by normalization.
bool nef_check(const Format& f);

struct WeaklySchedule {
  long long s = 0;
  long long h0 = 0;
  long long t0 = 0;
  bool degree_ok = false;  // d_{n+1} >= t0 + 3
};

// Degeneration schedule for a format with n+1 factors whose construction-last
// factor is a P^1: h0 = floor(prod_{first n} C(r_i+d_i, r_i) / (sum r_i + 1)),
// t0 the unique integer with 1 <= s - t0 h0 <= h0.
WeaklySchedule weakly_schedule(const Format& f, long long s);

}  // namespace pswaring
