#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pswaring/format.hpp"
#include "pswaring/multipoly.hpp"

namespace pswaring {

// Shape of a double-point scheme: l free double points plus h double points
// constrained to a divisor D of type (0,..,1,..,0), realized by pinning the
// divisor factor's coordinate to one shared random value. divisor_factor is
// an index in the normalized factor layout; -1 when h == 0.
struct SchemeShape {
  int free_points = 0;
  int divisor_points = 0;
  int divisor_factor = -1;
};

// A concrete instance of a scheme: actual point coordinates.
template <class Scalar>
struct DoublePoints {
  std::vector<Point<Scalar>> free_pts;
  std::vector<Point<Scalar>> div_pts;
  int divisor_factor = -1;

  std::vector<Point<Scalar>> all() const {
    auto out = free_pts;
    out.insert(out.end(), div_pts.begin(), div_pts.end());
    return out;
  }
};

using DoublePointsFp = DoublePoints<std::uint32_t>;
using DoublePointsC = DoublePoints<Cplx>;

template <class Field>
DoublePoints<typename Field::Scalar> random_scheme(const Field& f, const Format& fmt,
                                                   const SchemeShape& shape, Rng& rng);

// Interpolation matrix: per double point one value row plus one row per
// affine variable, (factor, coord) order; ncoeff columns.
FpMatrix assemble(const FpField& f, const MonomialBasis& basis, const DoublePointsFp& pts);
Eigen::MatrixXcd assemble(const MonomialBasis& basis, const DoublePointsC& pts);

enum class VerdictStatus { expected, deficient, exceeds };

const char* to_string(VerdictStatus s);

// Outcome of a dimension check. actual_dim >= expected_dim always: random
// points can only underestimate the rank, never overestimate it, so
// status == expected is a certificate and deficient is probabilistic.
struct Verdict {
  explicit Verdict(Format f) : format(std::move(f)) {}

  Format format;
  SchemeShape shape;
  long long ncoeff = 0;
  long long rows = 0;
  long long rank = 0;
  long long expected_dim = 0;
  long long actual_dim = 0;
  VerdictStatus status = VerdictStatus::expected;
  int trials_used = 0;
  std::vector<std::uint64_t> primes_used;
  std::string note;

  bool is_certificate() const { return status == VerdictStatus::expected; }
};

struct SysdimOptions {
  int trials = 3;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t fallback_prime = kFallbackPrime;
  std::uint64_t seed = 0;
};

// Dimension of the space of sections through the double-point scheme,
// computed as ncoeff - rank over F_p. Deficient outcomes are retried with
// fresh random points (second prime on the final trial) before being
// reported; an expected outcome short-circuits, so certificates are
// permanent under added trials.
Verdict sysdim(const Format& fmt, const SchemeShape& shape, const SysdimOptions& opt);

// Same trial loop, success when actual_dim <= max_dim (an upper bound on a
// random instance certifies the bound for the generic one).
Verdict sysdim_at_most(const Format& fmt, const SchemeShape& shape, long long max_dim,
                       const SysdimOptions& opt);

// Single-shot dimension at fixed points; used by tests and cross-checks.
Verdict sysdim_at(const Format& fmt, const DoublePointsFp& pts, std::uint64_t prime);

// Terracini verdict for the k-secant variety: rank of the system at k+1
// random double points vs min(ncoeff, (k+1)(sum_r + 1)).
struct SecantVerdict {
  explicit SecantVerdict(Format f) : verdict(std::move(f)) {}

  Verdict verdict;
  long long k = 0;
  long long expected_rank = 0;
  bool defective = false;
};

SecantVerdict secant_dim(const Format& fmt, long long k, const SysdimOptions& opt);

// Seed-reproducible pseudo-random element of the null space.
SectionC kernel_section(const Format& fmt, const DoublePointsC& pts, std::uint64_t seed,
                        int* kernel_dim = nullptr);
SectionFp kernel_section_fp(const FpField& f, const Format& fmt, const DoublePointsFp& pts,
                            std::uint64_t seed);

}  // namespace pswaring
