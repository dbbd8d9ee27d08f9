#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pswaring/bigint.hpp"
#include "pswaring/format.hpp"
#include "pswaring/fp.hpp"
#include "pswaring/rng.hpp"

namespace pswaring {

using Cplx = std::complex<double>;

// Scalar contexts sharing the FpField surface, so evaluation and elimination
// templates work over F_p, C and Q alike.
struct ComplexField {
  using Scalar = Cplx;
  Scalar zero() const { return {0.0, 0.0}; }
  Scalar one() const { return {1.0, 0.0}; }
  bool is_zero(const Scalar& a) const { return a == Scalar{0.0, 0.0}; }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar from_int(long long v) const { return {double(v), 0.0}; }
  Scalar from_bigint(const BigInt& v) const { return {v.convert_to<double>(), 0.0}; }
};

struct RationalField {
  using Scalar = BigRat;
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  bool is_zero(const Scalar& a) const { return a == 0; }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar from_int(long long v) const { return v; }
  Scalar from_bigint(const BigInt& v) const { return BigRat(v); }
};

// All exponent tuples of the given length summing to deg, lexicographically
// descending. The basis order below and the substitution expansion both hang
// off this enumeration.
std::vector<std::vector<int>> exponents_of_degree(int nvars, int deg);

// Canonical basis of global sections: factors in index order; within a factor
// the exponent tuples (e_0,...,e_r) with |e| = d in lexicographic descending
// order; the global index is mixed-radix with factor 0 most significant.
// This order is a file-format contract and must stay byte-stable.
class MonomialBasis {
 public:
  explicit MonomialBasis(Format fmt);

  const Format& format() const { return fmt_; }
  int size() const { return size_; }
  int factors() const { return fmt_.factors(); }
  int factor_size(int i) const { return int(monos_[i].size()); }
  const std::vector<int>& exponent(int factor, int idx) const { return monos_[factor][idx]; }

  void split(int global, std::span<int> per_factor) const;
  int join(std::span<const int> per_factor) const;

 private:
  Format fmt_;
  std::vector<std::vector<std::vector<int>>> monos_;
  std::vector<int> strides_;
  int size_ = 0;
};

// A point on the product, one affine coordinate vector per factor (length
// r_i; the last homogeneous coordinate of every factor is pinned to 1).
template <class Scalar>
using Point = std::vector<std::vector<Scalar>>;

using PointC = Point<Cplx>;
using PointFp = Point<std::uint32_t>;

template <class Field>
Point<typename Field::Scalar> random_point(const Field& f, const Format& fmt, Rng& rng);

// Per-factor tables of monomial values and first derivatives at a point.
template <class Field>
struct FactorTables {
  // val[i][m]: value of factor-i monomial m at the point.
  std::vector<std::vector<typename Field::Scalar>> val;
  // dval[i][j][m]: d/d(affine var j of factor i) of monomial m.
  std::vector<std::vector<std::vector<typename Field::Scalar>>> dval;
};

template <class Field>
FactorTables<Field> factor_tables(const Field& f, const MonomialBasis& basis,
                                  const Point<typename Field::Scalar>& pt,
                                  bool with_derivatives);

// Row of all monomial values at the point, basis order.
template <class Field>
std::vector<typename Field::Scalar> eval_monomial_row(const Field& f, const MonomialBasis& basis,
                                                      const Point<typename Field::Scalar>& pt);

// One row per affine variable, (factor, coord) order: values of
// d(monomial)/d(variable) at the point. Row-major, sum_r x ncoeff.
template <class Field>
std::vector<std::vector<typename Field::Scalar>> eval_partial_rows(
    const Field& f, const MonomialBasis& basis, const Point<typename Field::Scalar>& pt);

// Coefficients of scalar * l_1^{d_1} x ... x l_n^{d_n} in basis order; the
// multinomial weights are included so these coefficients are the partially
// symmetric tensor entries.
template <class Field>
std::vector<typename Field::Scalar> expand_rank_one(
    const Field& f, const MonomialBasis& basis, const typename Field::Scalar& scalar,
    const std::vector<std::vector<typename Field::Scalar>>& linforms);

// Complex sections as Eigen vectors for downstream linear algebra.
struct SectionC {
  Format format;
  Eigen::VectorXcd coeffs;
};

struct SectionFp {
  Format format;
  std::uint64_t prime = kDefaultPrime;
  std::vector<std::uint32_t> coeffs;
};

Cplx eval_section(const SectionC& s, const MonomialBasis& basis, const PointC& pt);
Eigen::VectorXcd eval_gradient(const SectionC& s, const MonomialBasis& basis, const PointC& pt);

// sum_r x sum_r matrix of second affine partials at the point.
Eigen::MatrixXcd hessian_at(const SectionC& s, const MonomialBasis& basis, const PointC& pt);

// Coefficient transform under the per-factor substitution x_i -> U_i x_i:
// returns S' with S'(x) = S(U x). Used to re-chart a section.
SectionC substitute(const SectionC& s, const std::vector<Eigen::MatrixXcd>& factor_maps);

}  // namespace pswaring
