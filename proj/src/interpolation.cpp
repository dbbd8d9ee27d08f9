#include "pswaring/interpolation.hpp"

#include <algorithm>

namespace pswaring {

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::expected: return "expected";
    case VerdictStatus::deficient: return "deficient";
    case VerdictStatus::exceeds: return "exceeds";
  }
  return "?";
}

template <class Field>
DoublePoints<typename Field::Scalar> random_scheme(const Field& f, const Format& fmt,
                                                   const SchemeShape& shape, Rng& rng) {
  DoublePoints<typename Field::Scalar> pts;
  pts.divisor_factor = shape.divisor_factor;
  for (int i = 0; i < shape.free_points; ++i) pts.free_pts.push_back(random_point(f, fmt, rng));
  if (shape.divisor_points > 0) {
    if (shape.divisor_factor < 0 || shape.divisor_factor >= fmt.factors())
      throw std::invalid_argument("random_scheme: divisor factor required");
    if (fmt.r(shape.divisor_factor) != 1)
      throw std::invalid_argument("random_scheme: divisor factor must be a P^1");
    // One shared coordinate realizes the fiber D of the divisor pencil.
    Point<typename Field::Scalar> sample = random_point(f, fmt, rng);
    const auto shared = sample[shape.divisor_factor];
    for (int i = 0; i < shape.divisor_points; ++i) {
      auto p = random_point(f, fmt, rng);
      p[shape.divisor_factor] = shared;
      pts.div_pts.push_back(std::move(p));
    }
  }
  return pts;
}

template DoublePointsFp random_scheme(const FpField&, const Format&, const SchemeShape&, Rng&);
template DoublePointsC random_scheme(const ComplexField&, const Format&, const SchemeShape&, Rng&);

FpMatrix assemble(const FpField& f, const MonomialBasis& basis, const DoublePointsFp& pts) {
  const auto all = pts.all();
  const int per_point = 1 + basis.format().sum_r();
  FpMatrix m(int(all.size()) * per_point, basis.size());
  int row = 0;
  for (const auto& p : all) {
    const auto value = eval_monomial_row(f, basis, p);
    std::copy(value.begin(), value.end(), m.row(row++));
    for (const auto& partial : eval_partial_rows(f, basis, p))
      std::copy(partial.begin(), partial.end(), m.row(row++));
  }
  return m;
}

Eigen::MatrixXcd assemble(const MonomialBasis& basis, const DoublePointsC& pts) {
  ComplexField f;
  const auto all = pts.all();
  const int per_point = 1 + basis.format().sum_r();
  Eigen::MatrixXcd m(int(all.size()) * per_point, basis.size());
  int row = 0;
  for (const auto& p : all) {
    const auto value = eval_monomial_row(f, basis, p);
    for (int j = 0; j < basis.size(); ++j) m(row, j) = value[j];
    ++row;
    for (const auto& partial : eval_partial_rows(f, basis, p)) {
      for (int j = 0; j < basis.size(); ++j) m(row, j) = partial[j];
      ++row;
    }
  }
  return m;
}

namespace {

// Shared trial loop: draw fresh points, compute the exact rank, stop as soon
// as the success predicate holds.
template <class Pred>
Verdict rank_trials(const Format& fmt, const SchemeShape& shape, const SysdimOptions& opt,
                    Pred&& success) {
  Verdict v(fmt);
  v.shape = shape;
  v.ncoeff = fmt.ncoeff();
  v.rows = (long long)(shape.free_points + shape.divisor_points) * (1 + fmt.sum_r());
  v.expected_dim = std::max<long long>(0, v.ncoeff - v.rows);

  const MonomialBasis basis(fmt);
  const int trials = std::max(1, opt.trials);
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t prime =
        (trial == trials - 1 && trial > 0) ? opt.fallback_prime : opt.prime;
    FpField f(prime);
    Rng rng = Rng::stream(opt.seed, std::uint64_t(trial));
    const auto pts = random_scheme(f, fmt, shape, rng);
    const FpMatrix m = assemble(f, basis, pts);
    v.rank = fp_rank(f, m);
    v.actual_dim = v.ncoeff - v.rank;
    v.trials_used = trial + 1;
    if (std::find(v.primes_used.begin(), v.primes_used.end(), prime) == v.primes_used.end())
      v.primes_used.push_back(prime);
    if (v.actual_dim < v.expected_dim) {
      v.status = VerdictStatus::exceeds;  // impossible by semicontinuity; kept as a tripwire
      v.note = "rank exceeds the generic bound; arithmetic fault";
      return v;
    }
    if (success(v)) {
      v.status = VerdictStatus::expected;
      return v;
    }
  }
  v.status = VerdictStatus::deficient;
  v.note = "deficient after independent retries (probabilistic)";
  return v;
}

}  // namespace

Verdict sysdim(const Format& fmt, const SchemeShape& shape, const SysdimOptions& opt) {
  return rank_trials(fmt, shape, opt,
                     [](const Verdict& v) { return v.actual_dim == v.expected_dim; });
}

Verdict sysdim_at_most(const Format& fmt, const SchemeShape& shape, long long max_dim,
                       const SysdimOptions& opt) {
  Verdict v = rank_trials(fmt, shape, opt,
                          [max_dim](const Verdict& w) { return w.actual_dim <= max_dim; });
  if (v.status == VerdictStatus::expected)
    v.note = "dimension bound " + std::to_string(max_dim) + " satisfied";
  return v;
}

Verdict sysdim_at(const Format& fmt, const DoublePointsFp& pts, std::uint64_t prime) {
  Verdict v(fmt);
  v.shape = SchemeShape{int(pts.free_pts.size()), int(pts.div_pts.size()), pts.divisor_factor};
  v.ncoeff = fmt.ncoeff();
  v.rows = (long long)(pts.free_pts.size() + pts.div_pts.size()) * (1 + fmt.sum_r());
  v.expected_dim = std::max<long long>(0, v.ncoeff - v.rows);
  FpField f(prime);
  const MonomialBasis basis(fmt);
  v.rank = fp_rank(f, assemble(f, basis, pts));
  v.actual_dim = v.ncoeff - v.rank;
  v.trials_used = 1;
  v.primes_used = {prime};
  v.status = v.actual_dim == v.expected_dim ? VerdictStatus::expected
             : v.actual_dim > v.expected_dim ? VerdictStatus::deficient
                                             : VerdictStatus::exceeds;
  return v;
}

SecantVerdict secant_dim(const Format& fmt, long long k, const SysdimOptions& opt) {
  if (k < 0) throw std::invalid_argument("secant_dim: k must be >= 0");
  SecantVerdict out(fmt);
  out.k = k;
  const long long ncoeff = fmt.ncoeff();
  out.expected_rank = std::min<long long>(ncoeff, (k + 1) * (fmt.sum_r() + 1));
  SchemeShape shape{int(k + 1), 0, -1};
  // Full expected rank <=> actual_dim == max(0, ncoeff - rows); both sides
  // truncate at the same point since rows = (k+1)(sum_r+1).
  out.verdict = sysdim(fmt, shape, opt);
  out.defective = out.verdict.rank < out.expected_rank;
  if (out.defective)
    out.verdict.note = "defective (probabilistic): secant rank " +
                       std::to_string(out.verdict.rank) + " < expected " +
                       std::to_string(out.expected_rank);
  return out;
}

SectionC kernel_section(const Format& fmt, const DoublePointsC& pts, std::uint64_t seed,
                        int* kernel_dim) {
  const MonomialBasis basis(fmt);
  const Eigen::MatrixXcd m = assemble(basis, pts);
  const int n = basis.size();

  Eigen::MatrixXcd null_basis;
  if (m.rows() == 0) {
    null_basis = Eigen::MatrixXcd::Identity(n, n);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(m.rows(), m.cols()) * 1e-13 * (sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol) ++rank;
    if (rank >= n) throw std::runtime_error("kernel_section: system has no sections");
    null_basis = svd.matrixV().rightCols(n - rank);
  }
  if (kernel_dim) *kernel_dim = int(null_basis.cols());

  Rng rng = Rng::stream(seed, 0x6b65726eULL);
  Eigen::VectorXcd mix(null_basis.cols());
  for (int i = 0; i < mix.size(); ++i) mix(i) = rng.gaussian();
  Eigen::VectorXcd coeffs = null_basis * mix;
  coeffs /= coeffs.norm();
  return SectionC{fmt, std::move(coeffs)};
}

SectionFp kernel_section_fp(const FpField& f, const Format& fmt, const DoublePointsFp& pts,
                            std::uint64_t seed) {
  const MonomialBasis basis(fmt);
  const auto null_basis = fp_nullspace(f, assemble(f, basis, pts));
  if (null_basis.empty()) throw std::runtime_error("kernel_section_fp: system has no sections");
  Rng rng = Rng::stream(seed, 0x6b65726eULL);
  std::vector<std::uint32_t> coeffs(basis.size(), 0);
  for (const auto& b : null_basis) {
    const std::uint32_t c = rng.field_nonzero(f.prime());
    for (int i = 0; i < basis.size(); ++i) coeffs[i] = f.add(coeffs[i], f.mul(c, b[i]));
  }
  return SectionFp{fmt, f.prime(), std::move(coeffs)};
}

}  // namespace pswaring
