#include "pswaring/waring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pswaring/assignment.hpp"
#include "pswaring/lm.hpp"
#include "pswaring/parallel.hpp"

namespace pswaring {

namespace {

Cplx cpow(Cplx base, int e) {
  Cplx r(1, 0);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Parameter layout: per term [scalar, linform_0 coords, linform_1 coords, ...].
struct Layout {
  const Format& fmt;
  int nterms;

  int per_term() const {
    int c = 1;
    for (int i = 0; i < fmt.factors(); ++i) c += fmt.r(i) + 1;
    return c;
  }
  int total() const { return nterms * per_term(); }

  Eigen::VectorXcd pack(const std::vector<RankOneTerm>& terms) const {
    Eigen::VectorXcd p(total());
    int at = 0;
    for (const auto& t : terms) {
      p[at++] = t.scalar;
      for (const auto& l : t.linforms)
        for (int j = 0; j < l.size(); ++j) p[at++] = l[j];
    }
    return p;
  }

  std::vector<RankOneTerm> unpack(const Eigen::VectorXcd& p) const {
    std::vector<RankOneTerm> terms(nterms);
    int at = 0;
    for (auto& t : terms) {
      t.scalar = p[at++];
      t.linforms.resize(fmt.factors());
      for (int i = 0; i < fmt.factors(); ++i) {
        t.linforms[i].resize(fmt.r(i) + 1);
        for (int j = 0; j <= fmt.r(i); ++j) t.linforms[i][j] = p[at++];
      }
    }
    return terms;
  }
};

// Per-factor weighted monomial tables of one term: w[i][m] includes the
// multinomial so the Kronecker product gives tensor coefficients directly.
struct TermTables {
  std::vector<std::vector<Cplx>> w;
  std::vector<std::vector<std::vector<Cplx>>> dw;  // [factor][coord][monomial]
};

TermTables term_tables(const MonomialBasis& basis, const RankOneTerm& term, bool with_derivs) {
  const Format& fmt = basis.format();
  TermTables t;
  const int n = fmt.factors();
  t.w.resize(n);
  t.dw.resize(n);
  for (int i = 0; i < n; ++i) {
    const int fs = basis.factor_size(i);
    t.w[i].resize(fs);
    for (int m = 0; m < fs; ++m) {
      const auto& e = basis.exponent(i, m);
      Cplx v(multinomial(fmt.d(i), e).convert_to<double>(), 0.0);
      for (std::size_t j = 0; j < e.size(); ++j) v *= cpow(term.linforms[i][int(j)], e[j]);
      t.w[i][m] = v;
    }
    if (!with_derivs) continue;
    t.dw[i].assign(fmt.r(i) + 1, std::vector<Cplx>(fs, Cplx(0, 0)));
    for (int j = 0; j <= fmt.r(i); ++j) {
      for (int m = 0; m < fs; ++m) {
        const auto& e = basis.exponent(i, m);
        if (e[j] == 0) continue;
        Cplx v(double(e[j]) * multinomial(fmt.d(i), e).convert_to<double>(), 0.0);
        for (std::size_t j2 = 0; j2 < e.size(); ++j2)
          v *= cpow(term.linforms[i][int(j2)], int(j2) == j ? e[j2] - 1 : e[j2]);
        t.dw[i][j][m] = v;
      }
    }
  }
  return t;
}

void kron_accumulate(const MonomialBasis& basis, const std::vector<const std::vector<Cplx>*>& tables,
                     Cplx scale, Eigen::VectorXcd& out) {
  const int n = basis.factors();
  std::vector<int> idx(n, 0);
  for (int g = 0; g < basis.size(); ++g) {
    Cplx v = scale;
    for (int i = 0; i < n; ++i) v *= (*tables[i])[idx[i]];
    out[g] += v;
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < basis.factor_size(i)) break;
      idx[i] = 0;
    }
  }
}

struct FitModel {
  const MonomialBasis& basis;
  const Eigen::VectorXcd& target;
  double target_norm;
  Layout layout;

  Eigen::VectorXcd residual(const Eigen::VectorXcd& p) const {
    const auto terms = layout.unpack(p);
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(basis.size());
    for (const auto& t : terms) {
      const auto tt = term_tables(basis, t, false);
      std::vector<const std::vector<Cplx>*> tabs;
      for (int i = 0; i < basis.factors(); ++i) tabs.push_back(&tt.w[i]);
      kron_accumulate(basis, tabs, t.scalar, sum);
    }
    return (sum - target) / target_norm;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& p) const {
    const auto terms = layout.unpack(p);
    const int n = basis.factors();
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(basis.size(), layout.total());
    int col = 0;
    for (const auto& t : terms) {
      const auto tt = term_tables(basis, t, true);
      std::vector<const std::vector<Cplx>*> tabs(n);
      for (int i = 0; i < n; ++i) tabs[i] = &tt.w[i];

      // d/d scalar: the unscaled expansion.
      Eigen::VectorXcd colv = Eigen::VectorXcd::Zero(basis.size());
      kron_accumulate(basis, tabs, Cplx(1, 0), colv);
      J.col(col++) = colv / target_norm;

      // d/d linform coordinate: swap in the derivative table of one factor.
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= basis.format().r(i); ++j) {
          colv.setZero();
          tabs[i] = &tt.dw[i][j];
          kron_accumulate(basis, tabs, t.scalar, colv);
          tabs[i] = &tt.w[i];
          J.col(col++) = colv / target_norm;
        }
      }
    }
    return J;
  }
};

std::vector<RankOneTerm> random_terms(const Format& fmt, int count, Rng& rng) {
  std::vector<RankOneTerm> terms(count);
  for (auto& t : terms) {
    t.linforms.resize(fmt.factors());
    for (int i = 0; i < fmt.factors(); ++i) {
      Eigen::VectorXcd l(fmt.r(i) + 1);
      for (int j = 0; j <= fmt.r(i); ++j) l[j] = rng.gaussian();
      t.linforms[i] = l / l.norm();
    }
    t.scalar = rng.gaussian();
  }
  return terms;
}

// Optimal scalars for fixed linforms: a linear least-squares warm start.
void warm_start_scalars(const MonomialBasis& basis, const Eigen::VectorXcd& target,
                        std::vector<RankOneTerm>& terms) {
  const int n = basis.factors();
  Eigen::MatrixXcd E(basis.size(), int(terms.size()));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    RankOneTerm unit = terms[t];
    unit.scalar = Cplx(1, 0);
    const auto tt = term_tables(basis, unit, false);
    std::vector<const std::vector<Cplx>*> tabs;
    for (int i = 0; i < n; ++i) tabs.push_back(&tt.w[i]);
    Eigen::VectorXcd colv = Eigen::VectorXcd::Zero(basis.size());
    kron_accumulate(basis, tabs, Cplx(1, 0), colv);
    E.col(int(t)) = colv;
  }
  const Eigen::VectorXcd s = E.colPivHouseholderQr().solve(target);
  for (std::size_t t = 0; t < terms.size(); ++t) terms[t].scalar = s[int(t)];
}

Decomposition run_fit(const SectionC& target, std::vector<RankOneTerm> init,
                      const FitOptions& opt) {
  const MonomialBasis basis(target.format);
  const double tnorm = target.coeffs.norm();
  if (tnorm == 0.0) throw std::invalid_argument("fit: zero target");
  Layout layout{target.format, int(init.size())};
  FitModel model{basis, target.coeffs, tnorm, layout};

  LmOptions lm;
  lm.max_iters = opt.max_iters;
  lm.lambda0 = opt.lambda0;
  lm.lambda_up = opt.lambda_up;
  lm.lambda_down = opt.lambda_down;
  lm.target = opt.polish_target;
  const LmResult res = lm_minimize(model, layout.pack(init), lm);

  Decomposition dec;
  dec.terms = layout.unpack(res.params);
  dec.residual = res.residual_norm;
  dec.converged = res.residual_norm <= opt.converged_tol;
  dec.residual_history = res.accepted_history;
  return dec;
}

}  // namespace

SectionC expand_terms(const Format& fmt, const std::vector<RankOneTerm>& terms) {
  const MonomialBasis basis(fmt);
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(basis.size());
  for (const auto& t : terms) {
    const auto tt = term_tables(basis, t, false);
    std::vector<const std::vector<Cplx>*> tabs;
    for (int i = 0; i < fmt.factors(); ++i) tabs.push_back(&tt.w[i]);
    kron_accumulate(basis, tabs, t.scalar, sum);
  }
  return SectionC{fmt, std::move(sum)};
}

RankOneTerm canonicalize_term(const Format& fmt, const RankOneTerm& term) {
  RankOneTerm out = term;
  for (int i = 0; i < fmt.factors(); ++i) {
    Eigen::VectorXcd& l = out.linforms[i];
    const double norm = l.norm();
    if (norm < 1e-300) throw std::domain_error("canonicalize: zero linear form");
    l /= norm;
    int lead = -1;
    for (int j = 0; j < l.size(); ++j)
      if (std::abs(l[j]) > 1e-9) { lead = j; break; }
    if (lead < 0) throw std::domain_error("canonicalize: numerically zero linear form");
    const Cplx phase = l[lead] / std::abs(l[lead]);
    l *= std::conj(phase);
    // The removed gauge alpha = norm * phase reappears on the scalar.
    out.scalar *= cpow(Cplx(norm, 0) * phase, fmt.d(i));
  }
  return out;
}

Decomposition canonicalize(const Format& fmt, Decomposition dec) {
  for (auto& t : dec.terms) t = canonicalize_term(fmt, t);
  auto key = [&](const RankOneTerm& t) {
    std::vector<long long> k;
    for (const auto& l : t.linforms)
      for (int j = 0; j < l.size(); ++j) {
        k.push_back(llround(l[j].real() * 1e6));
        k.push_back(llround(l[j].imag() * 1e6));
      }
    k.push_back(llround(t.scalar.real() * 1e6));
    k.push_back(llround(t.scalar.imag() * 1e6));
    return k;
  };
  std::stable_sort(dec.terms.begin(), dec.terms.end(),
                   [&](const RankOneTerm& a, const RankOneTerm& b) { return key(a) < key(b); });
  return dec;
}

std::pair<SectionC, Decomposition> synthesize_target(const Format& fmt, long long k,
                                                     std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("synthesize_target: k must be >= 0");
  Rng rng = Rng::stream(seed, 0x746172ULL);
  Decomposition witness;
  witness.terms = random_terms(fmt, int(k + 1), rng);
  for (auto& t : witness.terms) t = canonicalize_term(fmt, t);
  witness.residual = 0.0;
  witness.converged = true;
  SectionC target = expand_terms(fmt, witness.terms);
  return {std::move(target), std::move(witness)};
}

Decomposition fit(const SectionC& target, long long k, std::uint64_t init_seed,
                  const FitOptions& opt) {
  if (k < 0) throw std::invalid_argument("fit: k must be >= 0");
  Rng rng = Rng::stream(init_seed, 0x696e6974ULL);
  auto init = random_terms(target.format, int(k + 1), rng);
  warm_start_scalars(MonomialBasis(target.format), target.coeffs, init);
  return run_fit(target, std::move(init), opt);
}

Decomposition fit_from(const SectionC& target, std::vector<RankOneTerm> init,
                       const FitOptions& opt) {
  return run_fit(target, std::move(init), opt);
}

Eigen::VectorXcd fit_residual(const SectionC& target, const std::vector<RankOneTerm>& terms) {
  const MonomialBasis basis(target.format);
  Layout layout{target.format, int(terms.size())};
  FitModel model{basis, target.coeffs, target.coeffs.norm(), layout};
  return model.residual(layout.pack(terms));
}

Eigen::MatrixXcd fit_jacobian(const SectionC& target, const std::vector<RankOneTerm>& terms) {
  const MonomialBasis basis(target.format);
  Layout layout{target.format, int(terms.size())};
  FitModel model{basis, target.coeffs, target.coeffs.norm(), layout};
  return model.jacobian(layout.pack(terms));
}

double decomposition_distance(const Format& fmt, const Decomposition& a, const Decomposition& b) {
  const int k1 = int(a.terms.size());
  if (k1 != int(b.terms.size()))
    throw std::invalid_argument("decomposition_distance: term counts differ");
  std::vector<std::vector<double>> cost(k1, std::vector<double>(k1, 0.0));
  for (int i = 0; i < k1; ++i) {
    for (int j = 0; j < k1; ++j) {
      double d = 0.0;
      for (int f = 0; f < fmt.factors(); ++f)
        d += (a.terms[i].linforms[f] - b.terms[j].linforms[f]).norm();
      const double sa = std::abs(a.terms[i].scalar), sb = std::abs(b.terms[j].scalar);
      d += std::abs(a.terms[i].scalar - b.terms[j].scalar) / (1.0 + std::max(sa, sb));
      cost[i][j] = d;
    }
  }
  return assignment_cost(cost) / double(k1);
}

ClusterResult cluster(const Format& fmt, const std::vector<Decomposition>& decs, double tol) {
  const int n = int(decs.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (decomposition_distance(fmt, decs[i], decs[j]) <= tol) parent[find(i)] = find(j);

  std::vector<int> root_of(n);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    root_of[i] = find(i);
    if (root_of[i] == i) roots.push_back(i);
  }

  ClusterResult out;
  out.nu_est = int(roots.size());
  for (int r : roots) {
    int size = 0, best = -1;
    for (int i = 0; i < n; ++i) {
      if (root_of[i] != r) continue;
      ++size;
      if (best < 0 || decs[i].residual < decs[best].residual) best = i;
    }
    out.sizes.push_back(size);
    out.representatives.push_back(best);
  }
  // Order clusters by size, large first, deterministically.
  std::vector<int> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return out.sizes[x] > out.sizes[y]; });
  ClusterResult sorted;
  sorted.nu_est = out.nu_est;
  for (int o : order) {
    sorted.sizes.push_back(out.sizes[o]);
    sorted.representatives.push_back(out.representatives[o]);
  }
  return sorted;
}

NuReport nu_experiment(const Format& fmt, long long k, int nstarts, std::uint64_t seed,
                       const FitOptions& fit_opt, double cluster_tol, int jobs) {
  auto [target, witness] = synthesize_target(fmt, k, seed);
  (void)witness;
  return nu_experiment_on(target, k, nstarts, seed, fit_opt, cluster_tol, jobs);
}

NuReport nu_experiment_on(const SectionC& target, long long k, int nstarts, std::uint64_t seed,
                          const FitOptions& fit_opt, double cluster_tol, int jobs) {
  const Format& fmt = target.format;
  NuReport report(fmt);
  report.k = k;
  report.nstarts = nstarts;
  report.cluster_tol = cluster_tol;

  std::vector<Decomposition> fits(nstarts, Decomposition{});
  const int pool = jobs > 0 ? jobs : default_jobs();
  run_indexed_jobs(nstarts, pool, [&](int i) {
    const std::uint64_t start_seed = Rng::stream(seed, std::uint64_t(i) + 1).next();
    fits[i] = fit(target, k, start_seed, fit_opt);
  });

  std::vector<Decomposition> converged;
  std::vector<double> residuals;
  for (auto& d : fits) {
    if (!d.converged) continue;
    residuals.push_back(d.residual);
    converged.push_back(canonicalize(fmt, std::move(d)));
  }
  report.nconverged = int(converged.size());
  report.success_rate = nstarts ? double(report.nconverged) / nstarts : 0.0;

  if (report.nconverged < 10) {
    report.inconclusive = true;
    return report;
  }

  std::sort(residuals.begin(), residuals.end());
  report.residual_min = residuals.front();
  report.residual_max = residuals.back();
  report.residual_median = residuals[residuals.size() / 2];

  const ClusterResult base = cluster(fmt, converged, cluster_tol);
  report.nu_est = base.nu_est;
  report.cluster_sizes = base.sizes;
  report.nu_at_loose = cluster(fmt, converged, cluster_tol * 10).nu_est;
  report.nu_at_tight = cluster(fmt, converged, cluster_tol / 10).nu_est;
  for (int rep : base.representatives) report.representatives.push_back(converged[rep]);
  return report;
}

}  // namespace pswaring
