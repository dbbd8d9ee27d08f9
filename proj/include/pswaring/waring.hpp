#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pswaring/format.hpp"
#include "pswaring/multipoly.hpp"

namespace pswaring {

// One decomposable summand: scalar * l_1^{d_1} x ... x l_n^{d_n}. Canonical
// form keeps every linform unit-norm with its first nonvanishing coordinate
// real positive; all scale and phase freedom lives in the scalar.
struct RankOneTerm {
  Cplx scalar;
  std::vector<Eigen::VectorXcd> linforms;
};

struct Decomposition {
  std::vector<RankOneTerm> terms;
  double residual = 0.0;  // ||expanded sum - target|| / ||target||
  bool converged = false;
  std::vector<double> residual_history;  // accepted LM steps, nonincreasing
};

SectionC expand_terms(const Format& fmt, const std::vector<RankOneTerm>& terms);

RankOneTerm canonicalize_term(const Format& fmt, const RankOneTerm& term);
Decomposition canonicalize(const Format& fmt, Decomposition dec);

// Random target on the (k+1)-secant variety together with its witness.
std::pair<SectionC, Decomposition> synthesize_target(const Format& fmt, long long k,
                                                     std::uint64_t seed);

struct FitOptions {
  int max_iters = 3000;           // swamps on unique-decomposition targets are long
  double polish_target = 1e-13;   // keep iterating below the convergence bar
  double converged_tol = 1e-8;    // relative residual declaring convergence
  double lambda0 = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 0.3;
};

// Damped least-squares fit of k+1 terms from a random initialization; the
// scalars are warm-started by linear least squares on the fixed linforms.
Decomposition fit(const SectionC& target, long long k, std::uint64_t init_seed,
                  const FitOptions& opt = {});

// Fit initialized at the given terms (witness-recovery experiments).
Decomposition fit_from(const SectionC& target, std::vector<RankOneTerm> init,
                       const FitOptions& opt = {});

// Residual and analytic Jacobian of the fitting map at the given terms,
// exposed for derivative checks.
Eigen::VectorXcd fit_residual(const SectionC& target, const std::vector<RankOneTerm>& terms);
Eigen::MatrixXcd fit_jacobian(const SectionC& target, const std::vector<RankOneTerm>& terms);

// Mean matched-term distance between canonicalized decompositions (optimal
// assignment over terms; term distance = linform distances + a relative
// scalar distance).
double decomposition_distance(const Format& fmt, const Decomposition& a, const Decomposition& b);

struct ClusterResult {
  int nu_est = 0;
  std::vector<int> sizes;            // descending
  std::vector<int> representatives;  // index of the min-residual member per cluster
};

// Single linkage at tolerance tol over pairwise decomposition distances.
ClusterResult cluster(const Format& fmt, const std::vector<Decomposition>& decs, double tol);

struct NuReport {
  Format format;
  long long k = 0;
  int nstarts = 0;
  int nconverged = 0;
  double success_rate = 0.0;
  int nu_est = 0;  // lower bound by construction: nu >= nu_est
  std::vector<int> cluster_sizes;
  double residual_min = 0.0, residual_median = 0.0, residual_max = 0.0;
  double cluster_tol = 1e-4;
  int nu_at_loose = 0;   // tol * 10 sweep
  int nu_at_tight = 0;   // tol / 10 sweep
  bool inconclusive = false;
  std::vector<Decomposition> representatives;

  explicit NuReport(Format f) : format(std::move(f)) {}
};

// Multi-start experiment measuring the number of essentially distinct
// decompositions. Starts run as independent jobs with per-start seeds.
NuReport nu_experiment(const Format& fmt, long long k, int nstarts, std::uint64_t seed,
                       const FitOptions& fit_opt = {}, double cluster_tol = 1e-4, int jobs = 0);

// Same experiment against a supplied target section.
NuReport nu_experiment_on(const SectionC& target, long long k, int nstarts, std::uint64_t seed,
                          const FitOptions& fit_opt = {}, double cluster_tol = 1e-4, int jobs = 0);

}  // namespace pswaring
