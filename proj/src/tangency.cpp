#include "pswaring/tangency.hpp"

#include <algorithm>
#include <cmath>

#include "pswaring/bivariate.hpp"
#include "pswaring/lm.hpp"
#include "pswaring/parallel.hpp"

namespace pswaring {

namespace {

// Sine of the projective angle between two homogeneous vectors
// (Hermitian inner product, so dist(a, a) = 0 for any phase).
double proj_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const double c = std::abs(a.dot(b)) / (na * nb);
  return std::sqrt(std::max(0.0, 1.0 - std::min(1.0, c) * std::min(1.0, c)));
}

double point_distance(const LocatedPoint& a, const LocatedPoint& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.hom.size(); ++i) d = std::max(d, proj_distance(a.hom[i], b.hom[i]));
  return d;
}

LocatedPoint to_located(const Format& fmt, const PointC& chart_pt,
                        const std::vector<Eigen::MatrixXcd>* maps) {
  LocatedPoint out;
  for (int i = 0; i < fmt.factors(); ++i) {
    Eigen::VectorXcd hom(fmt.r(i) + 1);
    for (int j = 0; j < fmt.r(i); ++j) hom[j] = chart_pt[i][j];
    hom[fmt.r(i)] = 1;
    if (maps) hom = (*maps)[i] * hom;
    // Normalize by the largest coordinate for a readable representative.
    int lead = 0;
    for (int j = 1; j < hom.size(); ++j)
      if (std::abs(hom[j]) > std::abs(hom[lead])) lead = j;
    hom /= hom[lead];
    out.hom.push_back(std::move(hom));
  }
  return out;
}

// Residual model for the heuristic path: (value, gradient) of the section.
struct SingularityModel {
  const SectionC& section;
  const MonomialBasis& basis;
  double scale;

  PointC to_point(const Eigen::VectorXcd& z) const {
    PointC pt(basis.factors());
    int at = 0;
    for (int i = 0; i < basis.factors(); ++i) {
      pt[i].resize(basis.format().r(i));
      for (int j = 0; j < basis.format().r(i); ++j) pt[i][j] = z[at++];
    }
    return pt;
  }

  Eigen::VectorXcd residual(const Eigen::VectorXcd& z) const {
    const PointC pt = to_point(z);
    const int m = basis.format().sum_r();
    Eigen::VectorXcd r(m + 1);
    r[0] = eval_section(section, basis, pt);
    r.tail(m) = eval_gradient(section, basis, pt);
    return r / scale;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& z) const {
    const PointC pt = to_point(z);
    const int m = basis.format().sum_r();
    Eigen::MatrixXcd J(m + 1, m);
    J.row(0) = eval_gradient(section, basis, pt).transpose();
    J.bottomRows(m) = hessian_at(section, basis, pt);
    return J / scale;
  }
};

std::vector<Eigen::MatrixXcd> random_unitaries(const Format& fmt, Rng& rng) {
  std::vector<Eigen::MatrixXcd> maps;
  for (int i = 0; i < fmt.factors(); ++i) {
    const int n = fmt.r(i) + 1;
    Eigen::MatrixXcd a(n, n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) a(u, v) = rng.gaussian();
    maps.push_back(Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ());
  }
  return maps;
}

}  // namespace

bool ordinary_double_points_only(const SingularityReport& report) {
  if (!report.extra_singularities.empty()) return false;
  return std::all_of(report.hessian_ok.begin(), report.hessian_ok.end(),
                     [](bool ok) { return ok; });
}

SingularityReport check_weak_defectivity(const Format& fmt, int npoints, std::uint64_t seed,
                                         const WeakDefectOptions& opt) {
  if (npoints < 0) throw std::invalid_argument("check_weak_defectivity: npoints must be >= 0");
  SingularityReport report(fmt);
  report.npoints = npoints;
  report.seed = seed;

  const MonomialBasis basis(fmt);
  ComplexField CF;
  Rng point_rng = Rng::stream(seed, 0x706f696eULL);
  DoublePointsC pts;
  for (int i = 0; i < npoints; ++i) pts.free_pts.push_back(random_point(CF, fmt, point_rng));

  const SectionC section = kernel_section(fmt, pts, seed, &report.kernel_dim);
  const double coeff_norm = section.coeffs.norm();

  // Hessian nondegeneracy at each imposed point, scale-free.
  for (const auto& p : pts.free_pts) {
    const Eigen::MatrixXcd H = hessian_at(section, basis, p);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
    const auto& sv = svd.singularValues();
    report.hessian_ok.push_back(sv.size() > 0 && sv(sv.size() - 1) > opt.hessian_tol * sv(0));
  }

  // Imposed points in homogeneous form, for exclusion from the search.
  for (const auto& p : pts.free_pts)
    report.imposed_points.push_back(to_located(fmt, p, nullptr));
  const std::vector<LocatedPoint>& imposed = report.imposed_points;

  auto record = [&](const PointC& chart_pt, const std::vector<Eigen::MatrixXcd>* maps) {
    const LocatedPoint cand = to_located(fmt, chart_pt, maps);
    for (const auto& imp : imposed)
      if (point_distance(cand, imp) <= 1e-4) return;
    for (const auto& found : report.extra_singularities)
      if (point_distance(cand, found) <= 1e-6) return;
    report.extra_singularities.push_back(cand);
  };

  const bool bivariate = fmt.sum_r() == 2;
  report.certification = bivariate ? Certification::certified : Certification::heuristic;
  report.method = bivariate ? "resultant" : "multistart";

  Rng chart_rng = Rng::stream(seed, 0x63686172ULL);
  for (int chart = 0; chart <= opt.extra_charts; ++chart) {
    std::vector<Eigen::MatrixXcd> maps;
    const SectionC* view = &section;
    SectionC rotated{fmt, {}};
    if (chart > 0) {
      maps = random_unitaries(fmt, chart_rng);
      rotated = substitute(section, maps);
      view = &rotated;
    }

    if (bivariate) {
      const BivariatePoly h = bivariate_from_section(*view);
      const CommonRoots roots = common_roots(h.dx(), h.dy(), /*box=*/4.0);
      report.positive_dimensional |= roots.positive_dimensional;
      const double value_tol = 1e-8 * std::sqrt(double(basis.size())) * coeff_norm;
      for (const auto& z : roots.points) {
        // A singular point of the divisor also lies on it.
        if (std::abs(h.eval(z[0], z[1])) > value_tol * std::max(1.0, std::pow(std::abs(z[0]), h.deg_x())) *
                                               std::max(1.0, std::pow(std::abs(z[1]), h.deg_y())))
          continue;
        PointC pt;
        if (fmt.factors() == 1)
          pt = {{z[0], z[1]}};
        else
          pt = {{z[0]}, {z[1]}};
        record(pt, chart > 0 ? &maps : nullptr);
      }
    } else {
      const int m = fmt.sum_r();
      SingularityModel model{*view, basis, coeff_norm};
      LmOptions lm;
      lm.max_iters = 120;
      lm.target = 1e-13;
      const int starts = std::max(1, opt.starts / (opt.extra_charts + 1));
      std::vector<Eigen::VectorXcd> hits(starts);
      std::vector<char> hit(starts, 0);
      const int pool = opt.jobs > 0 ? opt.jobs : default_jobs();
      run_indexed_jobs(starts, pool, [&](int s) {
        Rng srng = Rng::stream(seed ^ (0x9e37ULL * (chart + 1)), std::uint64_t(s));
        Eigen::VectorXcd z0(m);
        for (int j = 0; j < m; ++j) z0[j] = srng.unit_disc();
        const LmResult res = lm_minimize(model, z0, lm);
        if (res.residual_norm <= 1e-10) {
          hits[s] = res.params;
          hit[s] = 1;
        }
      });
      for (int s = 0; s < starts; ++s) {
        if (!hit[s]) continue;
        bool inside = true;
        for (int j = 0; j < m; ++j) inside &= std::abs(hits[s][j]) <= 4.0;
        if (inside) record(model.to_point(hits[s]), chart > 0 ? &maps : nullptr);
      }
    }
  }

  report.weakly_defective = !ordinary_double_points_only(report);
  return report;
}

}  // namespace pswaring
