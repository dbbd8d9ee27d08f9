#include "pswaring/bivariate.hpp"

#include <algorithm>
#include <cmath>

namespace pswaring {

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  double v = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

// Effective degree in y: last column with a non-negligible entry.
int effective_deg_y(const BivariatePoly& p, double tol) {
  for (int j = p.deg_y(); j >= 0; --j)
    for (int i = 0; i <= p.deg_x(); ++i)
      if (std::abs(p.c(i, j)) > tol) return j;
  return -1;  // identically zero
}

int effective_deg_x(const BivariatePoly& p, double tol) {
  for (int i = p.deg_x(); i >= 0; --i)
    for (int j = 0; j <= p.deg_y(); ++j)
      if (std::abs(p.c(i, j)) > tol) return i;
  return -1;
}

// One 2x2 Newton step toward a common zero of (f, g).
void polish_pair(const BivariatePoly& f, const BivariatePoly& g, const BivariatePoly& fx,
                 const BivariatePoly& fy, const BivariatePoly& gx, const BivariatePoly& gy,
                 Eigen::Vector2cd& z, int steps = 5) {
  for (int it = 0; it < steps; ++it) {
    Eigen::Matrix2cd J;
    J << fx.eval(z[0], z[1]), fy.eval(z[0], z[1]), gx.eval(z[0], z[1]), gy.eval(z[0], z[1]);
    Eigen::Vector2cd rhs(f.eval(z[0], z[1]), g.eval(z[0], z[1]));
    const Eigen::Vector2cd step = J.fullPivLu().solve(rhs);
    if (!step.allFinite()) return;
    z -= step;
    if (step.norm() < 1e-14 * (1.0 + z.norm())) return;
  }
}

}  // namespace

Cplx BivariatePoly::eval(Cplx x, Cplx y) const {
  // Horner in x of Horner-in-y rows.
  Cplx acc(0, 0);
  for (int i = deg_x(); i >= 0; --i) {
    Cplx row(0, 0);
    for (int j = deg_y(); j >= 0; --j) row = row * y + c(i, j);
    acc = acc * x + row;
  }
  return acc;
}

Eigen::VectorXcd BivariatePoly::at_x(Cplx x) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(deg_y() + 1);
  for (int j = 0; j <= deg_y(); ++j) {
    Cplx acc(0, 0);
    for (int i = deg_x(); i >= 0; --i) acc = acc * x + c(i, j);
    out[j] = acc;
  }
  return out;
}

BivariatePoly BivariatePoly::dx() const {
  if (deg_x() == 0) return {Eigen::MatrixXcd::Zero(1, deg_y() + 1)};
  Eigen::MatrixXcd out(deg_x(), deg_y() + 1);
  for (int i = 1; i <= deg_x(); ++i)
    for (int j = 0; j <= deg_y(); ++j) out(i - 1, j) = double(i) * c(i, j);
  return {out};
}

BivariatePoly BivariatePoly::dy() const {
  if (deg_y() == 0) return {Eigen::MatrixXcd::Zero(deg_x() + 1, 1)};
  Eigen::MatrixXcd out(deg_x() + 1, deg_y());
  for (int i = 0; i <= deg_x(); ++i)
    for (int j = 1; j <= deg_y(); ++j) out(i, j - 1) = double(j) * c(i, j);
  return {out};
}

BivariatePoly bivariate_from_section(const SectionC& s) {
  const Format& fmt = s.format;
  if (fmt.sum_r() != 2)
    throw std::invalid_argument("bivariate_from_section: needs a two-variable format");
  const MonomialBasis basis(fmt);

  if (fmt.factors() == 1) {
    // One P^2 factor of degree d: chart x2 = 1, grid indexed by (e0, e1).
    const int d = fmt.d(0);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int g = 0; g < basis.size(); ++g) {
      const auto& e = basis.exponent(0, g);
      c(e[0], e[1]) += s.coeffs[g];
    }
    return {c};
  }

  // Two P^1 factors: x is factor 0's chart variable, y factor 1's.
  const int dx = fmt.d(0), dy = fmt.d(1);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dx + 1, dy + 1);
  std::vector<int> idx(2);
  for (int g = 0; g < basis.size(); ++g) {
    basis.split(g, idx);
    const auto& e0 = basis.exponent(0, idx[0]);
    const auto& e1 = basis.exponent(1, idx[1]);
    c(e0[0], e1[0]) += s.coeffs[g];
  }
  return {c};
}

std::vector<Cplx> poly_roots(const Eigen::VectorXcd& coeffs, double trim_rel) {
  const double scale = coeffs.size() ? coeffs.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return {};
  int deg = int(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) <= trim_rel * scale) --deg;
  if (deg == 0) return {};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);

  std::vector<Cplx> roots;
  for (int i = 0; i < deg; ++i) {
    Cplx z = es.eigenvalues()[i];
    // A couple of Newton steps sharpen the companion eigenvalues.
    for (int it = 0; it < 3; ++it) {
      Cplx v(0, 0), dv(0, 0);
      for (int j = deg; j >= 0; --j) {
        dv = dv * z + v;
        v = v * z + coeffs[j];
      }
      if (std::abs(dv) < 1e-300) break;
      z -= v / dv;
    }
    roots.push_back(z);
  }
  return roots;
}

CommonRoots common_roots(const BivariatePoly& f, const BivariatePoly& g, double box,
                         int curve_samples) {
  CommonRoots out;
  const double fscale = max_abs(f.c);
  const double gscale = max_abs(g.c);
  if (fscale == 0.0 && gscale == 0.0) {
    out.positive_dimensional = true;
    return out;
  }

  const BivariatePoly fdx = f.dx(), fdy = f.dy(), gdx = g.dx(), gdy = g.dy();
  const double residual_tol = 1e-9 * (fscale + gscale);

  auto keep_if_zero = [&](Eigen::Vector2cd z) {
    if (std::abs(z[0]) > box || std::abs(z[1]) > box) return;
    polish_pair(f, g, fdx, fdy, gdx, gdy, z);
    if (std::abs(z[0]) > box || std::abs(z[1]) > box) return;
    if (std::abs(f.eval(z[0], z[1])) + std::abs(g.eval(z[0], z[1])) > residual_tol) return;
    for (const auto& p : out.points)
      if ((p - z).norm() <= 1e-6 * (1.0 + z.norm())) return;
    out.points.push_back(z);
  };

  const double tol_f = 1e-12 * std::max(fscale, 1e-300);
  const double tol_g = 1e-12 * std::max(gscale, 1e-300);
  const int ny_f = effective_deg_y(f, tol_f);
  const int ny_g = effective_deg_y(g, tol_g);
  const int nx_f = effective_deg_x(f, tol_f);
  const int nx_g = effective_deg_x(g, tol_g);

  // One polynomial is (numerically) identically zero: sample the other's
  // zero curve.
  if (ny_f < 0 || ny_g < 0) {
    out.positive_dimensional = true;
    const BivariatePoly& h = (ny_f < 0) ? g : f;
    for (int t = 0; t < curve_samples; ++t) {
      const double ang = 2.0 * M_PI * (t + 0.31) / curve_samples;
      const Cplx x = 0.8 * Cplx(std::cos(ang), std::sin(ang));
      for (const Cplx& y : poly_roots(h.at_x(x))) keep_if_zero({x, y});
    }
    return out;
  }

  if (ny_f == 0 && ny_g == 0) {
    // Both independent of y: common x-roots continue along vertical lines.
    out.positive_dimensional = true;
    Eigen::VectorXcd fu(nx_f + 1), gu(nx_g + 1);
    for (int i = 0; i <= nx_f; ++i) fu[i] = f.c(i, 0);
    for (int i = 0; i <= nx_g; ++i) gu[i] = g.c(i, 0);
    for (const Cplx& x : poly_roots(fu)) {
      Cplx acc(0, 0);
      for (int i = nx_g; i >= 0; --i) acc = acc * x + gu[i];
      if (std::abs(acc) <= residual_tol) {
        for (int t = 0; t < 3; ++t) keep_if_zero({x, Cplx(0.3 * t - 0.3, 0.2)});
      }
    }
    return out;
  }

  // Sylvester resultant eliminating y, by evaluation at scaled roots of
  // unity and inverse DFT interpolation.
  const int sy = ny_f + ny_g;
  const int deg_bound = std::max(1, nx_f * ny_g + nx_g * ny_f);
  const int samples = deg_bound + 1;
  const double rho = 1.17;

  std::vector<Cplx> dets(samples);
  // Identically-zero detection compares each determinant to its own Hadamard
  // bound: a true common factor leaves only roundoff, many orders below the
  // typical ratio of a nonsingular Sylvester matrix.
  double worst_ratio = 0.0;
  for (int t = 0; t < samples; ++t) {
    const double ang = 2.0 * M_PI * t / samples;
    const Cplx x = rho * Cplx(std::cos(ang), std::sin(ang));
    const Eigen::VectorXcd fu = f.at_x(x);
    const Eigen::VectorXcd gu = g.at_x(x);
    Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(sy, sy);
    for (int i = 0; i < ny_g; ++i)
      for (int j = 0; j <= ny_f; ++j) syl(i, i + j) = fu[ny_f - j];
    for (int i = 0; i < ny_f; ++i)
      for (int j = 0; j <= ny_g; ++j) syl(ny_g + i, i + j) = gu[ny_g - j];
    dets[t] = syl.determinant();
    double hadamard = 1.0;
    for (int i = 0; i < sy; ++i) hadamard *= std::max(syl.row(i).norm(), 1e-300);
    worst_ratio = std::max(worst_ratio, std::abs(dets[t]) / hadamard);
  }

  if (worst_ratio <= 1e-10) {
    // The resultant vanishes identically: the partials share a curve.
    out.positive_dimensional = true;
    for (int t = 0; t < curve_samples; ++t) {
      const double ang = 2.0 * M_PI * (t + 0.17) / curve_samples;
      const Cplx x = 0.75 * Cplx(std::cos(ang), std::sin(ang));
      for (const Cplx& y : poly_roots(f.at_x(x)))
        if (std::abs(g.eval(x, y)) <= 1e-6 * std::max(gscale, 1e-30)) keep_if_zero({x, y});
    }
    return out;
  }

  Eigen::VectorXcd res_coeffs = Eigen::VectorXcd::Zero(samples);
  for (int k = 0; k < samples; ++k) {
    Cplx acc(0, 0);
    for (int t = 0; t < samples; ++t) {
      const double ang = -2.0 * M_PI * k * t / samples;
      acc += dets[t] * Cplx(std::cos(ang), std::sin(ang));
    }
    res_coeffs[k] = acc / (double(samples) * std::pow(rho, k));
  }

  for (const Cplx& x : poly_roots(res_coeffs, 1e-9)) {
    if (std::abs(x) > box) continue;
    for (const Cplx& y : poly_roots(f.at_x(x))) keep_if_zero({x, y});
    for (const Cplx& y : poly_roots(g.at_x(x))) keep_if_zero({x, y});
  }
  return out;
}

}  // namespace pswaring
