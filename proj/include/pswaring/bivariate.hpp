#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pswaring/multipoly.hpp"

namespace pswaring {

// Dense bivariate polynomial: c(i, j) is the coefficient of x^i y^j.
struct BivariatePoly {
  Eigen::MatrixXcd c;

  int deg_x() const { return int(c.rows()) - 1; }
  int deg_y() const { return int(c.cols()) - 1; }

  Cplx eval(Cplx x, Cplx y) const;
  // Coefficients in y after substituting x (univariate, length deg_y+1).
  Eigen::VectorXcd at_x(Cplx x) const;

  BivariatePoly dx() const;
  BivariatePoly dy() const;
};

// Affine chart polynomial of a section on a two-variable format: either one
// P^2 factor or two P^1 factors.
BivariatePoly bivariate_from_section(const SectionC& s);

// Roots of a univariate polynomial via the companion matrix, with leading
// coefficient trimming and one Newton polish per root.
std::vector<Cplx> poly_roots(const Eigen::VectorXcd& coeffs, double trim_rel = 1e-12);

struct CommonRoots {
  std::vector<Eigen::Vector2cd> points;
  // Res_y(f, g) vanished identically: the common zero locus is a curve and
  // `points` holds samples of it instead of a complete finite list.
  bool positive_dimensional = false;
};

// All common zeros of {f = g = 0} inside |x|,|y| <= box via resultant
// elimination of y. Certified complete for the finite case up to the
// numerical tolerances; the curve case is sampled at `curve_samples` points.
CommonRoots common_roots(const BivariatePoly& f, const BivariatePoly& g, double box = 4.0,
                         int curve_samples = 24);

}  // namespace pswaring
