#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pswaring/format.hpp"
#include "pswaring/interpolation.hpp"
#include "pswaring/multipoly.hpp"

namespace pswaring {

// A singular point of a section, stored per factor in homogeneous
// coordinates (chart-free, so points found near infinity survive).
struct LocatedPoint {
  std::vector<Eigen::VectorXcd> hom;
};

enum class Certification { certified, heuristic };

// What a generic contact section looks like near its imposed double points
// and away from them. hessian_ok[i] records nondegeneracy of the affine
// Hessian at imposed point i; extra_singularities lists singular points away
// from the imposed set.
struct SingularityReport {
  explicit SingularityReport(Format f) : format(std::move(f)) {}

  Format format;
  int npoints = 0;
  std::uint64_t seed = 0;
  int kernel_dim = 0;
  std::vector<LocatedPoint> imposed_points;
  std::vector<bool> hessian_ok;
  std::vector<LocatedPoint> extra_singularities;
  Certification certification = Certification::heuristic;
  bool positive_dimensional = false;  // singular locus is a curve (resultant path)
  std::string method;                 // "resultant" or "multistart"
  bool weakly_defective = false;
};

struct WeakDefectOptions {
  int starts = 200;       // multi-start budget for the heuristic path
  int extra_charts = 3;   // random unitary chart changes covering infinity
  double hessian_tol = 1e-8;
  int jobs = 0;
};

// Draw a contact section with npoints imposed double points at random
// complex points and examine its singularities. Formats with two affine
// variables get the certified resultant search; anything bigger gets
// multi-start minimization of (value, gradient) and is flagged heuristic.
SingularityReport check_weak_defectivity(const Format& fmt, int npoints, std::uint64_t seed,
                                         const WeakDefectOptions& opt = {});

// True when every imposed Hessian is nondegenerate and nothing singular was
// found elsewhere.
bool ordinary_double_points_only(const SingularityReport& report);

}  // namespace pswaring
