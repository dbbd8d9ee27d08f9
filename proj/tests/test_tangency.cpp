#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pswaring/bivariate.hpp"
#include "pswaring/tangency.hpp"
#include "pswaring/waring.hpp"

using namespace pswaring;

TEST_CASE("hessian of explicit quadrics") {
  ComplexField CF;
  Format fmt({2}, {2});
  MonomialBasis b(fmt);

  // Section x0*x1: basis order (2,0,0),(1,1,0),(1,0,1),(0,2,0),(0,1,1),(0,0,2).
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(6);
  c[1] = 1;
  SectionC s{fmt, c};
  PointC origin{{Cplx(0, 0), Cplx(0, 0)}};
  const Eigen::MatrixXcd H = hessian_at(s, b, origin);
  CHECK(std::abs(H(0, 0)) == 0.0);
  CHECK(std::abs(H(0, 1) - Cplx(1, 0)) == 0.0);
  CHECK(std::abs(H(1, 0) - Cplx(1, 0)) == 0.0);
  CHECK(std::abs(H(1, 1)) == 0.0);

  // A double line l^2 has rank-one Hessian along l.
  Rng rng(12);
  Eigen::VectorXcd line(3);
  for (int i = 0; i < 3; ++i) line[i] = rng.unit_disc() + Cplx(0.5, 0);
  const auto lsq = expand_rank_one(CF, b, Cplx(1, 0), {{line[0], line[1], line[2]}});
  Eigen::VectorXcd lc(6);
  for (int i = 0; i < 6; ++i) lc[i] = lsq[i];
  SectionC dline{fmt, lc};
  // A chart point of l: solve line[0] x + line[1] y + line[2] = 0 at y = 1.
  const Cplx x = -(line[1] + line[2]) / line[0];
  PointC on_l{{x, Cplx(1, 0)}};
  const Eigen::MatrixXcd Hl = hessian_at(dline, b, on_l);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Hl);
  CHECK(svd.singularValues()(0) > 1e-8);
  CHECK(svd.singularValues()(1) <= 1e-10 * svd.singularValues()(0));
}

TEST_CASE("hessian agrees with second-order finite differences") {
  Format fmt({1, 1}, {3, 4});
  MonomialBasis b(fmt);
  ComplexField CF;
  Rng rng(555);
  Eigen::VectorXcd c(b.size());
  for (int g = 0; g < b.size(); ++g) c[g] = rng.unit_disc();
  SectionC s{fmt, c};
  const PointC pt = random_point(CF, fmt, rng);
  const Eigen::MatrixXcd H = hessian_at(s, b, pt);

  const double h = 1e-4;
  auto value = [&](double dx, double dy) {
    PointC q = pt;
    q[0][0] += dx;
    q[1][0] += dy;
    return eval_section(s, b, q);
  };
  const Cplx hxx = (value(h, 0) - 2.0 * value(0, 0) + value(-h, 0)) / (h * h);
  const Cplx hyy = (value(0, h) - 2.0 * value(0, 0) + value(0, -h)) / (h * h);
  const Cplx hxy = (value(h, h) - value(h, -h) - value(-h, h) + value(-h, -h)) / (4 * h * h);
  CHECK(std::abs(hxx - H(0, 0)) <= 1e-5 * (1 + std::abs(H(0, 0))));
  CHECK(std::abs(hyy - H(1, 1)) <= 1e-5 * (1 + std::abs(H(1, 1))));
  CHECK(std::abs(hxy - H(0, 1)) <= 1e-5 * (1 + std::abs(H(0, 1))));
}

TEST_CASE("resultant path finds every crossing of a split section") {
  // H = A * B with A, B random of bidegree (2,2) and (2,3): the singular
  // locus is exactly the 10 intersection points {A = B = 0} (bidegree
  // Bezout: 2*3 + 2*2).
  Format fa({1, 1}, {2, 2}), fb({1, 1}, {2, 3});
  Rng rng(2718);
  MonomialBasis ba(fa), bb(fb);
  Eigen::VectorXcd ca(ba.size()), cb(bb.size());
  for (int g = 0; g < ba.size(); ++g) ca[g] = rng.unit_disc();
  for (int g = 0; g < bb.size(); ++g) cb[g] = rng.unit_disc();

  const BivariatePoly A = bivariate_from_section(SectionC{fa, ca});
  const BivariatePoly B = bivariate_from_section(SectionC{fb, cb});

  // Multiply the affine polynomials on the coefficient grid.
  Eigen::MatrixXcd prod = Eigen::MatrixXcd::Zero(5, 6);
  for (int i = 0; i <= A.deg_x(); ++i)
    for (int j = 0; j <= A.deg_y(); ++j)
      for (int u = 0; u <= B.deg_x(); ++u)
        for (int v = 0; v <= B.deg_y(); ++v) prod(i + u, j + v) += A.c(i, j) * B.c(u, v);
  const BivariatePoly H{prod};

  const CommonRoots crossings = common_roots(A, B, 10.0);
  REQUIRE(!crossings.positive_dimensional);
  CHECK(crossings.points.size() == 10);

  // Each crossing is a genuine singular point of H: value and gradient vanish.
  for (const auto& z : crossings.points) {
    CHECK(std::abs(H.eval(z[0], z[1])) <= 1e-7);
    CHECK(std::abs(H.dx().eval(z[0], z[1])) <= 1e-7);
    CHECK(std::abs(H.dy().eval(z[0], z[1])) <= 1e-7);
  }

  // Dense-grid refinement oracle: Newton from a grid of starts finds no
  // crossing the resultant missed.
  std::vector<Eigen::Vector2cd> grid_points;
  for (int gx = -3; gx <= 3; ++gx) {
    for (int gy = -3; gy <= 3; ++gy) {
      for (int im = 0; im <= 1; ++im) {
        Eigen::Vector2cd z(Cplx(gx * 0.5, im * 0.4 - 0.2), Cplx(gy * 0.5, -im * 0.3 + 0.15));
        for (int it = 0; it < 60; ++it) {
          Eigen::Matrix2cd J;
          J << A.dx().eval(z[0], z[1]), A.dy().eval(z[0], z[1]), B.dx().eval(z[0], z[1]),
              B.dy().eval(z[0], z[1]);
          const Eigen::Vector2cd rhs(A.eval(z[0], z[1]), B.eval(z[0], z[1]));
          const Eigen::Vector2cd step = J.fullPivLu().solve(rhs);
          if (!step.allFinite()) break;
          z -= step;
          if (step.norm() < 1e-13) break;
        }
        if (std::abs(A.eval(z[0], z[1])) + std::abs(B.eval(z[0], z[1])) > 1e-9) continue;
        bool dup = false;
        for (const auto& q : grid_points) dup |= (q - z).norm() < 1e-6;
        if (!dup) grid_points.push_back(z);
      }
    }
  }
  CHECK(grid_points.size() <= 10);
  for (const auto& q : grid_points) {
    bool matched = false;
    for (const auto& z : crossings.points) matched |= (q - z).norm() < 1e-5;
    CHECK(matched);
  }
}

TEST_CASE("resultant path at the (10,10) validation envelope") {
  // Unit-scale coefficients, full bidegree (10,10): H = A * B with A, B both
  // of bidegree (5,5) has exactly 5*5 + 5*5 = 50 crossings.
  Format fa({1, 1}, {5, 5}), fb({1, 1}, {5, 5});
  Rng rng(31415);
  MonomialBasis ba(fa), bb(fb);
  Eigen::VectorXcd ca(ba.size()), cb(bb.size());
  for (int g = 0; g < ba.size(); ++g) ca[g] = rng.unit_disc();
  for (int g = 0; g < bb.size(); ++g) cb[g] = rng.unit_disc();
  ca /= ca.cwiseAbs().maxCoeff();
  cb /= cb.cwiseAbs().maxCoeff();

  const BivariatePoly A = bivariate_from_section(SectionC{fa, ca});
  const BivariatePoly B = bivariate_from_section(SectionC{fb, cb});
  const CommonRoots crossings = common_roots(A, B, 50.0);
  REQUIRE(!crossings.positive_dimensional);
  CHECK(crossings.points.size() == 50);
  for (const auto& z : crossings.points) {
    CHECK(std::abs(A.eval(z[0], z[1])) <= 1e-7);
    CHECK(std::abs(B.eval(z[0], z[1])) <= 1e-7);
  }
}

TEST_CASE("double-line control: weakly defective with the singular line located") {
  const SingularityReport report = check_weak_defectivity(Format({2}, {2}), 2, 31);
  CHECK(report.certification == Certification::certified);
  CHECK(report.method == "resultant");
  CHECK(report.positive_dimensional);
  CHECK(!report.extra_singularities.empty());
  CHECK(report.weakly_defective);
  CHECK(!ordinary_double_points_only(report));
  // Both imposed Hessians are degenerate along the line.
  for (bool ok : report.hessian_ok) CHECK(!ok);
}

TEST_CASE("(4,5) contact section at 9 points has ordinary double points only") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const SingularityReport report = check_weak_defectivity(Format({1, 1}, {4, 5}), 9, seed);
    CHECK(report.certification == Certification::certified);
    CHECK(!report.positive_dimensional);
    CHECK(report.kernel_dim == 3);
    CHECK(report.hessian_ok.size() == 9);
    for (bool ok : report.hessian_ok) CHECK(ok);
    CHECK(report.extra_singularities.empty());
    CHECK(!report.weakly_defective);
    CHECK(ordinary_double_points_only(report));
  }
}

TEST_CASE("npoints = 0: a generic section is smooth") {
  const SingularityReport r2 = check_weak_defectivity(Format({1, 1}, {3, 3}), 0, 5);
  CHECK(r2.hessian_ok.empty());
  CHECK(r2.extra_singularities.empty());
  CHECK(!r2.weakly_defective);

  WeakDefectOptions cheap;
  cheap.starts = 60;
  const SingularityReport r3 = check_weak_defectivity(Format({1, 1, 1}, {2, 2, 3}), 0, 5, cheap);
  CHECK(r3.certification == Certification::heuristic);
  CHECK(r3.method == "multistart");
  CHECK(r3.extra_singularities.empty());
}

TEST_CASE("imposed double points really are singular points of the section") {
  ComplexField CF;
  for (const Format& fmt : {Format({1, 1}, {4, 5}), Format({2}, {4})}) {
    MonomialBasis b(fmt);
    Rng rng = Rng::stream(99, 7);
    DoublePointsC pts;
    for (int i = 0; i < 3; ++i) pts.free_pts.push_back(random_point(CF, fmt, rng));
    const SectionC s = kernel_section(fmt, pts, 99);
    for (const auto& p : pts.free_pts) {
      CHECK(std::abs(eval_section(s, b, p)) <= 1e-9 * s.coeffs.norm());
      CHECK(eval_gradient(s, b, p).norm() <= 1e-9 * s.coeffs.norm());
    }
  }
}

TEST_CASE("report flags propagate through ordinary_double_points_only") {
  SingularityReport r(Format({1, 1}, {4, 5}));
  r.hessian_ok = {true, true};
  CHECK(ordinary_double_points_only(r));
  r.certification = Certification::heuristic;
  CHECK(ordinary_double_points_only(r));  // heuristic does not flip the verdict
  r.hessian_ok[1] = false;
  CHECK(!ordinary_double_points_only(r));
  r.hessian_ok[1] = true;
  r.extra_singularities.push_back({});
  CHECK(!ordinary_double_points_only(r));
}
