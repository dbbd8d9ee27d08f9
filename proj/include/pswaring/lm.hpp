#pragma once

#include <vector>

#include <Eigen/Dense>

namespace pswaring {

// Damped least squares over complex parameters. The residual maps are
// holomorphic, so the complex normal equations (J^H J + lambda D) delta =
// -J^H r coincide with real Levenberg-Marquardt on the real parametrization.
struct LmOptions {
  int max_iters = 600;
  double lambda0 = 1e-3;
  double lambda_up = 10.0;
  double lambda_down = 0.3;
  double lambda_max = 1e14;
  double target = 1e-12;    // stop when the residual norm drops below this
  double step_tol = 1e-15;  // relative step size stall
  // Greedy extrapolation along consecutive accepted steps; residual-only
  // probes that cut through the narrow curved valleys these fits fall into.
  bool extrapolate = true;
  int extrapolate_probes = 8;
};

struct LmResult {
  Eigen::VectorXcd params;
  double residual_norm = 0.0;
  int iters = 0;
  bool reached_target = false;
  // Residual norm after every accepted step, nonincreasing by construction.
  std::vector<double> accepted_history;
};

// Model needs: residual(p) -> VectorXcd and jacobian(p) -> MatrixXcd.
template <class Model>
LmResult lm_minimize(Model&& model, Eigen::VectorXcd p, const LmOptions& opt = {}) {
  LmResult out;
  Eigen::VectorXcd r = model.residual(p);
  double rnorm = r.norm();
  out.accepted_history.push_back(rnorm);

  double lambda = opt.lambda0;
  bool stalled = false;
  int it = 0;
  for (; it < opt.max_iters && rnorm > opt.target && lambda <= opt.lambda_max && !stalled; ++it) {
    const Eigen::MatrixXcd J = model.jacobian(p);
    const Eigen::MatrixXcd JhJ = J.adjoint() * J;
    const Eigen::VectorXcd g = J.adjoint() * r;

    // Marquardt scaling with a floor keeps gauge directions solvable.
    Eigen::VectorXd diag = JhJ.diagonal().real();
    const double dmax = diag.size() ? diag.maxCoeff() : 0.0;
    const double floor_val = std::max(1e-12 * std::max(1.0, dmax), 1e-300);
    for (int i = 0; i < diag.size(); ++i) diag[i] = std::max(diag[i], floor_val);

    bool accepted = false;
    while (!accepted && lambda <= opt.lambda_max) {
      Eigen::MatrixXcd A = JhJ;
      A.diagonal() += (lambda * diag).cast<std::complex<double>>();
      const Eigen::VectorXcd delta = Eigen::LDLT<Eigen::MatrixXcd>(A).solve(-g);
      const Eigen::VectorXcd cand = p + delta;
      const Eigen::VectorXcd rc = model.residual(cand);
      const double cnorm = rc.norm();
      if (cnorm < rnorm) {
        const Eigen::VectorXcd prev = p;
        p = cand;
        r = rc;
        rnorm = cnorm;
        out.accepted_history.push_back(rnorm);
        lambda *= opt.lambda_down;
        accepted = true;
        if (opt.extrapolate) {
          // Double the stride along the accepted direction while it pays.
          Eigen::VectorXcd dir = p - prev;
          for (int probe = 0; probe < opt.extrapolate_probes; ++probe) {
            dir *= 2.0;
            const Eigen::VectorXcd far = p + dir;
            const Eigen::VectorXcd rf = model.residual(far);
            const double fnorm = rf.norm();
            if (fnorm >= rnorm) break;
            p = far;
            r = rf;
            rnorm = fnorm;
            out.accepted_history.push_back(rnorm);
          }
        }
        if (delta.norm() <= opt.step_tol * (1.0 + p.norm())) stalled = true;
      } else {
        lambda *= opt.lambda_up;
      }
    }
  }

  out.params = std::move(p);
  out.residual_norm = rnorm;
  out.iters = it;
  out.reached_target = rnorm <= opt.target;
  return out;
}

}  // namespace pswaring
