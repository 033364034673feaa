#include "wavebox/newmark.hpp"

#include <cmath>

namespace wavebox {

void LinearFactor::factorize(const SpMat& A, bool symmetric) {
  symmetric_ = symmetric;
  if (symmetric) {
    ldlt_ = std::make_unique<Eigen::SimplicialLDLT<SpMat>>();
    ldlt_->compute(A);
    require(ldlt_->info() == Eigen::Success, "solver.factor",
            "LDLT factorization failed (singular constrained system?)");
  } else {
    lu_ = std::make_unique<Eigen::SparseLU<SpMat>>();
    lu_->compute(A);
    require(lu_->info() == Eigen::Success, "solver.factor",
            "sparse LU factorization failed (singular constrained system?)");
  }
}

Eigen::VectorXd LinearFactor::solve(const Eigen::VectorXd& b) const {
  return symmetric_ ? ldlt_->solve(b) : lu_->solve(b);
}

Eigen::VectorXd static_solve(const SystemMatrices& sys, const Eigen::VectorXd& f) {
  SpMat K = sys.combine(0.0, 0.0, 1.0);
  LinearFactor factor;
  factor.factorize(K, sys.symmetric);
  return factor.solve(f);
}

TransientSolver::TransientSolver(const SystemMatrices& sys, const NewmarkConfig& cfg)
    : sys_(sys), cfg_(cfg) {
  cfg_.validate();
  const double dt = cfg_.dt;
  SpMat A = sys_.combine(1.0, cfg_.gamma * dt, cfg_.beta * dt * dt);
  factor_.factorize(A, sys_.symmetric && !sys_.has_damping);
  state_.u = Eigen::VectorXd::Zero(sys_.n);
  state_.v = Eigen::VectorXd::Zero(sys_.n);
  state_.a = Eigen::VectorXd::Zero(sys_.n);
}

void TransientSolver::run(const std::function<void(int, Eigen::VectorXd&)>& f_ext,
                          const std::function<void(int, double, const StepState&)>& on_step) {
  const double dt = cfg_.dt, beta = cfg_.beta, gamma = cfg_.gamma;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(sys_.n);
  Eigen::VectorXd rhs(sys_.n), u_pred(sys_.n), v_pred(sys_.n);

  for (int step = 0; step < cfg_.n_steps; ++step) {
    u_pred = state_.u + dt * state_.v + (0.5 - beta) * dt * dt * state_.a;
    v_pred = state_.v + (1.0 - gamma) * dt * state_.a;

    f.setZero();
    if (f_ext) f_ext(step, f);

    sys_.newmark_rhs(f, u_pred, v_pred, rhs);
    state_.a = factor_.solve(rhs);
    state_.u = u_pred + beta * dt * dt * state_.a;
    state_.v = v_pred + gamma * dt * state_.a;

    const double anorm = state_.a.norm();
    require(std::isfinite(anorm), "newmark.diverged",
            "non-finite state at step " + std::to_string(step));

    if (residual_every > 0 && (step % residual_every == 0 || step == cfg_.n_steps - 1)) {
      Eigen::VectorXd r = -f;
      sys_.multiply_add(sys_.M, state_.a, r);
      sys_.multiply_add(sys_.C, state_.v, r);
      sys_.multiply_add(sys_.K, state_.u, r);
      Eigen::VectorXd ku = Eigen::VectorXd::Zero(sys_.n);
      sys_.multiply_add(sys_.K, state_.u, ku);
      const double denom = std::max({f.norm(), ku.norm(), 1e-30});
      const double rel = r.norm() / denom;
      max_residual = std::max(max_residual, rel);
      require(rel < 1e-6, "newmark.residual",
              "discrete balance residual too large at step " + std::to_string(step));
    }

    if (on_step) on_step(step, (step + 1) * dt, state_);
  }
}

}  // namespace wavebox
