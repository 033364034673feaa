#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wavebox/dofmap.hpp"
#include "wavebox/system.hpp"

namespace wavebox {

struct NewmarkConfig {
  double beta = 0.25;
  double gamma = 0.5;
  double dt = 0.005;
  int n_steps = 1000;

  void validate() const {
    require(dt > 0.0 && n_steps > 0, "newmark.config", "dt and n_steps must be positive");
    require(gamma >= 0.5, "newmark.config", "gamma below 0.5 is unstable");
    require(beta + 1e-12 >= 0.25 * (0.5 + gamma) * (0.5 + gamma), "newmark.config",
            "beta violates the unconditional-stability bound");
  }
};

// Direct factorization, LDLT for the undamped symmetric case, LU otherwise.
class LinearFactor {
public:
  void factorize(const SpMat& A, bool symmetric);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  bool symmetric() const { return symmetric_; }

private:
  bool symmetric_ = false;
  std::unique_ptr<Eigen::SimplicialLDLT<SpMat>> ldlt_;
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;
};

// K u = f with the assembled stiffness stream.
Eigen::VectorXd static_solve(const SystemMatrices& sys, const Eigen::VectorXd& f);

struct StepState {
  Eigen::VectorXd u, v, a;
};

// Implicit Newmark loop. The effective operator is factored once; each step
// solves for the acceleration. f_ext fills the external force at t_{n+1};
// on_step observes the state after the update.
class TransientSolver {
public:
  TransientSolver(const SystemMatrices& sys, const NewmarkConfig& cfg);

  void run(const std::function<void(int step, Eigen::VectorXd& f)>& f_ext,
           const std::function<void(int step, double t, const StepState& s)>& on_step);

  // Relative residual of the discrete balance, sampled every residual_every
  // steps (0 disables).
  int residual_every = 25;
  double max_residual = 0.0;

  const StepState& state() const { return state_; }
  StepState& state() { return state_; }

private:
  const SystemMatrices& sys_;
  NewmarkConfig cfg_;
  LinearFactor factor_;
  StepState state_;
};

}  // namespace wavebox
