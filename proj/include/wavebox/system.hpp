#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "wavebox/error.hpp"

namespace wavebox {

using SpMat = Eigen::SparseMatrix<double>;

// Mass, damping and stiffness share one CSR pattern; the three value streams
// stay aligned so per-step products walk the memory once.
struct SystemMatrices {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> M, C, K;
  bool has_damping = false;
  bool symmetric = true;

  std::size_t nnz() const { return col_idx.size(); }

  // y += s * (stream * x)
  void multiply_add(const std::vector<double>& stream, const Eigen::VectorXd& x,
                    Eigen::VectorXd& y, double s = 1.0) const;

  // y = f - C*v - K*u in one sweep
  void newmark_rhs(const Eigen::VectorXd& f, const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                   Eigen::VectorXd& y) const;

  // 0.5 v'Mv + 0.5 u'Ku
  double energy(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  SpMat combine(double cm, double cc, double ck) const;

  double coeff(const std::vector<double>& stream, int r, int c) const;
};

// One additive contribution to the global system. Dof entries below zero mark
// constrained or inactive slots and are dropped. Empty matrices mean "no
// contribution to that stream"; diagonal-only mass may use the vector form.
struct ElementBlock {
  std::vector<int> dofs;
  Eigen::MatrixXd M, C, K;
  Eigen::VectorXd Mdiag;

  void clear() {
    dofs.clear();
    M.resize(0, 0);
    C.resize(0, 0);
    K.resize(0, 0);
    Mdiag.resize(0);
  }
};

using BlockFn = std::function<void(int item, ElementBlock& out)>;

// Execution plan for assembly: items are processed chunk by chunk; inside a
// chunk every rank's worker computes its own items, then one thread folds the
// chunk in ascending item order. Results are therefore bit-identical for any
// worker count.
struct AssemblyPlan {
  int n_items = 0;
  std::vector<int> rank;  // per item; empty means all rank 0
  int n_workers = 1;
  int chunk_size = 128;
};

SystemMatrices assemble(int n_eq, const AssemblyPlan& plan, const BlockFn& fn);

}  // namespace wavebox
