#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "wavebox/hex8.hpp"
#include "wavebox/material.hpp"
#include "wavebox/mesh.hpp"

namespace wavebox {

// Complex-coordinate-stretching absorbing layer. Each PML node carries, next
// to its displacement, nine auxiliary unknowns: six twice-integrated stress
// components and the three-component time integral of the displacement. That
// turns the stretched equations into a plain second-order M,C,K system with
// no per-step history convolution.
struct PmlParams {
  int n_layers = 2;
  double L = 0.0;        // layer thickness per face, n_layers * h
  double alpha0 = 0.0;   // evanescent-stretching amplitude (dimensionless)
  double beta0 = 0.0;    // attenuation amplitude (1/s)
  int m = 2;             // polynomial degree of the profile
  double R_target = 0.05;

  void validate() const {
    require(n_layers >= 1, "pml.layers", "PML needs at least one layer");
    require(L > 0.0, "pml.L", "PML thickness must be positive");
    require(alpha0 >= 0.0 && beta0 >= 0.0, "pml.amplitude", "stretching amplitudes must be >= 0");
    require(m >= 1, "pml.degree", "profile degree must be >= 1");
    require(R_target > 0.0 && R_target < 1.0, "pml.R", "target reflection must lie in (0,1)");
  }

  // Classical log-reflection sizing: amplitudes from the target reflection
  // coefficient, profile degree, layer thickness and the reference P speed.
  static PmlParams from_reflection(int n_layers, double h, int m, double R_target, double cp) {
    PmlParams p;
    p.n_layers = n_layers;
    p.L = n_layers * h;
    p.m = m;
    p.R_target = R_target;
    const double lg = std::log(1.0 / R_target);
    p.alpha0 = 0.5 * (m + 1) * lg;
    p.beta0 = 0.5 * (m + 1) * cp * lg / p.L;
    return p;
  }
};

// alpha = 1 + alpha0 (xi/L)^m, beta = beta0 (xi/L)^m for penetration xi.
std::pair<double, double> stretching_profile(double xi, double L, double alpha0, double beta0,
                                             int m);

// Per-node unknown layout inside the PML: [sxx syy szz sxy syz szx | wx wy wz].
inline constexpr int kPmlAuxPerNode = 9;

// 96x96 element operators over [u(24) | sigma(48) | w(24)], field-major.
struct PmlElementMatrices {
  Eigen::MatrixXd M;
  Eigen::MatrixXd C;
  Eigen::MatrixXd K;
};

// The regular-domain box (outer DRM boundary) defines where stretching
// starts; no stretching acts upward since the free surface carries no PML.
PmlElementMatrices pml_element_matrices(const std::array<Vec3, 8>& coords,
                                        const ElasticMaterial& mat, const PmlParams& params,
                                        const Box3& regular_box,
                                        MassScheme scheme = MassScheme::Lumped);

// Auxiliary-unknown map: for every node touching a PML element, the base
// index of its 9 auxiliary unknowns within the auxiliary block.
struct PmlDofs {
  std::vector<int> aux_base;  // per mesh node; -1 when the node carries none
  int n_aux_nodes = 0;
  int n_aux = 0;  // 9 * n_aux_nodes
};

PmlDofs attach_pml_dofs(const Mesh& mesh, const PmlParams& params);

}  // namespace wavebox
