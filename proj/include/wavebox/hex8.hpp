#pragma once

#include <Eigen/Dense>
#include <array>

#include "wavebox/material.hpp"
#include "wavebox/mesh.hpp"

namespace wavebox {

using Mat24 = Eigen::Matrix<double, 24, 24>;

enum class MassScheme { Lumped, Consistent };

// Trilinear shape functions and parent-space gradients at (xi, eta, zeta).
void hex8_shape(const Vec3& xi, Eigen::Matrix<double, 8, 1>& N, Eigen::Matrix<double, 8, 3>& dN);

// 2x2x2 Gauss rule on [-1,1]^3.
const std::array<Vec3, 8>& hex8_gauss_points();
double hex8_gauss_weight();

// Jacobian of the trilinear map at a parent point; det must be positive.
Eigen::Matrix3d hex8_jacobian(const std::array<Vec3, 8>& coords,
                              const Eigen::Matrix<double, 8, 3>& dN);

// Full 2x2x2 integrated stiffness. Throws on non-positive Jacobian.
Mat24 hex8_stiffness(const std::array<Vec3, 8>& coords, const ElasticMaterial& mat);

// Mass matrix; lumped variant is the row-sum diagonal.
Mat24 hex8_mass(const std::array<Vec3, 8>& coords, double rho, MassScheme scheme);

// DOF layout of the 24-vectors: node-major, (ux, uy, uz) per node.

}  // namespace wavebox
