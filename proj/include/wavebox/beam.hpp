#pragma once

#include <Eigen/Dense>

#include "wavebox/hex8.hpp"
#include "wavebox/material.hpp"
#include "wavebox/mesh.hpp"

namespace wavebox {

using Mat12 = Eigen::Matrix<double, 12, 12>;

struct BeamMatrices {
  Mat12 K;
  Mat12 M;
};

// 3D Euler-Bernoulli beam with 6 DOFs per node (ux,uy,uz,rx,ry,rz), global
// frame. Lumped mass carries translations and torsion, no bending rotary
// inertia.
BeamMatrices beam3d_matrices(const BeamSection& section, const Vec3& p1, const Vec3& p2,
                             MassScheme scheme = MassScheme::Lumped);

// Rotation whose rows are the beam local axes; local x runs p1 -> p2.
Eigen::Matrix3d beam_local_axes(const Vec3& p1, const Vec3& p2);

// Maps the 12 element DOFs to the displacement of a material point on the
// rigid cross-section: axial station s in [0,1], offset r from the axis in
// global coordinates.
Eigen::Matrix<double, 3, 12> beam_point_map(const Vec3& p1, const Vec3& p2, double s,
                                            const Vec3& r);

}  // namespace wavebox
