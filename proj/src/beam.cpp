#include "wavebox/beam.hpp"

#include <cmath>

namespace wavebox {

Eigen::Matrix3d beam_local_axes(const Vec3& p1, const Vec3& p2) {
  const Vec3 axis = p2 - p1;
  const double L = axis.norm();
  require(L > 1e-12, "beam.length", "beam element has coincident end nodes");
  const Vec3 ex = axis / L;
  Vec3 ref = Vec3::UnitZ();
  if (std::abs(ex.dot(ref)) > 0.999) ref = Vec3::UnitX();
  Vec3 ez = ex.cross(ref).normalized();
  const Vec3 ey = ez.cross(ex);
  Eigen::Matrix3d R;
  R.row(0) = ex;
  R.row(1) = ey;
  R.row(2) = ez;
  return R;
}

namespace {

Mat12 expand_rotation(const Eigen::Matrix3d& R) {
  Mat12 T = Mat12::Zero();
  for (int b = 0; b < 4; ++b) T.block<3, 3>(3 * b, 3 * b) = R;
  return T;
}

}  // namespace

BeamMatrices beam3d_matrices(const BeamSection& s, const Vec3& p1, const Vec3& p2,
                             MassScheme scheme) {
  s.validate();
  const double L = (p2 - p1).norm();
  require(L > 1e-12, "beam.length", "beam element has coincident end nodes");
  const double L2 = L * L;
  const double EA = s.E * s.A, GJ = s.G() * s.J;
  const double EIy = s.E * s.Iy, EIz = s.E * s.Iz;

  Mat12 K = Mat12::Zero();
  K(0, 0) = K(6, 6) = EA / L;
  K(0, 6) = K(6, 0) = -EA / L;
  K(3, 3) = K(9, 9) = GJ / L;
  K(3, 9) = K(9, 3) = -GJ / L;

  auto bending = [&](double EI, int iv1, int ir1, int iv2, int ir2, double sgn) {
    const double k1 = 12.0 * EI / (L * L2), k2 = 6.0 * EI / L2, k3 = 4.0 * EI / L,
                 k4 = 2.0 * EI / L;
    K(iv1, iv1) += k1;
    K(iv1, ir1) += sgn * k2;
    K(iv1, iv2) += -k1;
    K(iv1, ir2) += sgn * k2;
    K(ir1, iv1) += sgn * k2;
    K(ir1, ir1) += k3;
    K(ir1, iv2) += -sgn * k2;
    K(ir1, ir2) += k4;
    K(iv2, iv1) += -k1;
    K(iv2, ir1) += -sgn * k2;
    K(iv2, iv2) += k1;
    K(iv2, ir2) += -sgn * k2;
    K(ir2, iv1) += sgn * k2;
    K(ir2, ir1) += k4;
    K(ir2, iv2) += -sgn * k2;
    K(ir2, ir2) += k3;
  };
  bending(EIz, 1, 5, 7, 11, +1.0);  // deflection in local y, rotation about z
  bending(EIy, 2, 4, 8, 10, -1.0);  // deflection in local z, rotation about y

  Mat12 M = Mat12::Zero();
  const double mL = s.rho * s.A * L;
  const double jL = s.rho * s.J * L;
  if (scheme == MassScheme::Lumped) {
    for (int n = 0; n < 2; ++n) {
      for (int c = 0; c < 3; ++c) M(6 * n + c, 6 * n + c) = 0.5 * mL;
      M(6 * n + 3, 6 * n + 3) = 0.5 * jL;
    }
  } else {
    M(0, 0) = M(6, 6) = mL / 3.0;
    M(0, 6) = M(6, 0) = mL / 6.0;
    M(3, 3) = M(9, 9) = jL / 3.0;
    M(3, 9) = M(9, 3) = jL / 6.0;
    auto bend_mass = [&](int iv1, int ir1, int iv2, int ir2, double sgn) {
      const double c = mL / 420.0;
      M(iv1, iv1) += 156 * c;
      M(iv1, ir1) += sgn * 22 * L * c;
      M(iv1, iv2) += 54 * c;
      M(iv1, ir2) += -sgn * 13 * L * c;
      M(ir1, iv1) += sgn * 22 * L * c;
      M(ir1, ir1) += 4 * L2 * c;
      M(ir1, iv2) += sgn * 13 * L * c;
      M(ir1, ir2) += -3 * L2 * c;
      M(iv2, iv1) += 54 * c;
      M(iv2, ir1) += sgn * 13 * L * c;
      M(iv2, iv2) += 156 * c;
      M(iv2, ir2) += -sgn * 22 * L * c;
      M(ir2, iv1) += -sgn * 13 * L * c;
      M(ir2, ir1) += -3 * L2 * c;
      M(ir2, iv2) += -sgn * 22 * L * c;
      M(ir2, ir2) += 4 * L2 * c;
    };
    bend_mass(1, 5, 7, 11, +1.0);
    bend_mass(2, 4, 8, 10, -1.0);
  }

  const Mat12 T = expand_rotation(beam_local_axes(p1, p2));
  BeamMatrices out;
  out.K = T.transpose() * K * T;
  out.M = T.transpose() * M * T;
  return out;
}

Eigen::Matrix<double, 3, 12> beam_point_map(const Vec3& p1, const Vec3& p2, double s,
                                            const Vec3& r) {
  const double L = (p2 - p1).norm();
  require(L > 1e-12, "beam.length", "beam element has coincident end nodes");
  const Eigen::Matrix3d R = beam_local_axes(p1, p2);
  const double x = s;
  const double H1 = 1.0 - 3 * x * x + 2 * x * x * x;
  const double H2 = L * (x - 2 * x * x + x * x * x);
  const double H3 = 3 * x * x - 2 * x * x * x;
  const double H4 = L * (-x * x + x * x * x);
  const double dH1 = (-6 * x + 6 * x * x) / L;
  const double dH2 = 1.0 - 4 * x + 3 * x * x;
  const double dH3 = (6 * x - 6 * x * x) / L;
  const double dH4 = -2 * x + 3 * x * x;

  // Axis displacement and rotation in local frame from local DOFs.
  Eigen::Matrix<double, 3, 12> U = Eigen::Matrix<double, 3, 12>::Zero();
  Eigen::Matrix<double, 3, 12> TH = Eigen::Matrix<double, 3, 12>::Zero();
  U(0, 0) = 1.0 - x;
  U(0, 6) = x;
  U(1, 1) = H1;
  U(1, 5) = H2;
  U(1, 7) = H3;
  U(1, 11) = H4;
  U(2, 2) = H1;
  U(2, 4) = -H2;
  U(2, 8) = H3;
  U(2, 10) = -H4;
  TH(0, 3) = 1.0 - x;
  TH(0, 9) = x;
  // theta_y = -du_z/dx, theta_z = du_y/dx
  TH(1, 2) = -dH1;
  TH(1, 4) = dH2;
  TH(1, 8) = -dH3;
  TH(1, 10) = dH4;
  TH(2, 1) = dH1;
  TH(2, 5) = dH2;
  TH(2, 7) = dH3;
  TH(2, 11) = dH4;

  const Vec3 r_local = R * r;
  // u_point = u_axis + theta x r
  Eigen::Matrix3d rx;
  rx << 0, -r_local.z(), r_local.y(), r_local.z(), 0, -r_local.x(), -r_local.y(), r_local.x(), 0;
  const Eigen::Matrix<double, 3, 12> P_local = U - rx * TH;  // (theta x r) = -r x theta

  Mat12 T = Mat12::Zero();
  for (int b = 0; b < 4; ++b) T.block<3, 3>(3 * b, 3 * b) = R;
  return R.transpose() * P_local * T;
}

}  // namespace wavebox
