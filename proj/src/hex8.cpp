#include "wavebox/hex8.hpp"

#include <cmath>

namespace wavebox {

void hex8_shape(const Vec3& xi, Eigen::Matrix<double, 8, 1>& N, Eigen::Matrix<double, 8, 3>& dN) {
  static const double sx[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
  static const double sy[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
  static const double sz[8] = {-1, -1, -1, -1, 1, 1, 1, 1};
  for (int a = 0; a < 8; ++a) {
    const double fx = 1.0 + sx[a] * xi.x();
    const double fy = 1.0 + sy[a] * xi.y();
    const double fz = 1.0 + sz[a] * xi.z();
    N(a) = 0.125 * fx * fy * fz;
    dN(a, 0) = 0.125 * sx[a] * fy * fz;
    dN(a, 1) = 0.125 * fx * sy[a] * fz;
    dN(a, 2) = 0.125 * fx * fy * sz[a];
  }
}

const std::array<Vec3, 8>& hex8_gauss_points() {
  static const double g = 1.0 / std::sqrt(3.0);
  static const std::array<Vec3, 8> pts = [] {
    std::array<Vec3, 8> p;
    const double gg = 1.0 / std::sqrt(3.0);
    int q = 0;
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i)
          p[q++] = Vec3(i ? gg : -gg, j ? gg : -gg, k ? gg : -gg);
    return p;
  }();
  (void)g;
  return pts;
}

double hex8_gauss_weight() { return 1.0; }

Eigen::Matrix3d hex8_jacobian(const std::array<Vec3, 8>& coords,
                              const Eigen::Matrix<double, 8, 3>& dN) {
  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 8; ++a) J += coords[a] * dN.row(a);  // J(i,j) = dx_i/dxi_j
  return J;
}

Mat24 hex8_stiffness(const std::array<Vec3, 8>& coords, const ElasticMaterial& mat) {
  mat.validate();
  const double lam = mat.lambda();
  const double mu = mat.mu();
  Eigen::Matrix<double, 6, 6> C = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) C(i, j) = (i == j) ? lam + 2.0 * mu : lam;
  for (int i = 3; i < 6; ++i) C(i, i) = mu;  // engineering shear strains

  Mat24 K = Mat24::Zero();
  Eigen::Matrix<double, 8, 1> N;
  Eigen::Matrix<double, 8, 3> dN;
  for (const auto& gp : hex8_gauss_points()) {
    hex8_shape(gp, N, dN);
    const Eigen::Matrix3d J = hex8_jacobian(coords, dN);
    const double det = J.determinant();
    require(det > 0.0, "hex8.jacobian", "element has non-positive Jacobian");
    const Eigen::Matrix<double, 8, 3> g = dN * J.inverse();  // dN/dx

    Eigen::Matrix<double, 6, 24> B = Eigen::Matrix<double, 6, 24>::Zero();
    for (int a = 0; a < 8; ++a) {
      const int c = 3 * a;
      B(0, c + 0) = g(a, 0);
      B(1, c + 1) = g(a, 1);
      B(2, c + 2) = g(a, 2);
      B(3, c + 0) = g(a, 1);
      B(3, c + 1) = g(a, 0);
      B(4, c + 1) = g(a, 2);
      B(4, c + 2) = g(a, 1);
      B(5, c + 0) = g(a, 2);
      B(5, c + 2) = g(a, 0);
    }
    K.noalias() += B.transpose() * C * B * det;
  }
  return K;
}

Mat24 hex8_mass(const std::array<Vec3, 8>& coords, double rho, MassScheme scheme) {
  require(rho > 0.0, "hex8.rho", "density must be positive");
  Mat24 M = Mat24::Zero();
  Eigen::Matrix<double, 8, 1> N;
  Eigen::Matrix<double, 8, 3> dN;
  for (const auto& gp : hex8_gauss_points()) {
    hex8_shape(gp, N, dN);
    const Eigen::Matrix3d J = hex8_jacobian(coords, dN);
    const double det = J.determinant();
    require(det > 0.0, "hex8.jacobian", "element has non-positive Jacobian");
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        const double m = rho * N(a) * N(b) * det;
        for (int c = 0; c < 3; ++c) M(3 * a + c, 3 * b + c) += m;
      }
  }
  if (scheme == MassScheme::Lumped) {
    Mat24 L = Mat24::Zero();
    for (int r = 0; r < 24; ++r) L(r, r) = M.row(r).sum();
    return L;
  }
  return M;
}

}  // namespace wavebox
