#include "wavebox/pml.hpp"

#include <cmath>

namespace wavebox {

std::pair<double, double> stretching_profile(double xi, double L, double alpha0, double beta0,
                                             int m) {
  require(L > 0.0, "pml.L", "PML thickness must be positive");
  require(xi >= -1e-12 && xi <= L * (1.0 + 1e-9), "pml.xi",
          "normal distance lies outside the PML thickness");
  const double t = std::pow(std::max(xi, 0.0) / L, m);
  return {1.0 + alpha0 * t, beta0 * t};
}

namespace {

// 3x3x3 Gauss rule; the stretched coefficients are quartic in the normal
// coordinate for the default quadratic profile.
struct GaussRule27 {
  std::array<Vec3, 27> pts;
  std::array<double, 27> wts;
  GaussRule27() {
    const double x[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    const double w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    int q = 0;
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
          pts[q] = Vec3(x[i], x[j], x[k]);
          wts[q] = w[i] * w[j] * w[k];
          ++q;
        }
  }
};

const GaussRule27& gauss27() {
  static const GaussRule27 rule;
  return rule;
}

constexpr int kV[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {2, 0}};

}  // namespace

PmlElementMatrices pml_element_matrices(const std::array<Vec3, 8>& coords,
                                        const ElasticMaterial& mat, const PmlParams& params,
                                        const Box3& regular_box, MassScheme scheme) {
  mat.validate();
  params.validate();

  // Tensor-component compliance and its inverse (shear rows on tensor shear).
  Eigen::Matrix<double, 6, 6> D = Eigen::Matrix<double, 6, 6>::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D(i, j) = (i == j ? 1.0 : -mat.nu) / mat.E;
  for (int i = 3; i < 6; ++i) D(i, i) = (1.0 + mat.nu) / mat.E;
  Eigen::Matrix<double, 6, 6> Cbar = Eigen::Matrix<double, 6, 6>::Zero();
  const double lam = mat.lambda(), mu = mat.mu();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Cbar(i, j) = (i == j) ? lam + 2.0 * mu : lam;
  for (int i = 3; i < 6; ++i) Cbar(i, i) = 2.0 * mu;

  const double s_sigma = mat.E;  // row scale of the constitutive block
  const double s_w = mat.E;      // row scale of the integral-update block

  PmlElementMatrices out;
  out.M = Eigen::MatrixXd::Zero(96, 96);
  out.C = Eigen::MatrixXd::Zero(96, 96);
  out.K = Eigen::MatrixXd::Zero(96, 96);
  auto U = [](int node, int c) { return 3 * node + c; };
  auto S = [](int node, int v) { return 24 + 6 * node + v; };
  auto Wd = [](int node, int c) { return 72 + 3 * node + c; };

  Eigen::Matrix<double, 8, 1> N;
  Eigen::Matrix<double, 8, 3> dN;
  double max_pen = 0.0;

  for (int q = 0; q < 27; ++q) {
    hex8_shape(gauss27().pts[q], N, dN);
    const Eigen::Matrix3d J = hex8_jacobian(coords, dN);
    const double det = J.determinant();
    require(det > 0.0, "pml.jacobian", "element has non-positive Jacobian");
    const Eigen::Matrix<double, 8, 3> g = dN * J.inverse();
    const double W = gauss27().wts[q] * det;

    Vec3 x = Vec3::Zero();
    for (int a = 0; a < 8; ++a) x += N(a) * coords[a];

    double alpha[3], beta[3];
    for (int ax = 0; ax < 3; ++ax) {
      double pen = std::max(regular_box.lo[ax] - x[ax], 0.0);
      if (ax < 2) pen = std::max(pen, x[ax] - regular_box.hi[ax]);
      max_pen = std::max(max_pen, pen);
      const auto ab = stretching_profile(pen, params.L, params.alpha0, params.beta0, params.m);
      alpha[ax] = ab.first;
      beta[ax] = ab.second;
    }

    const double ca = alpha[0] * alpha[1] * alpha[2];
    const double cb = alpha[0] * alpha[1] * beta[2] + alpha[0] * alpha[2] * beta[1] +
                      alpha[1] * alpha[2] * beta[0];
    const double cc = alpha[0] * beta[1] * beta[2] + alpha[1] * beta[0] * beta[2] +
                      alpha[2] * beta[0] * beta[1];
    const double cd = beta[0] * beta[1] * beta[2];
    double Aj[3], Bj[3], Cj[3];
    for (int j = 0; j < 3; ++j) {
      const int k = (j + 1) % 3, l = (j + 2) % 3;
      Aj[j] = alpha[k] * alpha[l];
      Bj[j] = alpha[k] * beta[l] + alpha[l] * beta[k];
      Cj[j] = beta[k] * beta[l];
    }
    double pV[6], qV[6], rV[6];
    for (int v = 0; v < 6; ++v) {
      const int k = kV[v][0], l = kV[v][1];
      pV[v] = alpha[k] * alpha[l];
      qV[v] = alpha[k] * beta[l] + alpha[l] * beta[k];
      rV[v] = beta[k] * beta[l];
    }

    // Tensor-strain operators with alpha/beta weights on the component index.
    Eigen::Matrix<double, 6, 24> Ba = Eigen::Matrix<double, 6, 24>::Zero();
    Eigen::Matrix<double, 6, 24> Bb = Eigen::Matrix<double, 6, 24>::Zero();
    for (int v = 0; v < 6; ++v) {
      const int k = kV[v][0], l = kV[v][1];
      for (int b = 0; b < 8; ++b) {
        Ba(v, 3 * b + k) += 0.5 * alpha[k] * g(b, l);
        Ba(v, 3 * b + l) += 0.5 * alpha[l] * g(b, k);
        Bb(v, 3 * b + k) += 0.5 * beta[k] * g(b, l);
        Bb(v, 3 * b + l) += 0.5 * beta[l] * g(b, k);
      }
    }

    // Weighted divergence operators: row (a,i), column the Voigt component.
    Eigen::Matrix<double, 24, 6> GA = Eigen::Matrix<double, 24, 6>::Zero();
    Eigen::Matrix<double, 24, 6> GB = Eigen::Matrix<double, 24, 6>::Zero();
    Eigen::Matrix<double, 24, 6> GC = Eigen::Matrix<double, 24, 6>::Zero();
    for (int v = 0; v < 6; ++v) {
      const int k = kV[v][0], l = kV[v][1];
      for (int a = 0; a < 8; ++a) {
        GA(3 * a + k, v) += g(a, l) * Aj[l];
        GB(3 * a + k, v) += g(a, l) * Bj[l];
        GC(3 * a + k, v) += g(a, l) * Cj[l];
        if (k != l) {
          GA(3 * a + l, v) += g(a, k) * Aj[k];
          GB(3 * a + l, v) += g(a, k) * Bj[k];
          GC(3 * a + l, v) += g(a, k) * Cj[k];
        }
      }
    }

    // Momentum rows: the twice-integrated stress is substituted through the
    // stretched constitutive relation, so no acceleration coupling remains.
    Eigen::Matrix<double, 6, 6> CbarPinv = Cbar;
    Eigen::Matrix<double, 6, 6> CbarQP = Cbar;
    Eigen::Matrix<double, 6, 6> CbarRP = Cbar;
    for (int v = 0; v < 6; ++v) {
      CbarPinv.col(v) *= 1.0 / pV[v];
      CbarQP.col(v) *= qV[v] / pV[v];
      CbarRP.col(v) *= rV[v] / pV[v];
    }
    const Eigen::Matrix<double, 24, 24> Kuu_q = GA * (CbarPinv * Ba) * W;
    const Eigen::Matrix<double, 24, 24> Kuw_q = GA * (CbarPinv * Bb) * W;
    // DN expands nodal stress to the gauss point through D.
    Eigen::Matrix<double, 24, 48> Cus = Eigen::Matrix<double, 24, 48>::Zero();
    Eigen::Matrix<double, 24, 48> Kus = Eigen::Matrix<double, 24, 48>::Zero();
    const Eigen::Matrix<double, 24, 6> GAQ = GA * (CbarQP * D);
    const Eigen::Matrix<double, 24, 6> GAR = GA * (CbarRP * D);
    for (int b = 0; b < 8; ++b)
      for (int w2 = 0; w2 < 6; ++w2) {
        Cus.col(6 * b + w2) = (-GAQ.col(w2) + GB.col(w2)) * (N(b) * W);
        Kus.col(6 * b + w2) = (-GAR.col(w2) + GC.col(w2)) * (N(b) * W);
      }

    for (int a = 0; a < 8; ++a) {
      for (int c = 0; c < 3; ++c) {
        const int ru = U(a, c);
        if (scheme == MassScheme::Lumped) {
          out.M(ru, ru) += mat.rho * ca * N(a) * W;
          out.C(ru, ru) += mat.rho * cb * N(a) * W;
          out.K(ru, ru) += mat.rho * cc * N(a) * W;
          out.K(ru, Wd(a, c)) += mat.rho * cd * N(a) * W;
        } else {
          for (int b = 0; b < 8; ++b) {
            const double nn = N(a) * N(b) * W * mat.rho;
            out.M(ru, U(b, c)) += ca * nn;
            out.C(ru, U(b, c)) += cb * nn;
            out.K(ru, U(b, c)) += cc * nn;
            out.K(ru, Wd(b, c)) += cd * nn;
          }
        }
      }
    }
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 24; ++b) {
        out.K(a, b) += Kuu_q(a, b);
        out.K(a, 72 + b) += Kuw_q(a, b);
      }
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 48; ++b) {
        out.C(a, 24 + b) += Cus(a, b);
        out.K(a, 24 + b) += Kus(a, b);
      }

    // Constitutive rows, collocated at nodes (row-sum lumped in the trial
    // stress and the strain tested with the nodal weight).
    for (int a = 0; a < 8; ++a) {
      const double wa = N(a) * W * s_sigma;
      for (int v = 0; v < 6; ++v) {
        for (int w2 = 0; w2 < 6; ++w2) {
          out.M(S(a, v), S(a, w2)) += wa * pV[v] * D(v, w2);
          out.C(S(a, v), S(a, w2)) += wa * qV[v] * D(v, w2);
          out.K(S(a, v), S(a, w2)) += wa * rV[v] * D(v, w2);
        }
        for (int bc = 0; bc < 24; ++bc) {
          out.K(S(a, v), bc) -= wa * Ba(v, bc);
          out.K(S(a, v), 72 + bc) -= wa * Bb(v, bc);
        }
      }
      // Integral update rows: dw/dt = u, nodal-collocated.
      for (int c = 0; c < 3; ++c) {
        out.C(Wd(a, c), Wd(a, c)) += N(a) * W * s_w;
        out.K(Wd(a, c), U(a, c)) -= N(a) * W * s_w;
      }
    }
  }

  require(max_pen > 0.0, "pml.region", "element lies entirely outside the PML region");
  require(max_pen <= params.L * (1.0 + 1e-9), "pml.region",
          "element extends beyond the configured PML thickness");
  return out;
}

PmlDofs attach_pml_dofs(const Mesh& mesh, const PmlParams& params) {
  params.validate();
  require(mesh.classified(), "pml.mesh", "regions must be classified first");
  PmlDofs dofs;
  dofs.aux_base.assign(mesh.n_nodes(), -1);
  if (mesh.n_pml == 0) return dofs;
  std::vector<char> touched(mesh.n_nodes(), 0);
  for (int e = 0; e < mesh.n_elems(); ++e)
    if (mesh.region[e].is_pml())
      for (int n : mesh.elems[e]) touched[n] = 1;
  for (int n = 0; n < mesh.n_nodes(); ++n)
    if (touched[n]) {
      dofs.aux_base[n] = kPmlAuxPerNode * dofs.n_aux_nodes;
      ++dofs.n_aux_nodes;
    }
  dofs.n_aux = kPmlAuxPerNode * dofs.n_aux_nodes;
  return dofs;
}

}  // namespace wavebox
