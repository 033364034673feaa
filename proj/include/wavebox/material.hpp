#pragma once

#include <cmath>

#include "wavebox/error.hpp"

namespace wavebox {

// Linear isotropic elastic solid. SI units throughout (Pa, kg/m^3).
struct ElasticMaterial {
  double E = 0.0;
  double nu = 0.0;
  double rho = 0.0;

  void validate() const {
    require(E > 0.0, "material.E", "elastic modulus must be positive");
    require(nu > -1.0 && nu < 0.5, "material.nu", "Poisson ratio must lie in (-1, 0.5)");
    require(rho > 0.0, "material.rho", "density must be positive");
  }

  double lambda() const { return nu * E / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
  double mu() const { return 0.5 * E / (1.0 + nu); }
};

struct WaveSpeeds {
  double vp = 0.0;
  double vs = 0.0;
};

// Vs from the shear modulus, Vp from the constrained modulus.
inline WaveSpeeds wave_speeds(const ElasticMaterial& m) {
  m.validate();
  const double mu = m.mu();
  const double constrained = m.E * (1.0 - m.nu) / ((1.0 + m.nu) * (1.0 - 2.0 * m.nu));
  return {std::sqrt(constrained / m.rho), std::sqrt(mu / m.rho)};
}

// Euler-Bernoulli beam section. Torsion uses G from (E, nu).
struct BeamSection {
  double E = 0.0;
  double nu = 0.0;
  double rho = 0.0;
  double A = 0.0;
  double Iy = 0.0;
  double Iz = 0.0;
  double J = 0.0;

  void validate() const {
    require(E > 0.0, "beam.E", "beam modulus must be positive");
    require(nu > -1.0 && nu < 0.5, "beam.nu", "beam Poisson ratio must lie in (-1, 0.5)");
    require(rho > 0.0, "beam.rho", "beam density must be positive");
    require(A > 0.0 && Iy > 0.0 && Iz > 0.0 && J > 0.0, "beam.section",
            "section properties must be positive");
  }

  double G() const { return 0.5 * E / (1.0 + nu); }

  static BeamSection circular(double E, double nu, double rho, double diameter) {
    BeamSection s;
    s.E = E;
    s.nu = nu;
    s.rho = rho;
    const double d2 = diameter * diameter;
    s.A = M_PI * d2 / 4.0;
    s.Iy = M_PI * d2 * d2 / 64.0;
    s.Iz = s.Iy;
    s.J = M_PI * d2 * d2 / 32.0;
    return s;
  }
};

// Mass applied to the three translational DOFs of a node.
struct LumpedMass {
  int node = -1;      // beam node index when on_beam, else mesh node id
  bool on_beam = false;
  double mass = 0.0;  // kg

  void validate() const { require(mass >= 0.0, "lumped.mass", "lumped mass must be non-negative"); }
};

}  // namespace wavebox
