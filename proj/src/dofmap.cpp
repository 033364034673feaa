#include "wavebox/dofmap.hpp"

#include <cmath>

namespace wavebox {

DofMap build_dof_map(const Mesh& mesh, BoundaryMode mode, const PmlParams& pml,
                     int n_beam_nodes) {
  require(mesh.classified(), "dofmap.mesh", "regions must be classified first");
  require(mode == BoundaryMode::Fixed || mesh.n_pml > 0, "dofmap.mode",
          "pml boundary mode requires at least one PML layer");

  DofMap map;
  map.mode = mode;
  map.elem_active.assign(mesh.n_elems(), 0);
  for (int e = 0; e < mesh.n_elems(); ++e)
    map.elem_active[e] = (mode == BoundaryMode::Pml) ? 1 : !mesh.region[e].is_pml();

  std::vector<char> active(mesh.n_nodes(), 0);
  for (int e = 0; e < mesh.n_elems(); ++e)
    if (map.elem_active[e])
      for (int n : mesh.elems[e]) active[n] = 1;

  // Clamp the lateral faces and the bottom of the active region's outer box;
  // the top surface stays free.
  const Box3& clamp = (mode == BoundaryMode::Pml) ? mesh.outer_box : mesh.drm_box;
  const double tol = 1e-9 * std::max(1.0, mesh.h);
  auto clamped = [&](const Vec3& p) {
    if (p.z() > 1e-12) return false;  // structure nodes above the surface
    return std::abs(p.x() - clamp.lo.x()) < tol || std::abs(p.x() - clamp.hi.x()) < tol ||
           std::abs(p.y() - clamp.lo.y()) < tol || std::abs(p.y() - clamp.hi.y()) < tol ||
           std::abs(p.z() - clamp.lo.z()) < tol;
  };

  map.disp.assign(3 * mesh.n_nodes(), -2);
  int eq = 0;
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    if (!active[n]) continue;
    if (clamped(mesh.nodes[n])) {
      for (int c = 0; c < 3; ++c) map.disp[3 * n + c] = -1;
      ++map.n_fixed;
    } else {
      for (int c = 0; c < 3; ++c) map.disp[3 * n + c] = eq++;
    }
  }
  map.n_free_solid = eq;

  map.beam.assign(6 * n_beam_nodes, -1);
  for (int i = 0; i < 6 * n_beam_nodes; ++i) map.beam[i] = eq++;
  map.n_beam_dofs = 6 * n_beam_nodes;

  map.aux_base.assign(mesh.n_nodes(), -1);
  if (mode == BoundaryMode::Pml) {
    const PmlDofs aux = attach_pml_dofs(mesh, pml);
    for (int n = 0; n < mesh.n_nodes(); ++n)
      if (aux.aux_base[n] >= 0) {
        map.aux_base[n] = eq;
        eq += kPmlAuxPerNode;
      }
    map.n_aux = aux.n_aux;
  }
  map.n_eq = eq;
  return map;
}

}  // namespace wavebox
