#pragma once

#include <vector>

#include "wavebox/mesh.hpp"
#include "wavebox/pml.hpp"

namespace wavebox {

enum class BoundaryMode { Fixed, Pml };

// Global equation numbering. Solid displacement equations come first in node
// order, then beam node equations (6 per node), then PML auxiliary unknowns
// (9 per PML-touching node). Fixed DOFs carry -1, nodes outside the active
// element set carry -2.
struct DofMap {
  BoundaryMode mode = BoundaryMode::Fixed;
  std::vector<int> disp;      // 3 * n_nodes -> equation index / -1 / -2
  std::vector<int> aux_base;  // n_nodes -> first of 9 aux equations or -1
  std::vector<int> beam;      // 6 * n_beam_nodes -> equation index
  std::vector<char> elem_active;
  int n_eq = 0;
  int n_free_solid = 0;
  int n_fixed = 0;
  int n_beam_dofs = 0;
  int n_aux = 0;

  int disp_eq(int node, int c) const { return disp[3 * node + c]; }
  int beam_eq(int bnode, int c) const { return beam[6 * bnode + c]; }
  int aux_eq(int node, int k) const {
    const int b = aux_base[node];
    return b < 0 ? -1 : b + k;
  }
};

DofMap build_dof_map(const Mesh& mesh, BoundaryMode mode, const PmlParams& pml,
                     int n_beam_nodes);

}  // namespace wavebox
