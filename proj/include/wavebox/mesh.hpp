#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wavebox/error.hpp"

namespace wavebox {

using Vec3 = Eigen::Vector3d;

struct Box3 {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  bool contains(const Vec3& p, double tol = 1e-9) const {
    return p.x() >= lo.x() - tol && p.x() <= hi.x() + tol && p.y() >= lo.y() - tol &&
           p.y() <= hi.y() + tol && p.z() >= lo.z() - tol && p.z() <= hi.z() + tol;
  }
};

struct Region {
  enum class Kind { Interior, DrmLayer, PmlLayer };
  Kind kind = Kind::Interior;
  int layer = 0;  // 1..n_pml for PmlLayer, 0 otherwise

  bool is_interior() const { return kind == Kind::Interior; }
  bool is_drm() const { return kind == Kind::DrmLayer; }
  bool is_pml() const { return kind == Kind::PmlLayer; }
};

// Structured hexahedral mesh: a subsurface lattice (soil box, optionally
// wrapped in DRM/PML shells on the four lateral faces and the bottom) plus
// optional structure cells extruded above the free surface.
//
// Node and element ids are lexicographic (x fastest, then y, then z from the
// bottom up); structure nodes/cells are appended level by level in the same
// plan order. Ids are therefore reproducible for identical inputs.
struct Mesh {
  double h = 0.0;
  Vec3 origin = Vec3::Zero();  // min corner of the subsurface lattice
  int nnx = 0, nny = 0, nnz = 0;  // node counts per axis, subsurface lattice
  int subsurface_nodes = 0;
  int subsurface_elems = 0;

  std::vector<Vec3> nodes;
  std::vector<std::array<int, 8>> elems;
  std::vector<Region> region;
  std::vector<int> material;  // material tag per element; 0 = soil

  Box3 interior_box;  // the nominal box from build_box_mesh
  Box3 drm_box;       // outer boundary of the DRM shell
  Box3 outer_box;     // outer boundary of the whole subsurface lattice
  Box3 bbox;          // everything, including structure cells
  int n_pml = -1;     // -1 until classify_regions ran

  std::unordered_map<std::int64_t, int> cell_of;  // packed (i,j,k) -> element id

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_elems() const { return static_cast<int>(elems.size()); }
  bool classified() const { return n_pml >= 0; }

  static std::int64_t cell_key(int i, int j, int k) {
    return (static_cast<std::int64_t>(k) << 42) | (static_cast<std::int64_t>(j) << 21) |
           static_cast<std::int64_t>(i);
  }

  // Element containing p, or -1. Points on faces resolve to the cell on the
  // +side (floor convention), which keeps host lookup deterministic.
  int cell_at(const Vec3& p) const;

  std::array<Vec3, 8> element_coords(int e) const {
    std::array<Vec3, 8> c;
    for (int i = 0; i < 8; ++i) c[i] = nodes[elems[e][i]];
    return c;
  }

  // Face sets of the subsurface lattice box.
  std::vector<int> top_nodes() const;
  std::vector<int> bottom_nodes() const;
  std::vector<int> lateral_nodes() const;
};

// Nominal soil box: width along x, length along y, depth along z (downward),
// top surface at z=0, centered in plan on the origin.
Mesh build_box_mesh(double width, double depth, double length, double h);

// Appends the one-element DRM shell and n_pml PML shells around the lateral
// faces and bottom of the nominal box. The interior block keeps the nominal
// dimensions; ids are rebuilt for the extended lattice.
Mesh classify_regions(const Mesh& mesh, int n_pml);

// Adds structure cells above the free surface over the plan footprint
// [x0,x1]x[y0,y1], n_layers cells tall, tagged with the given material.
// The footprint must be aligned to the lattice and inside the interior box.
void extrude_surface_cells(Mesh& mesh, double x0, double x1, double y0, double y1, int n_layers,
                           int material_tag);

// Nearest node by Euclidean distance, ties broken by lowest id.
int find_nearest_node(const Mesh& mesh, const Vec3& p);

// Legacy VTK unstructured-grid dump with region (and optional extra) cell data.
void write_mesh_vtk(const Mesh& mesh, const std::string& path,
                    const std::vector<int>* extra_cell_data = nullptr,
                    const std::string& extra_name = "rank");

// True when every interior element reaches the exterior only through
// DrmLayer and then ascending PML layers (except through the top face).
bool shells_are_watertight(const Mesh& mesh);

}  // namespace wavebox
