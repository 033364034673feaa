#include "wavebox/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace wavebox {

namespace {

int checked_cell_count(double extent, double h, const char* axis) {
  const double ratio = extent / h;
  const int n = static_cast<int>(std::lround(ratio));
  require(n >= 1 && std::abs(ratio - n) < 1e-9, "mesh.dims",
          std::string("dimension along ") + axis + " is not a positive integer multiple of h");
  return n;
}

}  // namespace

int Mesh::cell_at(const Vec3& p) const {
  const double inv = 1.0 / h;
  const int i = static_cast<int>(std::floor((p.x() - origin.x()) * inv + 1e-12));
  const int j = static_cast<int>(std::floor((p.y() - origin.y()) * inv + 1e-12));
  const int k = static_cast<int>(std::floor((p.z() - origin.z()) * inv + 1e-12));
  auto it = cell_of.find(cell_key(i, j, k));
  return it == cell_of.end() ? -1 : it->second;
}

std::vector<int> Mesh::top_nodes() const {
  std::vector<int> out;
  const int k = nnz - 1;
  for (int j = 0; j < nny; ++j)
    for (int i = 0; i < nnx; ++i) out.push_back((k * nny + j) * nnx + i);
  return out;
}

std::vector<int> Mesh::bottom_nodes() const {
  std::vector<int> out;
  for (int j = 0; j < nny; ++j)
    for (int i = 0; i < nnx; ++i) out.push_back(j * nnx + i);
  return out;
}

std::vector<int> Mesh::lateral_nodes() const {
  std::vector<int> out;
  for (int k = 0; k < nnz; ++k)
    for (int j = 0; j < nny; ++j)
      for (int i = 0; i < nnx; ++i)
        if (i == 0 || i == nnx - 1 || j == 0 || j == nny - 1)
          out.push_back((k * nny + j) * nnx + i);
  return out;
}

namespace {

// Fills nodes/elements of a complete lattice box with nx*ny*nz cells.
void fill_lattice(Mesh& m, int nx, int ny, int nz) {
  m.nnx = nx + 1;
  m.nny = ny + 1;
  m.nnz = nz + 1;
  m.nodes.reserve(static_cast<size_t>(m.nnx) * m.nny * m.nnz);
  for (int k = 0; k < m.nnz; ++k)
    for (int j = 0; j < m.nny; ++j)
      for (int i = 0; i < m.nnx; ++i)
        m.nodes.emplace_back(m.origin + Vec3(i * m.h, j * m.h, k * m.h));

  auto nid = [&](int i, int j, int k) { return (k * m.nny + j) * m.nnx + i; };
  m.elems.reserve(static_cast<size_t>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int e = static_cast<int>(m.elems.size());
        m.elems.push_back({nid(i, j, k), nid(i + 1, j, k), nid(i + 1, j + 1, k), nid(i, j + 1, k),
                           nid(i, j, k + 1), nid(i + 1, j, k + 1), nid(i + 1, j + 1, k + 1),
                           nid(i, j + 1, k + 1)});
        m.cell_of.emplace(Mesh::cell_key(i, j, k), e);
      }
  m.subsurface_nodes = m.n_nodes();
  m.subsurface_elems = m.n_elems();
  m.region.assign(m.elems.size(), Region{});
  m.material.assign(m.elems.size(), 0);
}

}  // namespace

Mesh build_box_mesh(double width, double depth, double length, double h) {
  require(h > 0.0, "mesh.h", "mesh size must be positive");
  Mesh m;
  m.h = h;
  const int nx = checked_cell_count(width, h, "x (width)");
  const int ny = checked_cell_count(length, h, "y (length)");
  const int nz = checked_cell_count(depth, h, "z (depth)");
  m.origin = Vec3(-width / 2.0, -length / 2.0, -depth);
  fill_lattice(m, nx, ny, nz);
  m.interior_box = {m.origin, Vec3(width / 2.0, length / 2.0, 0.0)};
  m.drm_box = m.interior_box;
  m.outer_box = m.interior_box;
  m.bbox = m.interior_box;
  return m;
}

Mesh classify_regions(const Mesh& mesh, int n_pml) {
  require(n_pml >= 0, "mesh.n_pml", "PML layer count must be non-negative");
  require(!mesh.classified(), "mesh.classified", "mesh already carries DRM/PML shells");
  require(mesh.n_elems() == mesh.subsurface_elems, "mesh.shells",
          "classify_regions must run before structure cells are added");
  const int nx = mesh.nnx - 1, ny = mesh.nny - 1, nz = mesh.nnz - 1;
  require(nx >= 1 && ny >= 1 && nz >= 1, "mesh.small", "mesh too small to host shells");

  const int shells = 1 + n_pml;
  Mesh m;
  m.h = mesh.h;
  m.origin = mesh.origin - Vec3(shells * m.h, shells * m.h, shells * m.h);
  fill_lattice(m, nx + 2 * shells, ny + 2 * shells, nz + shells);

  m.interior_box = mesh.interior_box;
  m.drm_box = {mesh.interior_box.lo - Vec3(m.h, m.h, m.h),
               Vec3(mesh.interior_box.hi.x() + m.h, mesh.interior_box.hi.y() + m.h, 0.0)};
  m.outer_box = {m.origin, Vec3(-m.origin.x(), -m.origin.y(), 0.0)};
  m.bbox = m.outer_box;
  m.n_pml = n_pml;

  // Region from centroid: ring distance (in cells) beyond the interior box.
  for (int e = 0; e < m.n_elems(); ++e) {
    Vec3 c = Vec3::Zero();
    for (int n : m.elems[e]) c += m.nodes[n];
    c /= 8.0;
    const double dx = std::max({m.interior_box.lo.x() - c.x(), c.x() - m.interior_box.hi.x(), 0.0});
    const double dy = std::max({m.interior_box.lo.y() - c.y(), c.y() - m.interior_box.hi.y(), 0.0});
    const double dz = std::max(m.interior_box.lo.z() - c.z(), 0.0);
    const double pen = std::max({dx, dy, dz});
    const int ring = static_cast<int>(std::ceil(pen / m.h - 1e-9));
    if (ring == 0)
      m.region[e] = {Region::Kind::Interior, 0};
    else if (ring == 1)
      m.region[e] = {Region::Kind::DrmLayer, 0};
    else
      m.region[e] = {Region::Kind::PmlLayer, ring - 1};
  }
  return m;
}

void extrude_surface_cells(Mesh& mesh, double x0, double x1, double y0, double y1, int n_layers,
                           int material_tag) {
  require(n_layers >= 1, "mesh.extrude", "structure must be at least one cell tall");
  const double inv = 1.0 / mesh.h;
  auto to_index = [&](double v, double o) {
    const double r = (v - o) * inv;
    const int n = static_cast<int>(std::lround(r));
    require(std::abs(r - n) < 1e-9, "mesh.extrude", "structure footprint not aligned to the lattice");
    return n;
  };
  const int i0 = to_index(x0, mesh.origin.x()), i1 = to_index(x1, mesh.origin.x());
  const int j0 = to_index(y0, mesh.origin.y()), j1 = to_index(y1, mesh.origin.y());
  require(i0 < i1 && j0 < j1, "mesh.extrude", "degenerate structure footprint");
  require(x0 >= mesh.interior_box.lo.x() - 1e-9 && x1 <= mesh.interior_box.hi.x() + 1e-9 &&
              y0 >= mesh.interior_box.lo.y() - 1e-9 && y1 <= mesh.interior_box.hi.y() + 1e-9,
          "mesh.extrude", "structure footprint must lie inside the interior region");

  const int ksurf = mesh.nnz - 1;  // surface node level of the subsurface lattice
  // node ids per level within [i0..i1]x[j0..j1]; level 0 reuses surface nodes
  const int fx = i1 - i0 + 1, fy = j1 - j0 + 1;
  std::vector<int> below(static_cast<size_t>(fx) * fy);
  for (int j = 0; j <= j1 - j0; ++j)
    for (int i = 0; i <= i1 - i0; ++i)
      below[j * fx + i] = ((ksurf * mesh.nny) + (j0 + j)) * mesh.nnx + (i0 + i);

  for (int layer = 1; layer <= n_layers; ++layer) {
    std::vector<int> level(static_cast<size_t>(fx) * fy);
    for (int j = 0; j <= j1 - j0; ++j)
      for (int i = 0; i <= i1 - i0; ++i) {
        level[j * fx + i] = mesh.n_nodes();
        mesh.nodes.emplace_back(mesh.origin.x() + (i0 + i) * mesh.h,
                                mesh.origin.y() + (j0 + j) * mesh.h, layer * mesh.h);
      }
    for (int j = 0; j < j1 - j0; ++j)
      for (int i = 0; i < i1 - i0; ++i) {
        const int e = mesh.n_elems();
        mesh.elems.push_back({below[j * fx + i], below[j * fx + i + 1], below[(j + 1) * fx + i + 1],
                              below[(j + 1) * fx + i], level[j * fx + i], level[j * fx + i + 1],
                              level[(j + 1) * fx + i + 1], level[(j + 1) * fx + i]});
        mesh.region.push_back({Region::Kind::Interior, 0});
        mesh.material.push_back(material_tag);
        mesh.cell_of.emplace(Mesh::cell_key(i0 + i, j0 + j, ksurf - 1 + layer), e);
      }
    below.swap(level);
  }
  mesh.bbox.hi.z() = std::max(mesh.bbox.hi.z(), n_layers * mesh.h);
}

int find_nearest_node(const Mesh& mesh, const Vec3& p) {
  require(mesh.bbox.contains(p, 1e-9), "mesh.probe",
          "coordinates lie outside the mesh bounding box");
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  for (int n = 0; n < mesh.n_nodes(); ++n) {
    const double d = (mesh.nodes[n] - p).squaredNorm();
    if (d < best_d - 1e-18 || (std::abs(d - best_d) <= 1e-18 && n < best)) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

void write_mesh_vtk(const Mesh& mesh, const std::string& path,
                    const std::vector<int>* extra_cell_data, const std::string& extra_name) {
  std::ofstream f(path);
  require(f.good(), "io.vtk", "cannot open " + path + " for writing");
  f << "# vtk DataFile Version 3.0\nwavebox mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  f << "POINTS " << mesh.n_nodes() << " double\n";
  char buf[128];
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g\n", p.x(), p.y(), p.z());
    f << buf;
  }
  f << "CELLS " << mesh.n_elems() << " " << mesh.n_elems() * 9 << "\n";
  for (const auto& e : mesh.elems) {
    f << 8;
    for (int n : e) f << " " << n;
    f << "\n";
  }
  f << "CELL_TYPES " << mesh.n_elems() << "\n";
  for (int e = 0; e < mesh.n_elems(); ++e) f << "12\n";
  f << "CELL_DATA " << mesh.n_elems() << "\n";
  f << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (const auto& r : mesh.region) {
    const int tag = r.is_interior() ? 0 : (r.is_drm() ? 1 : 1 + r.layer);
    f << tag << "\n";
  }
  f << "SCALARS material int 1\nLOOKUP_TABLE default\n";
  for (int m : mesh.material) f << m << "\n";
  if (extra_cell_data) {
    require(static_cast<int>(extra_cell_data->size()) == mesh.n_elems(), "io.vtk",
            "cell data size mismatch");
    f << "SCALARS " << extra_name << " int 1\nLOOKUP_TABLE default\n";
    for (int v : *extra_cell_data) f << v << "\n";
  }
}

bool shells_are_watertight(const Mesh& mesh) {
  if (!mesh.classified()) return false;
  // Walk outward from every interior element along each lateral/bottom axis;
  // regions must step Interior* -> DrmLayer -> Pml(1) -> ... -> Pml(n).
  const double inv = 1.0 / mesh.h;
  auto ring_of = [&](int e) {
    const auto& r = mesh.region[e];
    return r.is_interior() ? 0 : (r.is_drm() ? 1 : 1 + r.layer);
  };
  for (int e = 0; e < mesh.subsurface_elems; ++e) {
    if (!mesh.region[e].is_interior()) continue;
    Vec3 c = Vec3::Zero();
    for (int n : mesh.elems[e]) c += mesh.nodes[n];
    c /= 8.0;
    const int i = static_cast<int>(std::floor((c.x() - mesh.origin.x()) * inv));
    const int j = static_cast<int>(std::floor((c.y() - mesh.origin.y()) * inv));
    const int k = static_cast<int>(std::floor((c.z() - mesh.origin.z()) * inv));
    const int dirs[5][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, -1}};
    for (const auto& d : dirs) {
      int prev = ring_of(e);
      int ii = i + d[0], jj = j + d[1], kk = k + d[2];
      while (true) {
        auto it = mesh.cell_of.find(Mesh::cell_key(ii, jj, kk));
        if (it == mesh.cell_of.end()) break;
        const int ring = ring_of(it->second);
        if (ring != prev && ring != prev + 1) return false;
        prev = ring;
        ii += d[0];
        jj += d[1];
        kk += d[2];
      }
      if (mesh.n_pml > 0 && prev != 1 + mesh.n_pml) return false;
      if (mesh.n_pml == 0 && prev != 1) return false;
    }
  }
  return true;
}

}  // namespace wavebox
