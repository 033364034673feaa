#include "wavebox/system.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace wavebox {

void SystemMatrices::multiply_add(const std::vector<double>& stream, const Eigen::VectorXd& x,
                                  Eigen::VectorXd& y, double s) const {
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += stream[k] * x[col_idx[k]];
    y[r] += s * acc;
  }
}

void SystemMatrices::newmark_rhs(const Eigen::VectorXd& f, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v, Eigen::VectorXd& y) const {
  y = f;
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const int c = col_idx[k];
      acc += C[k] * v[c] + K[k] * u[c];
    }
    y[r] -= acc;
  }
}

double SystemMatrices::energy(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  double em = 0.0, ek = 0.0;
  for (int r = 0; r < n; ++r) {
    double mv = 0.0, ku = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      mv += M[k] * v[col_idx[k]];
      ku += K[k] * u[col_idx[k]];
    }
    em += v[r] * mv;
    ek += u[r] * ku;
  }
  return 0.5 * (em + ek);
}

SpMat SystemMatrices::combine(double cm, double cc, double ck) const {
  SpMat A(n, n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(nnz());
  for (int r = 0; r < n; ++r)
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      trips.emplace_back(r, col_idx[k], cm * M[k] + cc * C[k] + ck * K[k]);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

double SystemMatrices::coeff(const std::vector<double>& stream, int r, int c) const {
  auto lo = col_idx.begin() + row_ptr[r];
  auto hi = col_idx.begin() + row_ptr[r + 1];
  auto it = std::lower_bound(lo, hi, c);
  if (it == hi || *it != c) return 0.0;
  return stream[it - col_idx.begin()];
}

namespace {

// Runs fn on every item of [0, n_items), chunked; each chunk is computed by
// per-rank workers and folded serially in item order by `fold`.
void run_chunks(const AssemblyPlan& plan, const BlockFn& fn,
                const std::function<void(int, const ElementBlock&)>& fold) {
  const int n_workers = std::max(1, plan.n_workers);
  const int chunk = std::max(1, plan.chunk_size);
  std::vector<ElementBlock> slots(chunk);
  for (int begin = 0; begin < plan.n_items; begin += chunk) {
    const int end = std::min(plan.n_items, begin + chunk);
    if (n_workers == 1) {
      for (int i = begin; i < end; ++i) {
        slots[i - begin].clear();
        fn(i, slots[i - begin]);
      }
    } else {
      std::vector<std::thread> pool;
      pool.reserve(n_workers);
      for (int w = 0; w < n_workers; ++w)
        pool.emplace_back([&, w]() {
          for (int i = begin; i < end; ++i) {
            const int rank = plan.rank.empty() ? 0 : plan.rank[i];
            if (rank % n_workers != w) continue;
            slots[i - begin].clear();
            fn(i, slots[i - begin]);
          }
        });
      for (auto& t : pool) t.join();
    }
    for (int i = begin; i < end; ++i) fold(i, slots[i - begin]);
  }
}

}  // namespace

SystemMatrices assemble(int n_eq, const AssemblyPlan& plan, const BlockFn& fn) {
  // Pass 1: sparsity. Entries that are structurally zero in all three
  // streams stay out of the pattern.
  std::vector<std::uint64_t> keys;
  auto collect = [&](int, const ElementBlock& b) {
    const int m = static_cast<int>(b.dofs.size());
    const bool hasM = b.M.size() > 0, hasC = b.C.size() > 0, hasK = b.K.size() > 0;
    for (int i = 0; i < m; ++i) {
      const int r = b.dofs[i];
      if (r < 0) continue;
      if (b.Mdiag.size() > 0 && b.Mdiag[i] != 0.0)
        keys.push_back((static_cast<std::uint64_t>(r) << 32) | static_cast<std::uint32_t>(r));
      for (int j = 0; j < m; ++j) {
        const int c = b.dofs[j];
        if (c < 0) continue;
        double mag = 0.0;
        if (hasM) mag += std::abs(b.M(i, j));
        if (hasC) mag += std::abs(b.C(i, j));
        if (hasK) mag += std::abs(b.K(i, j));
        if (mag != 0.0)
          keys.push_back((static_cast<std::uint64_t>(r) << 32) | static_cast<std::uint32_t>(c));
      }
    }
  };
  run_chunks(plan, fn, collect);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  SystemMatrices sys;
  sys.n = n_eq;
  sys.row_ptr.assign(n_eq + 1, 0);
  sys.col_idx.resize(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const int r = static_cast<int>(keys[k] >> 32);
    require(r < n_eq, "assembly.range", "row index out of range");
    ++sys.row_ptr[r + 1];
    sys.col_idx[k] = static_cast<int>(keys[k] & 0xffffffffu);
  }
  for (int r = 0; r < n_eq; ++r) sys.row_ptr[r + 1] += sys.row_ptr[r];
  keys.clear();
  keys.shrink_to_fit();

  sys.M.assign(sys.nnz(), 0.0);
  sys.C.assign(sys.nnz(), 0.0);
  sys.K.assign(sys.nnz(), 0.0);

  // Pass 2: values, folded in canonical item order.
  auto slot = [&](int r, int c) {
    const auto lo = sys.col_idx.begin() + sys.row_ptr[r];
    const auto hi = sys.col_idx.begin() + sys.row_ptr[r + 1];
    const auto it = std::lower_bound(lo, hi, c);
    require(it != hi && *it == c, "assembly.pattern", "value outside assembled pattern");
    return static_cast<std::size_t>(it - sys.col_idx.begin());
  };
  auto scatter = [&](int, const ElementBlock& b) {
    const int m = static_cast<int>(b.dofs.size());
    const bool hasM = b.M.size() > 0, hasC = b.C.size() > 0, hasK = b.K.size() > 0;
    for (int i = 0; i < m; ++i) {
      const int r = b.dofs[i];
      if (r < 0) continue;
      if (b.Mdiag.size() > 0 && b.Mdiag[i] != 0.0) sys.M[slot(r, r)] += b.Mdiag[i];
      for (int j = 0; j < m; ++j) {
        const int c = b.dofs[j];
        if (c < 0) continue;
        double mag = 0.0;
        if (hasM) mag += std::abs(b.M(i, j));
        if (hasC) mag += std::abs(b.C(i, j));
        if (hasK) mag += std::abs(b.K(i, j));
        if (mag == 0.0) continue;
        const std::size_t s = slot(r, c);
        if (hasM) sys.M[s] += b.M(i, j);
        if (hasC) sys.C[s] += b.C(i, j);
        if (hasK) sys.K[s] += b.K(i, j);
      }
    }
  };
  run_chunks(plan, fn, scatter);

  for (double c : sys.C)
    if (c != 0.0) {
      sys.has_damping = true;
      break;
    }
  sys.symmetric = !sys.has_damping;
  return sys;
}

}  // namespace wavebox
