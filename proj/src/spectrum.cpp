#include "bidisk/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace bidisk {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

int thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIDISK_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(hw);
}

}  // namespace

SpectralVerdict classify_point(const RationalInner& theta, cplx lambda,
                               double tol) {
  double r = std::abs(lambda);
  if (theta.z_only()) {
    // theta is a finite Blaschke product in z alone: the spectrum is the set
    // of its zeros (each an essential point: the kernel picks up every power
    // of w), and T lies in the resolvent set.
    if (r > 1.0 + tol) return {VerdictKind::Resolvent, 0};
    UniPoly fiber(theta.q.coeffs.col(0));
    if (fiber.degree() <= 0) return {VerdictKind::Resolvent, 0};
    for (const Root& root : uni_roots(fiber).roots) {
      if (std::abs(root.value - lambda) < tol) {
        return {VerdictKind::Essential, 0};
      }
    }
    return {VerdictKind::Resolvent, 0};
  }
  if (r > 1.0 + tol) return {VerdictKind::Resolvent, 0};
  if (std::abs(r - 1.0) <= tol) return {VerdictKind::Essential, 0};
  RootSet rs = numerator_fiber_roots(theta, lambda);
  int m = 0;
  for (const Root& root : rs.roots) {
    double aw = std::abs(root.value);
    if (std::abs(aw - 1.0) < tol) return {VerdictKind::Essential, 0};
    if (aw < 1.0) m += root.multiplicity;
  }
  if (m >= 1) return {VerdictKind::FredholmSpectrum, m};
  return {VerdictKind::Resolvent, 0};
}

int fredholm_index(const RationalInner& theta, cplx lambda, double tol) {
  SpectralVerdict v = classify_point(theta, lambda, tol);
  if (v.kind == VerdictKind::Essential) {
    throw std::domain_error("fredholm_index: index undefined at an essential point");
  }
  return v.index;
}

namespace {

// Minimal-cost perfect matching between two equally sized root lists by
// exhaustive permutation; fiber degrees here are tiny (<= 8).
std::vector<int> best_assignment(const std::vector<cplx>& prev,
                                 const std::vector<cplx>& next) {
  size_t n = prev.size();
  std::vector<int> perm(n), best(n);
  for (size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (size_t i = 0; i < n; ++i) cost += std::abs(prev[i] - next[perm[i]]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<cplx> z_fiber_roots(const RationalInner& theta, double t) {
  UniPoly fiber = fiber_poly(theta.q, std::polar(1.0, t), Var::W);
  std::vector<cplx> out;
  if (fiber.degree() >= 1) {
    for (const Root& r : uni_roots(fiber).roots) {
      for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    }
  }
  return out;
}

}  // namespace

EssentialCurves trace_essential_curves(const RationalInner& theta, int steps,
                                       double tol) {
  if (steps < 64) throw std::invalid_argument("trace_essential_curves: steps < 64");
  EssentialCurves out;

  std::vector<double> ts(steps);
  for (int i = 0; i < steps; ++i) ts[i] = kTau * i / steps;

  std::vector<std::vector<cplx>> branches;  // branch -> samples
  std::vector<bool> uncertain_flags;
  std::vector<cplx> prev = z_fiber_roots(theta, ts[0]);
  size_t nb = prev.size();
  branches.assign(nb, {});
  uncertain_flags.assign(nb, false);
  for (size_t b = 0; b < nb; ++b) branches[b].push_back(prev[b]);

  for (int i = 1; i < steps; ++i) {
    std::vector<cplx> next = z_fiber_roots(theta, ts[i]);
    if (next.size() != nb) {
      // degree drop at an isolated angle; repeat the previous sample so the
      // polyline stays aligned, flag everything uncertain
      for (size_t b = 0; b < nb; ++b) {
        branches[b].push_back(branches[b].back());
        uncertain_flags[b] = true;
      }
      continue;
    }
    std::vector<int> match = best_assignment(prev, next);
    // Ambiguity check: a second match within tol of the chosen one means the
    // branches may have crossed between samples. Refine locally up to 4 times.
    bool ambiguous = false;
    for (size_t b = 0; b < nb && !ambiguous; ++b) {
      for (size_t c = 0; c < nb; ++c) {
        if (static_cast<int>(c) == match[b]) continue;
        double alt = std::abs(prev[b] - next[c]);
        double own = std::abs(prev[b] - next[match[b]]);
        if (std::abs(alt - own) < tol) ambiguous = true;
      }
    }
    if (ambiguous) {
      std::vector<cplx> cur = prev;
      double t0 = ts[i - 1];
      double dt = (ts[i] - t0);
      bool resolved = true;
      for (int refine = 1; refine <= 4 && resolved; ++refine) {
        int sub = 1 << refine;
        cur = prev;
        resolved = true;
        for (int s = 1; s <= sub; ++s) {
          std::vector<cplx> mid = z_fiber_roots(theta, t0 + dt * s / sub);
          if (mid.size() != nb) {
            resolved = false;
            break;
          }
          std::vector<int> m2 = best_assignment(cur, mid);
          std::vector<cplx> reordered(nb);
          for (size_t b = 0; b < nb; ++b) reordered[b] = mid[m2[b]];
          cur = reordered;
        }
        if (resolved) {
          next = cur;
          match.resize(nb);
          for (size_t b = 0; b < nb; ++b) match[b] = static_cast<int>(b);
          break;
        }
      }
      if (!resolved) {
        for (size_t b = 0; b < nb; ++b) uncertain_flags[b] = true;
      }
    }
    std::vector<cplx> reordered(nb);
    for (size_t b = 0; b < nb; ++b) reordered[b] = next[match[b]];
    prev = reordered;
    for (size_t b = 0; b < nb; ++b) branches[b].push_back(prev[b]);
  }

  out.branch_count = static_cast<int>(nb);

  // Restrict each branch to the closed disk: emit contiguous in-disk runs.
  for (size_t b = 0; b < nb; ++b) {
    const auto& br = branches[b];
    size_t i = 0;
    while (i < br.size()) {
      while (i < br.size() && std::abs(br[i]) > 1.0 + tol) ++i;
      size_t j = i;
      while (j < br.size() && std::abs(br[j]) <= 1.0 + tol) ++j;
      if (j > i) {
        EssentialCurve c;
        c.uncertain = uncertain_flags[b];
        for (size_t s = i; s < j; ++s) {
          c.t.push_back(ts[s]);
          c.z.push_back(br[s]);
        }
        out.curves.push_back(std::move(c));
      }
      i = j;
    }
  }
  return out;
}

FredholmRegionMap decompose_fredholm_regions(const RationalInner& theta,
                                             double R, int grid_n) {
  if (grid_n < 101) {
    throw std::invalid_argument("decompose_fredholm_regions: grid_n < 101");
  }
  FredholmRegionMap map;
  map.R = R;
  map.grid_n = grid_n;
  map.cells.resize(static_cast<size_t>(grid_n) * grid_n);

  int nthreads = thread_budget();
  std::vector<std::thread> workers;
  std::atomic<int> next_row{0};
  auto work = [&]() {
    for (;;) {
      int row = next_row.fetch_add(1);
      if (row >= grid_n) return;
      for (int col = 0; col < grid_n; ++col) {
        map.cells[map.cell_at(row, col)] =
            classify_point(theta, map.cell_center(row, col));
      }
    }
  };
  for (int i = 0; i < nthreads; ++i) workers.emplace_back(work);
  for (auto& w : workers) w.join();

  // Flood fill on (kind, index) labels over non-Essential cells. Filling on
  // the kind alone would merge Fredholm regions of different index whenever
  // the separating essential curve is too thin to land on cell centers, and
  // per-component index constancy is an invariant here.
  map.labels.assign(map.cells.size(), -1);
  int next_label = 0;
  std::vector<int> stack;
  for (int row = 0; row < grid_n; ++row) {
    for (int col = 0; col < grid_n; ++col) {
      int c0 = map.cell_at(row, col);
      if (map.labels[c0] != -1) continue;
      if (map.cells[c0].kind == VerdictKind::Essential) continue;
      int label = next_label++;
      SpectralVerdict v = map.cells[c0];
      FredholmComponent comp;
      comp.label = label;
      comp.kind = v.kind;
      comp.index = v.index;
      comp.representative = map.cell_center(row, col);
      stack.clear();
      stack.push_back(c0);
      map.labels[c0] = label;
      while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        comp.cell_count += 1;
        int r = c / grid_n, cc = c % grid_n;
        const int dr[4] = {1, -1, 0, 0};
        const int dc[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int nr = r + dr[d], ncn = cc + dc[d];
          if (nr < 0 || nr >= grid_n || ncn < 0 || ncn >= grid_n) continue;
          int cn = map.cell_at(nr, ncn);
          if (map.labels[cn] != -1) continue;
          if (map.cells[cn] != v) continue;
          map.labels[cn] = label;
          stack.push_back(cn);
        }
      }
      comp.thin = comp.cell_count < 4;
      map.components.push_back(comp);
    }
  }

  // Representatives: the cell furthest (in grid BFS distance) from its
  // component boundary, so e.g. an annulus gets its mid-radius, not a cell
  // hugging the essential curve. Multi-source BFS seeded at every cell that
  // touches a different label or the grid edge.
  {
    std::vector<int> depth(map.cells.size(), -1);
    std::vector<int> queue;
    queue.reserve(map.cells.size());
    const int dr[4] = {1, -1, 0, 0};
    const int dc[4] = {0, 0, 1, -1};
    for (int row = 0; row < grid_n; ++row) {
      for (int col = 0; col < grid_n; ++col) {
        int c = map.cell_at(row, col);
        if (map.labels[c] == -1) continue;
        bool boundary = row == 0 || row == grid_n - 1 || col == 0 ||
                        col == grid_n - 1;
        for (int d = 0; d < 4 && !boundary; ++d) {
          int nr = row + dr[d], ncn = col + dc[d];
          boundary = map.labels[map.cell_at(nr, ncn)] != map.labels[c];
        }
        if (boundary) {
          depth[c] = 0;
          queue.push_back(c);
        }
      }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
      int c = queue[head];
      int r = c / grid_n, cc = c % grid_n;
      for (int d = 0; d < 4; ++d) {
        int nr = r + dr[d], ncn = cc + dc[d];
        if (nr < 0 || nr >= grid_n || ncn < 0 || ncn >= grid_n) continue;
        int cn = map.cell_at(nr, ncn);
        if (map.labels[cn] != map.labels[c] || depth[cn] != -1) continue;
        depth[cn] = depth[c] + 1;
        queue.push_back(cn);
      }
    }
    std::vector<int> best(map.components.size(), -1);
    for (int row = 0; row < grid_n; ++row) {
      for (int col = 0; col < grid_n; ++col) {
        int c = map.cell_at(row, col);
        int label = map.labels[c];
        if (label == -1) continue;
        if (depth[c] > best[label]) {
          best[label] = depth[c];
          map.components[label].representative = map.cell_center(row, col);
        }
      }
    }
  }
  return map;
}

bool factor_projection_connected(const BiPoly& factor, double R, int grid_n) {
  std::vector<char> in(static_cast<size_t>(grid_n) * grid_n, 0);
  double step = 2.0 * R / (grid_n - 1);
  for (int row = 0; row < grid_n; ++row) {
    for (int col = 0; col < grid_n; ++col) {
      cplx lambda(-R + col * step, -R + row * step);
      UniPoly fiber = fiber_poly(factor, lambda, Var::Z);
      if (fiber.is_zero() || fiber.degree() == 0) continue;
      for (const Root& r : uni_roots(fiber).roots) {
        if (std::abs(r.value) < 1.0) {
          in[static_cast<size_t>(row) * grid_n + col] = 1;
          break;
        }
      }
    }
  }
  // single 4-connected component check
  int first = -1;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i]) {
      first = static_cast<int>(i);
      break;
    }
  }
  if (first < 0) return true;  // empty projection counts as trivially connected
  std::vector<char> seen(in.size(), 0);
  std::vector<int> stack{first};
  seen[first] = 1;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    int r = c / grid_n, cc = c % grid_n;
    const int dr[4] = {1, -1, 0, 0};
    const int dc[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      int nr = r + dr[d], ncn = cc + dc[d];
      if (nr < 0 || nr >= grid_n || ncn < 0 || ncn >= grid_n) continue;
      int cn = nr * grid_n + ncn;
      if (in[cn] && !seen[cn]) {
        seen[cn] = 1;
        stack.push_back(cn);
      }
    }
  }
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] && !seen[i]) return false;
  }
  return true;
}

}  // namespace bidisk
