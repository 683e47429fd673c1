#pragma once

#include <vector>

#include "bidisk/inner.hpp"

namespace bidisk {

enum class VerdictKind { Resolvent, Essential, FredholmSpectrum };

struct SpectralVerdict {
  VerdictKind kind = VerdictKind::Resolvent;
  int index = 0;  // dim Ker S*_{z-lambda}; 0 unless kind == FredholmSpectrum

  bool operator==(const SpectralVerdict&) const = default;
};

// Classification of a single point:
//   |lambda| > 1 + tol           -> Resolvent
//   | |lambda| - 1 | <= tol      -> Essential (Resolvent for z-only inputs,
//                                   where T lies in the resolvent set)
//   |lambda| < 1 - tol           -> from the numerator fiber roots: any root
//                                   with ||w| - 1| < tol -> Essential; else
//                                   m = #roots in D (with multiplicity),
//                                   m >= 1 -> FredholmSpectrum(m), else
//                                   Resolvent.
SpectralVerdict classify_point(const RationalInner& theta, cplx lambda,
                               double tol = 1e-6);

// Number of fiber zeros in D with multiplicity (0 at resolvent points).
// Throws at Essential points, where the index is undefined.
int fredholm_index(const RationalInner& theta, cplx lambda, double tol = 1e-6);

struct EssentialCurve {
  std::vector<double> t;  // angles in [0, 2pi)
  std::vector<cplx> z;
  bool uncertain = false;
};

struct EssentialCurves {
  std::vector<EssentialCurve> curves;
  int branch_count = 0;  // branches before restriction to the closed disk
};

// Traces the interior essential set: roots in z of q(z, e^{it}) continued in
// t by nearest-neighbor assignment; the returned polylines are the contiguous
// runs inside the closed disk.
EssentialCurves trace_essential_curves(const RationalInner& theta,
                                       int steps = 1024, double tol = 1e-6);

struct FredholmComponent {
  int label = -1;
  VerdictKind kind = VerdictKind::Resolvent;
  int index = 0;
  cplx representative;
  int cell_count = 0;
  bool thin = false;  // fewer than 4 cells
};

struct FredholmRegionMap {
  double R = 1.1;
  int grid_n = 301;
  std::vector<SpectralVerdict> cells;  // row-major, grid_n x grid_n
  std::vector<int> labels;             // component label per cell, -1 Essential
  std::vector<FredholmComponent> components;

  cplx cell_center(int row, int col) const {
    double step = 2.0 * R / (grid_n - 1);
    return {-R + col * step, -R + row * step};
  }
  int cell_at(int row, int col) const { return row * grid_n + col; }
};

// Classifies every cell center of a grid over [-R, R]^2 (rows parallelized,
// capped by BIDISK_THREADS) and 4-connected-flood-fills equal (kind, index)
// labels over non-Essential cells.
FredholmRegionMap decompose_fredholm_regions(const RationalInner& theta,
                                             double R = 1.1, int grid_n = 301);

// True iff the set {lambda : factor(lambda, .) has a root in D} is 4-connected
// on the grid.
bool factor_projection_connected(const BiPoly& factor, double R = 1.1,
                                 int grid_n = 301);

}  // namespace bidisk
