#pragma once

#include <functional>
#include <vector>

#include "bidisk/bundle.hpp"
#include "bidisk/spectrum.hpp"

namespace bidisk {

enum class Reducibility { Irreducible, Reducible };

struct MatrixAlgebraBasis {
  cplx lambda;
  std::vector<Eigen::MatrixXcd> generators;  // ON-frame curvature + covariant derivatives
  std::vector<Eigen::MatrixXcd> span_basis;  // closed under products and adjoints
  int dim = 0;
};

struct ReducibilityReport {
  int component_id = 0;
  std::vector<std::pair<int, int>> blocks;  // (n_i, m_i)
  int commutant_dim = 0;
  std::vector<Eigen::MatrixXcd> minimal_projections;
  Reducibility verdict = Reducibility::Irreducible;
  std::vector<cplx> sample_points;
};

struct StrictReducibilityReport {
  std::vector<ReducibilityReport> per_component;
  // pairwise orthogonality results of the winning candidate assignment
  std::vector<std::vector<bool>> cross_orthogonality;
  Reducibility verdict = Reducibility::Irreducible;
  std::string witness;  // human-readable description of the decomposition
  double max_cross_inner = 0.0;
};

// Curvature and covariant derivatives up to total order max_order at lambda,
// conjugated to the orthonormal frame, closed under adjoints and products up
// to length L. Derivatives come from exact jet arithmetic on a spectrally
// sampled polarized Gram (see gram_jet); the dimension is an SVD rank at
// relative threshold 1e-8. Escalates once to (max_order+1, L+1) if the
// dimension does not stabilize, and throws a "coalescing point" error if the
// dimension is unstable under small moves of lambda.
MatrixAlgebraBasis curvature_algebra(const RationalInner& theta, cplx lambda,
                                     int max_order = 2, int L = 3);

// Commutant (nullspace of the stacked Sylvester maps X -> AX - XA) and block
// structure (n_i, m_i) recovered from the spectral decomposition of a random
// self-adjoint commutant element. Verdict Irreducible iff the commutant is
// trivial. Throws if the recovered structure is numerically inconsistent
// (sum n_i m_i != rank or sum m_i^2 != commutant dimension).
ReducibilityReport commutant_and_blocks(const MatrixAlgebraBasis& alg,
                                        unsigned seed = 12345);

using SectionField = std::function<FrameSection(cplx)>;

// True iff every normalized pairwise inner product between a-sections sampled
// at pts_a and b-sections sampled at pts_b stays below 1e-8 in modulus.
// max_abs (optional) receives the largest modulus seen.
bool cross_component_orthogonal(const std::vector<SectionField>& a,
                                const std::vector<cplx>& pts_a,
                                const std::vector<SectionField>& b,
                                const std::vector<cplx>& pts_b,
                                double* max_abs = nullptr);

// Full reducibility decision: rank-1-component shortcut, per-component
// curvature-algebra verdicts at 3 sampled points each, and for multiple
// components an exhaustive search over candidate sub-bundle assignments that
// must pass the cross-component orthogonality test for every pair.
StrictReducibilityReport strict_reducibility(const RationalInner& theta,
                                             const FredholmRegionMap& map,
                                             unsigned seed = 12345);

// Homogeneous degree-2 criterion for (z - alpha w)(z - beta w):
// reducible iff alpha + beta = 0 (to 1e-12). Throws on zero input.
bool degree2_criterion(cplx alpha, cplx beta);

}  // namespace bidisk
