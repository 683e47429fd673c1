#pragma once

#include <vector>

#include "bidisk/bundle.hpp"
#include "bidisk/inner.hpp"

namespace bidisk {

// Finite shadow of the quotient module [p]^perp inside the monomial box
// 0 <= a <= Dz, 0 <= b <= Dw (the public API uses the square box Dz = Dw = D).
struct TruncationBasis {
  int Dz = 0;
  int Dw = 0;
  BiPoly p;
  std::vector<std::pair<int, int>> monomials;  // (a, b), index = a*(Dw+1)+b
  Eigen::MatrixXcd shifts;  // columns: z^s w^t p inside the box
  Eigen::MatrixXcd Q;       // orthonormal basis of the complement

  int box_dim() const { return (Dz + 1) * (Dw + 1); }
  int mono_index(int a, int b) const { return a * (Dw + 1) + b; }
};

struct CompressedShiftMatrix {
  Eigen::MatrixXcd S;
  Var var = Var::Z;
  // rows touching monomials of top degree in `var` are contaminated by the
  // box truncation
  int contaminated_from_degree = 0;
};

// Complement of span{z^s w^t p} within the square box [0,D]^2, via SVD of the
// stacked shifted coefficient vectors; monomials are orthonormal (the
// H^2(D^2) inner product restricted to the box).
TruncationBasis quotient_basis(const BiPoly& p, int D);

// Rectangular-box variant (used internally by the weighted-shift check,
// where the test vectors need w-degrees up to n(floor(D/m)+1)-1).
TruncationBasis quotient_basis_rect(const BiPoly& p, int Dz, int Dw);

// S = Q^H M_var Q with multiplication truncated at the box edge.
CompressedShiftMatrix compress_shift(const TruncationBasis& basis, Var var);

struct WeightedShiftCheck {
  std::vector<double> formula;     // sqrt(floor(N/m)+1)/sqrt(floor((N+1)/m)+1)
  std::vector<double> matrix;      // from the compressed shift
  double max_abs_diff = 0.0;
  int multiplicity = 0;            // number of w^j channels verified
};

// Weights of S_z on [z^m - w^n]^perp along the basis w^j e_0^(N),
// e_0^(N) = N! sum_k z^{N-mk} w^{nk}, for N = 0..D-2 and j = 0..n-1.
// Throws if matrix and formula disagree beyond 1e-9 outside the contaminated
// top degrees.
WeightedShiftCheck weighted_shift_weights(int m, int n, int D);

// Relative residual max_v ||P Mz^H v - conj(lambda) v|| / ||v|| over the
// frame vectors expanded as Taylor coefficients in the box and projected onto
// the complement.
double kernel_residual(const RationalInner& theta, cplx lambda,
                       const KernelFrame& frame, int D = 40);

// Dimension of {X : XS = SX, X S^H = S^H X} restricted to complement vectors
// supported on monomials with z-power <= interior_degree (the channels of the
// weighted-shift structure all run in z, so the interior cut is taken in the
// z-degree; cutting in both variables truncates the channels unevenly and
// destroys the cross-channel intertwiners).
int commutant_dim_estimate(const TruncationBasis& basis,
                           const CompressedShiftMatrix& S, int interior_degree);

}  // namespace bidisk
