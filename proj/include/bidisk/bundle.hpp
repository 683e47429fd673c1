#pragma once

#include <functional>
#include <vector>

#include "bidisk/inner.hpp"

namespace bidisk {

// Represents K_lambda(z) * K^{(j)}_zeta(w) with
// K^{(l)}_zeta(w) = l! w^l / (1 - conj(zeta) w)^{l+1}.
struct FrameVector {
  cplx lambda;
  cplx zeta;
  int j = 0;
};

struct KernelFrame {
  cplx lambda;
  std::vector<FrameVector> vectors;

  int rank() const { return static_cast<int>(vectors.size()); }
};

// Linear combination of frame vectors; carries the sections used by the
// orthogonal z^m-w^n frame and the reducibility witnesses.
struct FrameSection {
  std::vector<std::pair<cplx, FrameVector>> terms;
};

// Canonical kernel basis at a Fredholm point: fiber roots of the numerator
// inside D, each with its derivative tower 0..multiplicity-1, nodes ordered
// lexicographically by (re, im). Throws at Resolvent/Essential points.
KernelFrame kernel_frame(const RationalInner& theta, cplx lambda);

// Closed-form H^2(D^2) inner product:
// <K_{l1} K^{(i)}_a, K_{l2} K^{(j)}_b> = D_{i,j}(a, b) / (1 - conj(l1) l2),
// Hermitian under argument swap. Scalar weights of a FrameSection enter
// this pairing with the second slot conjugated.
cplx kernel_inner_product(const FrameVector& u, const FrameVector& v);

// Truncated power-series oracle for the same quantity (sum over monomial
// degrees up to `degree` in each variable).
cplx kernel_inner_product_series(const FrameVector& u, const FrameVector& v,
                                 int degree = 200);

cplx section_inner(const FrameSection& u, const FrameSection& v);

Eigen::MatrixXcd gram(const KernelFrame& frame);

// Orthogonal anti-holomorphic frame of Ker S*_{z-lambda} for z^m - w^n:
// e_j = (1/(n conj(mu)^j)) sum_k zeta_n^{jk} K_{lambda, mu zeta_n^k} with
// mu = lambda^{m/n} (principal branch, cut on the negative real axis) and
// zeta_n = e^{2 pi i / n}. Throws at lambda = 0 (node collision).
std::vector<FrameSection> zm_wn_frame(int m, int n, cplx lambda);

using GramField = std::function<Eigen::MatrixXcd(cplx)>;

// Connection Theta = dbar(G) G^{-1} in the anti-holomorphic frame convention,
// dbar by central differences with step h on each real coordinate,
// dbar = (d_x + i d_y)/2.
Eigen::MatrixXcd connection_matrix(const GramField& G, cplx lambda,
                                   double h = 1e-4);

struct CurvatureSample {
  int i = 0;  // holomorphic derivative order
  int j = 0;  // anti-holomorphic derivative order
  Eigen::MatrixXcd value;  // in the orthonormal frame
};

struct CurvatureReport {
  Eigen::MatrixXcd curvature_frame;  // K in the original frame
  Eigen::MatrixXcd on_transform;     // frame -> orthonormal frame conjugator
  std::vector<CurvatureSample> samples;  // K and covariant derivatives, ON frame
};

// Curvature K = -d(dbar(G) G^{-1}) (the sign making the rank-1 value
// -2/(1-|lambda|^2)^2, i.e. -d dbar log G) and covariant derivatives
// K_{z^i zbar^j} up to total order max_order, computed by nested differencing
// with the covariant corrections D(M) = dM, Dbar(M) = dbar(M) + [Theta, M],
// then conjugated into the orthonormal frame via the Cholesky factor of G.
// Throws if G is singular or the curvature fails to be similar to a Hermitian
// matrix beyond tolerance (step too large).
CurvatureReport curvature_samples(const GramField& G, cplx lambda,
                                  double h = 1e-4, int max_order = 0);

// ---------------------------------------------------------------------------
// Matrix Taylor jets in (u, v) = (lambda - l0, conj(lambda) - conj(l0)).
// The reducibility pipeline needs covariant derivatives accurate to well
// below the 1e-8 algebra-rank threshold; nested differencing loses a factor
// 1/h of accuracy per level, so the jets are instead extracted spectrally
// from the polarized Gram field (holomorphic in both slots) and then
// differentiated exactly.

struct MatrixJet {
  int order = 0;                          // retains u^a v^b with a+b <= order
  std::vector<Eigen::MatrixXcd> coeff;    // indexed by tri(a, b)

  static int tri(int a, int b) { return (a + b) * (a + b + 1) / 2 + b; }
  const Eigen::MatrixXcd& at(int a, int b) const { return coeff[tri(a, b)]; }
  Eigen::MatrixXcd& at(int a, int b) { return coeff[tri(a, b)]; }
  const Eigen::MatrixXcd& value() const { return coeff[0]; }

  static MatrixJet zero(int order, int dim);
  MatrixJet operator+(const MatrixJet& o) const;
  MatrixJet operator-(const MatrixJet& o) const;
  MatrixJet operator*(const MatrixJet& o) const;  // truncated product
  MatrixJet d() const;     // d/du, order drops by one
  MatrixJet dbar() const;  // d/dv, order drops by one
  MatrixJet inverse() const;  // Neumann series around the inverse at 0
};

// Polarized Gram sampler: (mu, lambda) -> matrix of inner products with the
// left frame at mu (conjugated slot) and the right frame at lambda.
using PolarizedGramField = std::function<Eigen::MatrixXcd(cplx, cplx)>;

// Taylor jet of G at l0 from 2-D Fourier analysis of the polarized field on a
// bicircle of radius r (nc samples per circle; aliasing error ~ (r/R)^nc for
// analyticity radius R).
MatrixJet gram_jet(const PolarizedGramField& G, cplx l0, int order,
                   double r = 0.04, int nc = 32);

}  // namespace bidisk
