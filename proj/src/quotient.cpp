#include "bidisk/quotient.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>
#include <cmath>
#include <stdexcept>

namespace bidisk {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= double(i);
  return f;
}

double falling(int n, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= double(n - i);
  return f;
}

}  // namespace

TruncationBasis quotient_basis_rect(const BiPoly& p, int Dz, int Dw) {
  if (p.is_zero()) throw std::invalid_argument("quotient_basis: p = 0");
  if (p.deg_z() > Dz || p.deg_w() > Dw) {
    throw std::invalid_argument("quotient_basis: deg p exceeds the box");
  }
  TruncationBasis basis;
  basis.Dz = Dz;
  basis.Dw = Dw;
  basis.p = p;
  for (int a = 0; a <= Dz; ++a) {
    for (int b = 0; b <= Dw; ++b) basis.monomials.push_back({a, b});
  }
  const int M = basis.box_dim();
  const int sz = Dz - p.deg_z() + 1, sw = Dw - p.deg_w() + 1;
  basis.shifts = Eigen::MatrixXcd::Zero(M, sz * sw);
  int col = 0;
  for (int s = 0; s < sz; ++s) {
    for (int t = 0; t < sw; ++t, ++col) {
      for (int a = 0; a <= p.deg_z(); ++a) {
        for (int b = 0; b <= p.deg_w(); ++b) {
          basis.shifts(basis.mono_index(a + s, b + t), col) = p.coeffs(a, b);
        }
      }
    }
  }
  // complement = left singular vectors of the shift matrix beyond its rank
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(basis.shifts, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv[0] : 1.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-10 * std::max(1.0, top)) ++rank;
  }
  basis.Q = svd.matrixU().rightCols(M - rank);
  return basis;
}

TruncationBasis quotient_basis(const BiPoly& p, int D) {
  return quotient_basis_rect(p, D, D);
}

CompressedShiftMatrix compress_shift(const TruncationBasis& basis, Var var) {
  const int M = basis.box_dim();
  Eigen::MatrixXcd mult = Eigen::MatrixXcd::Zero(M, M);
  for (auto [a, b] : basis.monomials) {
    if (var == Var::Z && a + 1 <= basis.Dz) {
      mult(basis.mono_index(a + 1, b), basis.mono_index(a, b)) = 1.0;
    } else if (var == Var::W && b + 1 <= basis.Dw) {
      mult(basis.mono_index(a, b + 1), basis.mono_index(a, b)) = 1.0;
    }
  }
  CompressedShiftMatrix out;
  out.S = basis.Q.adjoint() * mult * basis.Q;
  out.var = var;
  out.contaminated_from_degree =
      (var == Var::Z ? basis.Dz : basis.Dw) - 1;
  return out;
}

WeightedShiftCheck weighted_shift_weights(int m, int n, int D) {
  if (m < 1 || n < 1) throw std::invalid_argument("weighted_shift_weights");
  // Rectangular box: e_0^(N) carries w-powers up to n*floor(D/m), and the
  // w^j channels add up to n-1 more; the square box would truncate them and
  // the projected vectors lose orthogonality to the submodule.
  const int Dw = n * (D / m) + n - 1;
  BiPoly p = BiPoly::monomial(m, 0) - BiPoly::monomial(0, n);
  TruncationBasis basis = quotient_basis_rect(p, D, Dw);
  Eigen::MatrixXcd P = basis.Q * basis.Q.adjoint();

  const int M = basis.box_dim();
  Eigen::MatrixXcd mz = Eigen::MatrixXcd::Zero(M, M);
  for (auto [a, b] : basis.monomials) {
    if (a + 1 <= basis.Dz) {
      mz(basis.mono_index(a + 1, b), basis.mono_index(a, b)) = 1.0;
    }
  }

  auto e0 = [&](int N, int j) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(M);
    for (int k = 0; m * k <= N; ++k) {
      int a = N - m * k, b = n * k + j;
      if (a <= basis.Dz && b <= basis.Dw) {
        v[basis.mono_index(a, b)] = factorial(N);
      }
    }
    return v;
  };

  WeightedShiftCheck check;
  check.multiplicity = n;
  for (int N = 0; N <= D - 2; ++N) {
    double wf = std::sqrt(double(N / m + 1)) / std::sqrt(double((N + 1) / m + 1));
    check.formula.push_back(wf);
    double wm = 0.0;
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXcd vN = P * e0(N, j);
      Eigen::VectorXcd vN1 = P * e0(N + 1, j);
      vN /= vN.norm();
      vN1 /= vN1.norm();
      cplx wj = vN1.dot(mz * vN);  // Eigen dot conjugates the left argument
      if (j == 0) wm = wj.real();
      check.max_abs_diff = std::max(check.max_abs_diff, std::abs(wj - wf));
    }
    check.matrix.push_back(wm);
  }
  if (check.max_abs_diff > 1e-9) {
    throw std::runtime_error(
        "weighted_shift_weights: matrix and formula weights disagree");
  }
  return check;
}

double kernel_residual(const RationalInner& theta, cplx lambda,
                       const KernelFrame& frame, int D) {
  // the kernel formulas are identical in inner and polynomial mode; the
  // finite shadow always quotients by the numerator
  const BiPoly& p = theta.q;
  if (p.is_zero()) throw std::invalid_argument("kernel_residual: q = 0");
  if (p.deg_z() > D || p.deg_w() > D) {
    throw std::invalid_argument("kernel_residual: deg q exceeds the box");
  }
  TruncationBasis basis;
  basis.Dz = D;
  basis.Dw = D;
  basis.p = p;
  for (int a = 0; a <= D; ++a) {
    for (int b = 0; b <= D; ++b) basis.monomials.push_back({a, b});
  }
  const int M = basis.box_dim();

  // Submodule projector via sparse least squares: the shift columns carry only
  // the stencil of p, so a sparse QR beats the dense factorization by orders
  // of magnitude at D = 40.
  const int sz = D - p.deg_z() + 1, sw = D - p.deg_w() + 1;
  Eigen::SparseMatrix<cplx> A(M, sz * sw);
  {
    std::vector<Eigen::Triplet<cplx>> trips;
    int col = 0;
    for (int s = 0; s < sz; ++s) {
      for (int t = 0; t < sw; ++t, ++col) {
        for (int a = 0; a <= p.deg_z(); ++a) {
          for (int b = 0; b <= p.deg_w(); ++b) {
            if (std::abs(p.coeffs(a, b)) > kCoeffTrimTol) {
              trips.emplace_back(basis.mono_index(a + s, b + t), col,
                                 p.coeffs(a, b));
            }
          }
        }
      }
    }
    A.setFromTriplets(trips.begin(), trips.end());
  }
  Eigen::SparseQR<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> qr(A);
  if (qr.info() != Eigen::Success) {
    throw std::runtime_error("kernel_residual: sparse factorization failed");
  }

  Eigen::MatrixXcd mzH = Eigen::MatrixXcd::Zero(M, M);
  for (auto [a, b] : basis.monomials) {
    if (a + 1 <= basis.Dz) {
      // adjoint of multiplication by z on orthonormal monomials
      mzH(basis.mono_index(a, b), basis.mono_index(a + 1, b)) = 1.0;
    }
  }

  auto project = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd x = qr.solve(v);  // least-squares coordinates in the submodule
    return (v - A * x).eval();
  };

  double worst = 0.0;
  for (const FrameVector& fv : frame.vectors) {
    // Taylor coefficients of K_lambda(z) K^{(j)}_zeta(w) on the box:
    // z^a coefficient conj(lambda)^a; w^b coefficient (b)_j conj(zeta)^{b-j}
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(M);
    cplx zl = std::conj(fv.lambda), zc = std::conj(fv.zeta);
    for (int a = 0; a <= basis.Dz; ++a) {
      for (int b = fv.j; b <= basis.Dw; ++b) {
        v[basis.mono_index(a, b)] = std::pow(zl, a) * falling(b, fv.j) *
                                    std::pow(zc, b - fv.j);
      }
    }
    Eigen::VectorXcd vh = project(v);
    Eigen::VectorXcd res = project(mzH * vh) - std::conj(lambda) * vh;
    worst = std::max(worst, res.norm() / vh.norm());
  }
  return worst;
}

int commutant_dim_estimate(const TruncationBasis& basis,
                           const CompressedShiftMatrix& S,
                           int interior_degree) {
  // interior vectors: elements of the complement supported on monomials with
  // z-power <= interior_degree; computed as the nullspace of [shifts | E]^H
  // where E selects the excluded monomials
  const int M = basis.box_dim();
  std::vector<int> excluded;
  for (auto [a, b] : basis.monomials) {
    if (a > interior_degree) excluded.push_back(basis.mono_index(a, b));
  }
  Eigen::MatrixXcd A(M, basis.shifts.cols() + excluded.size());
  A.leftCols(basis.shifts.cols()) = basis.shifts;
  A.rightCols(excluded.size()).setZero();
  for (size_t i = 0; i < excluded.size(); ++i) {
    A(excluded[i], basis.shifts.cols() + i) = 1.0;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-10 * std::max(1.0, sv[0])) ++rank;
  }
  Eigen::MatrixXcd W = svd.matrixU().rightCols(M - rank);
  Eigen::MatrixXcd C = basis.Q.adjoint() * W;   // interior vectors, complement coords
  Eigen::MatrixXcd T = C.adjoint() * S.S * C;   // compressed shift on the interior

  // commutant of {T, T^H}: nullspace of the stacked Sylvester system
  const int k = static_cast<int>(T.rows());
  Eigen::MatrixXcd stack(2 * k * k, k * k);
  auto sylvester = [&](const Eigen::MatrixXcd& Amat, int row0) {
    Eigen::MatrixXcd Mm = Eigen::MatrixXcd::Zero(k * k, k * k);
    for (int i = 0; i < k; ++i) Mm.block(i * k, i * k, k, k) += Amat;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        Mm.block(j * k, i * k, k, k) -=
            Amat(i, j) * Eigen::MatrixXcd::Identity(k, k);
      }
    }
    stack.block(row0, 0, k * k, k * k) = Mm;
  };
  sylvester(T, 0);
  sylvester(T.adjoint(), k * k);
  Eigen::BDCSVD<Eigen::MatrixXcd> ssvd(stack);
  const auto& s2 = ssvd.singularValues();
  int dim = 0;
  for (int i = 0; i < s2.size(); ++i) {
    if (s2[i] < 1e-8 * std::max(1.0, s2[0])) ++dim;
  }
  return dim;
}

}  // namespace bidisk
