#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bidisk/quotient.hpp"

using namespace bidisk;

namespace {

BiPoly from_terms(const std::vector<std::tuple<int, int, cplx>>& terms) {
  int A = 0, B = 0;
  for (auto& [a, b, c] : terms) {
    A = std::max(A, a);
    B = std::max(B, b);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(A + 1, B + 1);
  for (auto& [a, b, c] : terms) m(a, b) = c;
  return BiPoly(m);
}

BiPoly zmwn(int m, int n) {
  return from_terms({{m, 0, 1.0}, {0, n, -1.0}});
}

}  // namespace

TEST_CASE("quotient basis splits the box orthogonally") {
  BiPoly p = zmwn(1, 1);
  TruncationBasis basis = quotient_basis(p, 8);
  CHECK(basis.box_dim() == 81);
  // complement columns are orthonormal
  Eigen::MatrixXcd QtQ = basis.Q.adjoint() * basis.Q;
  CHECK((QtQ - Eigen::MatrixXcd::Identity(QtQ.cols(), QtQ.cols())).norm() <
        1e-12);
  // and orthogonal to every submodule shift
  CHECK((basis.Q.adjoint() * basis.shifts).norm() < 1e-9);
  // [z-w]^perp restricted to total z,w degree <= D has one basis vector per
  // diagonal level: dim = rows + cols - rank(shifts) = 2D + 1
  CHECK(basis.Q.cols() == 17);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(quotient_basis(BiPoly{}, 8), std::invalid_argument);
  CHECK_THROWS_AS(quotient_basis(zmwn(3, 2), 1), std::invalid_argument);
}

TEST_CASE("compressed shift reproduces the Bergman weights for z - w") {
  // S_z on [z-w]^perp is the Bergman shift: weights sqrt((N+1)/(N+2))
  WeightedShiftCheck check = weighted_shift_weights(1, 1, 14);
  CHECK(check.multiplicity == 1);
  CHECK(check.max_abs_diff < 1e-10);
  for (size_t N = 0; N < check.formula.size(); ++N) {
    CHECK(std::abs(check.formula[N] -
                   std::sqrt(double(N + 1) / double(N + 2))) < 1e-12);
  }
}

TEST_CASE("weighted shift weights for higher (m, n)") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    WeightedShiftCheck check = weighted_shift_weights(m, n, 14);
    CHECK(check.multiplicity == n);
    CHECK(check.max_abs_diff < 1e-10);
    // formula spot check: steps inside a block of m have weight
    // sqrt(floor(N/m)+1)/sqrt(floor((N+1)/m)+1)
    for (int N = 0; N <= 12; ++N) {
      double want = std::sqrt(double(N / m + 1)) / std::sqrt(double((N + 1) / m + 1));
      CHECK(check.formula[N] == doctest::Approx(want).epsilon(1e-12));
    }
  }
  CHECK_THROWS(weighted_shift_weights(0, 1, 14));
}

TEST_CASE("kernel residual decays geometrically in the box size") {
  RationalInner theta = make_polynomial_module(zmwn(1, 1));
  cplx lam(0.6, 0.0);
  KernelFrame frame = kernel_frame(theta, lam);
  double r30 = kernel_residual(theta, lam, frame, 30);
  double r40 = kernel_residual(theta, lam, frame, 40);
  CHECK(r40 < r30);
  CHECK(r40 < 10.0 * std::pow(0.6, 39));
}

TEST_CASE("kernel residual examples") {
  // (z-w)^2 at lambda = 0.3, D = 30: tail ratio 0.3
  RationalInner square = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {1, 1, -2.0}, {0, 2, 1.0}}));
  KernelFrame f = kernel_frame(square, 0.3);
  CHECK(kernel_residual(square, 0.3, f, 30) < 1e-10);

  // lambda = 0: the kernel is the constant function, exactly representable
  RationalInner diag = make_polynomial_module(zmwn(1, 1));
  KernelFrame f0 = kernel_frame(diag, 0.0);
  CHECK(kernel_residual(diag, 0.0, f0, 20) < 1e-13);
}

TEST_CASE("kernel residual in rational inner mode") {
  // theta = (zw - 0.5)/(1 - 0.5 zw): same quotient data as its numerator
  RationalInner theta = make_rational_inner(
      from_terms({{0, 0, 1.0}, {1, 1, -0.5}}), 0, 0);
  KernelFrame f = kernel_frame(theta, 0.8);
  CHECK(kernel_residual(theta, 0.8, f, 40) < 1e-3);
}

TEST_CASE("commutant dimension estimates at D = 14 and 16") {
  struct Case {
    BiPoly q;
    int want;
  };
  for (const Case& c : {Case{zmwn(1, 1), 1},
                        Case{from_terms({{2, 0, 1.0}, {1, 1, -2.0}, {0, 2, 1.0}}), 1},
                        Case{zmwn(2, 2), 4},
                        Case{zmwn(3, 2), 4}}) {
    for (int D : {14, 16}) {
      TruncationBasis basis = quotient_basis(c.q, D);
      CompressedShiftMatrix S = compress_shift(basis, Var::Z);
      CHECK(commutant_dim_estimate(basis, S, 10) == c.want);
    }
  }
}

TEST_CASE("contamination marker tracks the box edge") {
  TruncationBasis basis = quotient_basis(zmwn(1, 1), 10);
  CompressedShiftMatrix sz = compress_shift(basis, Var::Z);
  CHECK(sz.var == Var::Z);
  CHECK(sz.contaminated_from_degree == 9);
}
