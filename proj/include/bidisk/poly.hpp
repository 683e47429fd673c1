#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace bidisk {

using cplx = std::complex<double>;

// Coefficients below this magnitude are treated as zero when computing
// degrees, so fiber degrees stay stable under roundoff.
inline constexpr double kCoeffTrimTol = 1e-13;

enum class Var { Z, W };

// Univariate complex polynomial, coefficients ascending in degree.
struct UniPoly {
  Eigen::VectorXcd coeffs;

  UniPoly() = default;
  explicit UniPoly(Eigen::VectorXcd c) : coeffs(std::move(c)) {}

  // Degree after trimming trailing near-zero coefficients; -1 for the zero
  // polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  cplx eval(cplx x) const;
  UniPoly derivative() const;
};

// Bivariate complex polynomial. coeffs(a, b) is the coefficient of z^a w^b.
struct BiPoly {
  Eigen::MatrixXcd coeffs;

  BiPoly() : coeffs(Eigen::MatrixXcd::Zero(1, 1)) {}
  explicit BiPoly(Eigen::MatrixXcd c) : coeffs(std::move(c)) { trim(); }

  static BiPoly constant(cplx v);
  // p(z, w) = z^a w^b
  static BiPoly monomial(int a, int b, cplx coeff = 1.0);

  int deg_z() const { return static_cast<int>(coeffs.rows()) - 1; }
  int deg_w() const { return static_cast<int>(coeffs.cols()) - 1; }
  bool is_zero() const;

  // Drops all-zero top rows/columns (entries below kCoeffTrimTol).
  void trim();

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(cplx s) const;
};

struct Root {
  cplx value;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;

  int total_multiplicity() const;
};

// Nested Horner evaluation (inner loop over w, outer over z).
cplx eval_bi(const BiPoly& p, cplx z, cplx w);

// Reflection with respect to the torus: coefficient c~[a][b] = conj(c[m-a][n-b]).
// Requires (m, n) >= (deg_z p, deg_w p).
BiPoly reflect(const BiPoly& p, int m, int n);

// Freeze the variable `var` at lambda, returning the polynomial in the other
// variable with trailing zeros trimmed.
UniPoly fiber_poly(const BiPoly& p, cplx lambda, Var var);

// All complex roots with multiplicity: balanced companion-matrix eigenvalues,
// three Newton polishing steps, then greedy clustering at cluster_tol.
// Throws std::invalid_argument on the zero polynomial.
RootSet uni_roots(const UniPoly& p, double cluster_tol = 1e-7);

}  // namespace bidisk
