#include "bidisk/inner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bidisk {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

}  // namespace

StabilityReport validate_stability(const BiPoly& p, int grid_n, double tol) {
  StabilityReport rep;
  rep.interior_min_modulus = std::numeric_limits<double>::infinity();
  const std::vector<double> radii = {0.1, 0.2, 0.3, 0.4,  0.5,  0.6,
                                     0.7, 0.8, 0.9, 0.95, 0.99, 1.0};
  for (double r : radii) {
    for (int i = 0; i < grid_n; ++i) {
      cplx lambda = std::polar(r, kTau * i / grid_n);
      UniPoly fiber = fiber_poly(p, lambda, Var::Z);
      if (fiber.is_zero()) {
        rep.disk_times_circle_violations.push_back({lambda, 0.0});
        continue;
      }
      if (fiber.degree() == 0) {
        rep.interior_min_modulus =
            std::min(rep.interior_min_modulus, std::abs(fiber.coeffs[0]));
        continue;
      }
      for (const Root& root : uni_roots(fiber).roots) {
        double aw = std::abs(root.value);
        if (aw < 1.0 - tol) {
          // p vanishes at (lambda, w) with w strictly inside D: forbidden both
          // for |lambda| < 1 and for |lambda| = 1.
          rep.disk_times_circle_violations.push_back({lambda, root.value});
        } else if (aw < 1.0 + tol && r == 1.0) {
          rep.torus_zero_candidates.push_back({lambda, root.value});
        }
      }
      if (r < 1.0) {
        // track how close p comes to zero inside the bidisk on this fiber
        for (const Root& root : uni_roots(fiber).roots) {
          double margin = std::abs(root.value) - 1.0;
          if (margin > 0) {
            rep.interior_min_modulus =
                std::min(rep.interior_min_modulus, margin);
          }
        }
      }
    }
  }
  return rep;
}

RationalInner make_rational_inner(const BiPoly& p, int k, int l,
                                  const std::vector<InnerFactor>& factors) {
  if (p.is_zero()) throw std::invalid_argument("make_rational_inner: p = 0");
  StabilityReport rep = validate_stability(p);
  if (!rep.ok()) {
    const auto& v = rep.disk_times_circle_violations.front();
    std::ostringstream msg;
    msg << "not inner: denominator vanishes near (" << v.lambda.real() << "+"
        << v.lambda.imag() << "i, " << v.w.real() << "+" << v.w.imag() << "i)";
    throw ValidationError(msg.str());
  }
  RationalInner theta;
  theta.k = k;
  theta.l = l;
  theta.p = p;
  theta.q = BiPoly::monomial(k, l) * reflect(p, p.deg_z(), p.deg_w());
  theta.factors = factors;
  theta.polynomial_mode = false;
  if (!factors.empty()) {
    BiPoly prod = BiPoly::constant(1.0);
    for (const auto& f : factors) {
      for (int e = 0; e < f.exp; ++e) prod = prod * f.poly;
    }
    // The declared factorization may be off by a unimodular constant.
    if (prod.deg_z() != theta.q.deg_z() || prod.deg_w() != theta.q.deg_w()) {
      throw ValidationError("factor product degree mismatch");
    }
    cplx ratio = 0.0;
    double best = 0.0;
    for (int a = 0; a <= prod.deg_z(); ++a) {
      for (int b = 0; b <= prod.deg_w(); ++b) {
        if (std::abs(prod.coeffs(a, b)) > best) {
          best = std::abs(prod.coeffs(a, b));
          ratio = theta.q.coeffs(a, b) / prod.coeffs(a, b);
        }
      }
    }
    if (std::abs(std::abs(ratio) - 1.0) > 1e-8 ||
        (theta.q - prod * ratio).coeffs.cwiseAbs().maxCoeff() > 1e-10) {
      throw ValidationError("factor product does not match numerator");
    }
  }
  return theta;
}

RationalInner make_polynomial_module(const BiPoly& q,
                                     const std::vector<InnerFactor>& factors) {
  if (q.is_zero()) throw std::invalid_argument("make_polynomial_module: q = 0");
  RationalInner theta;
  theta.k = 0;
  theta.l = 0;
  theta.p = BiPoly::constant(1.0);
  theta.q = q;
  theta.factors = factors;
  theta.polynomial_mode = true;
  return theta;
}

RootSet numerator_fiber_roots(const RationalInner& theta, cplx lambda) {
  UniPoly fiber = fiber_poly(theta.q, lambda, Var::Z);
  if (fiber.is_zero()) {
    throw std::invalid_argument("numerator fiber identically zero");
  }
  if (fiber.degree() == 0) return RootSet{};
  return uni_roots(fiber);
}

cplx eval_theta(const RationalInner& theta, cplx z, cplx w) {
  return eval_bi(theta.q, z, w) / eval_bi(theta.p, z, w);
}

}  // namespace bidisk
