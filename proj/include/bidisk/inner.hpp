#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bidisk/poly.hpp"

namespace bidisk {

// Raised when an input parses but fails semantic validation (denominator not
// stable, factor product mismatch); callers map it to a distinct exit code.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InnerFactor {
  BiPoly poly;
  int exp = 1;
};

// theta = z^k w^l p~ / p with p stable on the bidisk. In polynomial mode the
// denominator is 1 and q is the defining polynomial of the quotient module
// [q]^perp; the kernel formulas are identical in both modes.
struct RationalInner {
  int k = 0;
  int l = 0;
  BiPoly p;            // denominator
  BiPoly q;            // numerator z^k w^l p~ (or the polynomial itself)
  std::vector<InnerFactor> factors;
  bool polynomial_mode = false;

  // True when q depends on z only (degenerate one-variable Blaschke input).
  bool z_only() const { return q.deg_w() == 0; }
};

struct StabilityViolation {
  cplx lambda;  // z sample
  cplx w;       // offending fiber root
};

struct StabilityReport {
  double interior_min_modulus = 0.0;
  std::vector<std::pair<cplx, cplx>> torus_zero_candidates;
  std::vector<StabilityViolation> disk_times_circle_violations;

  bool ok() const { return disk_times_circle_violations.empty(); }
};

// Samples fibers of p over radii {0.1..0.99} and over T; a fiber root w with
// |w| < 1 - tol is a violation (p must not vanish on D x D nor on T x D).
StabilityReport validate_stability(const BiPoly& p, int grid_n = 720,
                                   double tol = 1e-9);

// Builds and validates theta = z^k w^l p~/p. Throws std::invalid_argument with
// a witness point if p has interior zeros, or if the declared factor product
// does not match q up to a unimodular constant.
RationalInner make_rational_inner(const BiPoly& p, int k, int l,
                                  const std::vector<InnerFactor>& factors = {});

// Polynomial-mode wrapper: quotient module of [q]^perp with denominator 1.
RationalInner make_polynomial_module(const BiPoly& q,
                                     const std::vector<InnerFactor>& factors = {});

// Roots of the numerator fiber q(lambda, .) in w. Throws on an identically
// zero fiber.
RootSet numerator_fiber_roots(const RationalInner& theta, cplx lambda);

cplx eval_theta(const RationalInner& theta, cplx z, cplx w);

}  // namespace bidisk
