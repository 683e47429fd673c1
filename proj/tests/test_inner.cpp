#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bidisk/inner.hpp"

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

}  // namespace

TEST_CASE("stable denominators validate cleanly") {
  CHECK(validate_stability(from_terms({{0, 0, 1.0}, {1, 1, -0.5}})).ok());
  CHECK(validate_stability(from_terms({{0, 0, 1.0}, {1, 0, -0.5}, {0, 1, -0.5}}))
            .ok());
  CHECK(validate_stability(from_terms({{0, 0, 2.0}, {1, 1, -1.0}, {2, 1, 0.1}}))
            .ok());
}

TEST_CASE("an interior zero is rejected with a witness") {
  // p = 1 - 2 z w vanishes at (0.7, 5/7) inside the bidisk
  BiPoly bad = from_terms({{0, 0, 1.0}, {1, 1, -2.0}});
  StabilityReport rep = validate_stability(bad);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.disk_times_circle_violations.empty());
  CHECK_THROWS_AS(make_rational_inner(bad, 0, 0), ValidationError);
}

TEST_CASE("theta is unimodular on the torus") {
  RationalInner theta =
      make_rational_inner(from_terms({{0, 0, 2.0}, {1, 1, -1.0}, {2, 1, 0.1}}), 0, 0);
  for (int i = 0; i < 24; ++i) {
    cplx z = std::polar(1.0, 0.511 * i), w = std::polar(1.0, 1.73 * i);
    CHECK(std::abs(std::abs(eval_theta(theta, z, w)) - 1.0) < 1e-12);
  }
}

TEST_CASE("numerator is the torus reflection with monomial prefactor") {
  RationalInner theta =
      make_rational_inner(from_terms({{0, 0, 1.0}, {1, 1, -0.5}}), 1, 0);
  // reflect(1 - 0.5 z w) = z w - 0.5, times z
  BiPoly want = from_terms({{2, 1, 1.0}, {1, 0, -0.5}});
  CHECK((theta.q - want).coeffs.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("declared factorizations are checked against the numerator") {
  BiPoly p = from_terms({{0, 0, 1.0}, {1, 1, -0.5}});
  // q = zw - 0.5; correct factor list
  InnerFactor good{from_terms({{1, 1, 1.0}, {0, 0, -0.5}}), 1};
  CHECK_NOTHROW(make_rational_inner(p, 0, 0, {good}));
  InnerFactor wrong{from_terms({{1, 1, 1.0}, {0, 0, -0.7}}), 1};
  CHECK_THROWS_AS(make_rational_inner(p, 0, 0, {wrong}), ValidationError);
}

TEST_CASE("fiber root examples") {
  RationalInner annulus =
      make_rational_inner(from_terms({{0, 0, 1.0}, {1, 1, -0.5}}), 0, 0);
  RootSet rs = numerator_fiber_roots(annulus, 0.8);
  REQUIRE(rs.roots.size() == 1);
  CHECK(std::abs(rs.roots[0].value - 0.625) < 1e-12);

  RationalInner disconnected =
      make_rational_inner(from_terms({{0, 0, 2.0}, {1, 1, -1.0}, {2, 1, 0.1}}), 0, 0);
  // numerator 2 z^2 w - z + 0.1 at z = 0.25: w = (0.25 - 0.1) / 0.125 = 1.2
  RootSet rd = numerator_fiber_roots(disconnected, 0.25);
  REQUIRE(rd.roots.size() == 1);
  CHECK(std::abs(rd.roots[0].value - 1.2) < 1e-12);
}

TEST_CASE("polynomial mode keeps the polynomial as numerator") {
  BiPoly q = from_terms({{1, 0, 1.0}, {0, 1, -1.0}});
  RationalInner mod = make_polynomial_module(q);
  CHECK(mod.polynomial_mode);
  CHECK((mod.q - q).coeffs.cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(eval_theta(mod, 0.3, 0.2) - cplx(0.1)) < 1e-14);
}

TEST_CASE("z-only inputs are flagged") {
  RationalInner blaschke = make_polynomial_module(
      from_terms({{1, 0, 1.0}, {0, 0, -0.5}}));
  CHECK(blaschke.z_only());
  RationalInner general = make_polynomial_module(
      from_terms({{1, 0, 1.0}, {0, 1, -1.0}}));
  CHECK_FALSE(general.z_only());
}

TEST_CASE("degenerate fibers throw or come back empty") {
  RationalInner mod = make_polynomial_module(
      from_terms({{0, 0, 1.0}, {1, 1, 1.0}}));
  // at z = 0 the fiber is the constant 1: no roots
  CHECK(numerator_fiber_roots(mod, 0.0).roots.empty());
  RationalInner zmod = make_polynomial_module(
      from_terms({{1, 1, 1.0}, {1, 0, 1.0}}));
  // at z = 0 the fiber vanishes identically
  CHECK_THROWS(numerator_fiber_roots(zmod, 0.0));
}

TEST_CASE("zero polynomial inputs are rejected") {
  CHECK_THROWS_AS(make_polynomial_module(BiPoly{}), std::invalid_argument);
}
