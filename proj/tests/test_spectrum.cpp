#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "bidisk/spectrum.hpp"

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

RationalInner annulus_example() {
  return make_rational_inner(from_terms({{0, 0, 1.0}, {1, 1, -0.5}}), 0, 0);
}

RationalInner circle_example() {
  return make_rational_inner(
      from_terms({{0, 0, 1.0}, {1, 0, -0.5}, {0, 1, -0.5}}), 0, 0);
}

RationalInner disconnected_example() {
  return make_rational_inner(
      from_terms({{0, 0, 2.0}, {1, 1, -1.0}, {2, 1, 0.1}}), 0, 0);
}

}  // namespace

TEST_CASE("pointwise classification of the annulus example") {
  RationalInner theta = annulus_example();
  CHECK(classify_point(theta, 0.7) ==
        SpectralVerdict{VerdictKind::FredholmSpectrum, 1});
  CHECK(classify_point(theta, 0.3) == SpectralVerdict{VerdictKind::Resolvent, 0});
  CHECK(classify_point(theta, cplx(0.0, 1.0)).kind == VerdictKind::Essential);
  CHECK(classify_point(theta, 1.4) == SpectralVerdict{VerdictKind::Resolvent, 0});
  // interior essential circle |z| = 0.5
  CHECK(classify_point(theta, 0.5).kind == VerdictKind::Essential);
}

TEST_CASE("the disconnected example has a resolvent ring at |z| = 1/4") {
  RationalInner theta = disconnected_example();
  for (int i = 0; i < 36; ++i) {
    cplx lam = std::polar(0.25, 2 * std::numbers::pi * i / 36.0);
    CHECK(classify_point(theta, lam).kind == VerdictKind::Resolvent);
  }
}

TEST_CASE("the index is the fiber zero count with multiplicity") {
  RationalInner square = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {1, 1, -2.0}, {0, 2, 1.0}}));  // (z-w)^2
  CHECK(fredholm_index(square, 0.4) == 2);
  RationalInner mixed = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {1, 1, cplx(-1.0, -0.5)}, {0, 2, cplx(0.0, 0.5)}}));
  // roots lambda and 2 lambda / i: both inside only for |lambda| < 0.5
  CHECK(fredholm_index(mixed, 0.3) == 2);
  CHECK(fredholm_index(mixed, 0.7) == 1);
}

TEST_CASE("the index query throws at essential points") {
  RationalInner theta = annulus_example();
  CHECK_THROWS_AS(fredholm_index(theta, cplx(1.0, 0.0)), std::domain_error);
}

TEST_CASE("z-only input: circle in the resolvent, zeros essential") {
  RationalInner blaschke = make_polynomial_module(
      from_terms({{1, 0, 1.0}, {0, 0, -0.5}}));
  CHECK(classify_point(blaschke, cplx(1.0, 0.0)).kind == VerdictKind::Resolvent);
  CHECK(classify_point(blaschke, 0.5).kind == VerdictKind::Essential);
  CHECK(classify_point(blaschke, 0.2).kind == VerdictKind::Resolvent);
}

TEST_CASE("curve trace of the annulus example is the circle |z| = 0.5") {
  EssentialCurves curves = trace_essential_curves(annulus_example(), 256);
  REQUIRE(curves.curves.size() == 1);
  for (cplx z : curves.curves[0].z) CHECK(std::abs(std::abs(z) - 0.5) < 1e-9);
  CHECK(curves.curves[0].z.size() == 256);
}

TEST_CASE("curve trace of the off-center example is a circle") {
  EssentialCurves curves = trace_essential_curves(circle_example(), 512);
  REQUIRE(curves.curves.size() >= 1);
  for (const auto& c : curves.curves) {
    for (cplx z : c.z) {
      CHECK(std::abs(std::abs(z - cplx(2.0 / 3.0, 0.0)) - 1.0 / 3.0) < 1e-9);
    }
  }
}

TEST_CASE("curves are clipped to the closed disk") {
  EssentialCurves curves = trace_essential_curves(disconnected_example(), 512);
  for (const auto& c : curves.curves) {
    for (cplx z : c.z) CHECK(std::abs(z) <= 1.0 + 1e-6);
  }
  CHECK(curves.branch_count == 2);
}

TEST_CASE("region map of the annulus example") {
  FredholmRegionMap map = decompose_fredholm_regions(annulus_example(), 1.1, 121);
  int fred = 0, res = 0;
  for (const auto& c : map.components) {
    if (c.thin) continue;
    if (c.kind == VerdictKind::FredholmSpectrum) {
      ++fred;
      CHECK(c.index == 1);
      // the representative sits mid-annulus, far from both essential circles
      double r = std::abs(c.representative);
      CHECK(r > 0.55);
      CHECK(r < 0.95);
    } else {
      ++res;
    }
  }
  CHECK(fred == 1);
  CHECK(res == 2);
}

TEST_CASE("per-component verdicts are constant") {
  FredholmRegionMap map =
      decompose_fredholm_regions(disconnected_example(), 1.1, 121);
  for (int row = 0; row < map.grid_n; ++row) {
    for (int col = 0; col < map.grid_n; ++col) {
      int c = map.cell_at(row, col);
      int label = map.labels[c];
      if (label == -1) {
        CHECK(map.cells[c].kind == VerdictKind::Essential);
        continue;
      }
      CHECK(map.cells[c].kind == map.components[label].kind);
      CHECK(map.cells[c].index == map.components[label].index);
    }
  }
}

TEST_CASE("coarse grids are rejected") {
  CHECK_THROWS_AS(decompose_fredholm_regions(annulus_example(), 1.1, 50),
                  std::invalid_argument);
}

TEST_CASE("zero-projection connectivity") {
  CHECK(factor_projection_connected(from_terms({{1, 1, 1.0}, {0, 0, -0.5}}),
                                    1.1, 121));
  // numerator of the disconnected example
  CHECK_FALSE(factor_projection_connected(
      from_terms({{2, 1, 2.0}, {1, 0, -1.0}, {0, 0, 0.1}}), 1.1, 121));
}
