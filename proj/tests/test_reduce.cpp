#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bidisk/reduce.hpp"

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

MatrixAlgebraBasis synthetic(const std::vector<Eigen::MatrixXcd>& span) {
  MatrixAlgebraBasis alg;
  alg.lambda = 0.5;
  alg.generators = span;
  alg.span_basis = span;
  alg.dim = static_cast<int>(span.size());
  return alg;
}

}  // namespace

TEST_CASE("curvature algebra dimensions distinguish the split and jet cases") {
  RationalInner split = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {0, 2, -1.0}}));  // z^2 - w^2
  MatrixAlgebraBasis a = curvature_algebra(split, cplx(0.45, 0.2));
  CHECK(a.dim == 1);  // scalar curvature: both sub-line-bundles curve alike

  RationalInner jet = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {1, 1, -2.0}, {0, 2, 1.0}}));  // (z-w)^2
  MatrixAlgebraBasis b = curvature_algebra(jet, cplx(0.45, 0.2));
  CHECK(b.dim == 4);  // derivatives generate the full 2x2 algebra
}

TEST_CASE("commutant of the full matrix algebra is trivial") {
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(2, 2);
      E(i, j) = 1.0;
      basis.push_back(E);
    }
  }
  ReducibilityReport rep = commutant_and_blocks(synthetic(basis));
  CHECK(rep.commutant_dim == 1);
  CHECK(rep.verdict == Reducibility::Irreducible);
  REQUIRE(rep.blocks.size() == 1);
  CHECK(rep.blocks[0] == std::pair<int, int>(2, 1));
}

TEST_CASE("commutant of the scalars is everything") {
  std::vector<Eigen::MatrixXcd> basis{Eigen::MatrixXcd::Identity(2, 2)};
  ReducibilityReport rep = commutant_and_blocks(synthetic(basis));
  CHECK(rep.commutant_dim == 4);
  CHECK(rep.verdict == Reducibility::Reducible);
  REQUIRE(rep.blocks.size() == 1);
  CHECK(rep.blocks[0] == std::pair<int, int>(1, 2));  // M(1, (x)2)
  CHECK(rep.minimal_projections.size() == 2);
  for (const auto& P : rep.minimal_projections) {
    CHECK((P * P - P).norm() < 1e-10);  // idempotent
    CHECK((P - P.adjoint()).norm() < 1e-10);
  }
}

TEST_CASE("commutant of a diagonal two-block algebra") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 2.0;
  std::vector<Eigen::MatrixXcd> basis{Eigen::MatrixXcd::Identity(2, 2), D};
  ReducibilityReport rep = commutant_and_blocks(synthetic(basis));
  CHECK(rep.commutant_dim == 2);
  CHECK(rep.verdict == Reducibility::Reducible);
  CHECK(rep.blocks.size() == 2);  // two inequivalent 1x1 blocks
}

TEST_CASE("block duality invariants hold on the curvature algebras") {
  RationalInner split = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {0, 2, 0.25}}));  // (z-0.5i w)(z+0.5i w)
  MatrixAlgebraBasis alg = curvature_algebra(split, cplx(0.2, 0.15));
  ReducibilityReport rep = commutant_and_blocks(alg);
  int rank = static_cast<int>(alg.span_basis.front().rows());
  int sum_nm = 0, sum_m2 = 0;
  for (auto [n, m] : rep.blocks) {
    sum_nm += n * m;
    sum_m2 += m * m;
  }
  CHECK(sum_nm == rank);
  CHECK(sum_m2 == rep.commutant_dim);
}

TEST_CASE("verdicts are stable under resampling the component") {
  RationalInner jet = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {1, 1, -3.0}, {0, 2, 2.0}}));  // (z-w)(z-2w)
  for (cplx lam : {cplx(0.3, 0.1), cplx(-0.25, 0.3), cplx(0.1, -0.4)}) {
    MatrixAlgebraBasis alg = curvature_algebra(jet, lam);
    CHECK(commutant_and_blocks(alg).commutant_dim == 1);
  }
}

TEST_CASE("parity sections of the split module are cross-orthogonal") {
  RationalInner split = make_polynomial_module(
      from_terms({{2, 0, 1.0}, {0, 2, -1.0}}));
  auto section = [&split](int parity) {
    return SectionField([&split, parity](cplx lam) {
      FrameSection s;
      s.terms.push_back({1.0, FrameVector{lam, lam, 0}});
      s.terms.push_back({parity == 0 ? 1.0 : -1.0, FrameVector{lam, -lam, 0}});
      return s;
    });
  };
  std::vector<cplx> pts{cplx(0.3, 0.2), cplx(-0.4, 0.1), cplx(0.15, -0.5)};
  double worst = 1.0;
  CHECK(cross_component_orthogonal({section(0)}, pts, {section(1)}, pts, &worst));
  CHECK(worst < 1e-12);
  // same-parity sections are far from orthogonal
  CHECK_FALSE(
      cross_component_orthogonal({section(0)}, pts, {section(0)}, pts, &worst));
}

TEST_CASE("degree-2 homogeneous criterion") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 15; ++t) {
    cplx alpha(u(rng), u(rng));
    CHECK(degree2_criterion(alpha, -alpha));
    cplx beta(u(rng), u(rng));
    if (std::abs(alpha + beta) > 1e-6) {
      CHECK_FALSE(degree2_criterion(alpha, beta));
    }
  }
  CHECK(degree2_criterion(cplx(0.0, 0.5), cplx(0.0, -0.5)));
  CHECK_FALSE(degree2_criterion(1.0, -2.0));
  CHECK_THROWS(degree2_criterion(0.0, 1.0));
}

TEST_CASE("degree-2 criterion agrees with the full pipeline") {
  struct Case {
    cplx alpha, beta;
  };
  for (const Case& c : {Case{0.5, -0.5}, Case{cplx(0, 0.5), cplx(0, -0.5)},
                        Case{1.0, -2.0}, Case{0.5, 0.25}}) {
    BiPoly q = from_terms({{1, 0, 1.0}, {0, 1, -c.alpha}}) *
               from_terms({{1, 0, 1.0}, {0, 1, -c.beta}});
    RationalInner theta = make_polynomial_module(q);
    FredholmRegionMap map = decompose_fredholm_regions(theta, 1.1, 121);
    Reducibility want = degree2_criterion(c.alpha, c.beta)
                            ? Reducibility::Reducible
                            : Reducibility::Irreducible;
    CHECK(strict_reducibility(theta, map).verdict == want);
  }
}

TEST_CASE("strict verdicts on single components use the commutant") {
  RationalInner jet3 = make_polynomial_module(
      from_terms({{3, 0, 1.0}, {2, 1, -3.0}, {1, 2, 3.0}, {0, 3, -1.0}}));
  FredholmRegionMap map = decompose_fredholm_regions(jet3, 1.1, 121);
  StrictReducibilityReport rep = strict_reducibility(jet3, map);
  CHECK(rep.verdict == Reducibility::Irreducible);
  REQUIRE(rep.per_component.size() == 1);
  CHECK(rep.per_component[0].commutant_dim == 1);
}
