#include "bidisk/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace bidisk {

int UniPoly::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (std::abs(coeffs[i]) > kCoeffTrimTol) return i;
  }
  return -1;
}

cplx UniPoly::eval(cplx x) const {
  cplx acc = 0.0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    acc = acc * x + coeffs[i];
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  int n = static_cast<int>(coeffs.size());
  if (n <= 1) return UniPoly(Eigen::VectorXcd::Zero(1));
  Eigen::VectorXcd d(n - 1);
  for (int i = 1; i < n; ++i) d[i - 1] = double(i) * coeffs[i];
  return UniPoly(std::move(d));
}

BiPoly BiPoly::constant(cplx v) {
  Eigen::MatrixXcd c(1, 1);
  c(0, 0) = v;
  return BiPoly(std::move(c));
}

BiPoly BiPoly::monomial(int a, int b, cplx coeff) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(a + 1, b + 1);
  c(a, b) = coeff;
  return BiPoly(std::move(c));
}

bool BiPoly::is_zero() const {
  return coeffs.cwiseAbs().maxCoeff() <= kCoeffTrimTol;
}

void BiPoly::trim() {
  int rows = static_cast<int>(coeffs.rows());
  int cols = static_cast<int>(coeffs.cols());
  auto row_nonzero = [&](int r) {
    return coeffs.row(r).cwiseAbs().maxCoeff() > kCoeffTrimTol;
  };
  auto col_nonzero = [&](int c) {
    return coeffs.col(c).cwiseAbs().maxCoeff() > kCoeffTrimTol;
  };
  while (rows > 1 && !row_nonzero(rows - 1)) --rows;
  while (cols > 1 && !col_nonzero(cols - 1)) --cols;
  if (rows != coeffs.rows() || cols != coeffs.cols()) {
    coeffs = coeffs.topLeftCorner(rows, cols).eval();
  }
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  int rows = std::max(coeffs.rows(), o.coeffs.rows());
  int cols = std::max(coeffs.cols(), o.coeffs.cols());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(rows, cols);
  c.topLeftCorner(coeffs.rows(), coeffs.cols()) = coeffs;
  c.topLeftCorner(o.coeffs.rows(), o.coeffs.cols()) += o.coeffs;
  return BiPoly(std::move(c));
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o * cplx(-1.0); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  Eigen::MatrixXcd c =
      Eigen::MatrixXcd::Zero(coeffs.rows() + o.coeffs.rows() - 1,
                             coeffs.cols() + o.coeffs.cols() - 1);
  for (int a = 0; a < coeffs.rows(); ++a) {
    for (int b = 0; b < coeffs.cols(); ++b) {
      if (std::abs(coeffs(a, b)) == 0.0) continue;
      c.block(a, b, o.coeffs.rows(), o.coeffs.cols()) +=
          coeffs(a, b) * o.coeffs;
    }
  }
  return BiPoly(std::move(c));
}

BiPoly BiPoly::operator*(cplx s) const { return BiPoly(coeffs * s); }

int RootSet::total_multiplicity() const {
  int t = 0;
  for (const auto& r : roots) t += r.multiplicity;
  return t;
}

cplx eval_bi(const BiPoly& p, cplx z, cplx w) {
  cplx acc = 0.0;
  for (int a = static_cast<int>(p.coeffs.rows()) - 1; a >= 0; --a) {
    cplx row = 0.0;
    for (int b = static_cast<int>(p.coeffs.cols()) - 1; b >= 0; --b) {
      row = row * w + p.coeffs(a, b);
    }
    acc = acc * z + row;
  }
  return acc;
}

BiPoly reflect(const BiPoly& p, int m, int n) {
  if (m < p.deg_z() || n < p.deg_w()) {
    throw std::invalid_argument("reflect: (m, n) below the degree of p");
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m + 1, n + 1);
  for (int a = 0; a <= p.deg_z(); ++a) {
    for (int b = 0; b <= p.deg_w(); ++b) {
      c(m - a, n - b) = std::conj(p.coeffs(a, b));
    }
  }
  return BiPoly(std::move(c));
}

UniPoly fiber_poly(const BiPoly& p, cplx lambda, Var var) {
  if (var == Var::Z) {
    // freeze z = lambda, polynomial in w
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(p.coeffs.cols());
    cplx zp = 1.0;
    for (int a = 0; a < p.coeffs.rows(); ++a) {
      c += zp * p.coeffs.row(a).transpose();
      zp *= lambda;
    }
    int deg = UniPoly(c).degree();
    return UniPoly(c.head(std::max(deg + 1, 1)).eval());
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(p.coeffs.rows());
  cplx wp = 1.0;
  for (int b = 0; b < p.coeffs.cols(); ++b) {
    c += wp * p.coeffs.col(b);
    wp *= lambda;
  }
  int deg = UniPoly(c).degree();
  return UniPoly(c.head(std::max(deg + 1, 1)).eval());
}

RootSet uni_roots(const UniPoly& p, double cluster_tol) {
  int deg = p.degree();
  if (deg < 0) throw std::invalid_argument("uni_roots: zero polynomial");
  RootSet rs;
  if (deg == 0) return rs;

  // Companion matrix of the monic normalization; Eigen balances internally.
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  cplx lead = p.coeffs[deg];
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -p.coeffs[i] / lead;
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
  std::vector<cplx> roots(es.eigenvalues().data(),
                          es.eigenvalues().data() + deg);

  // Newton polishing. For multiple roots Newton stalls harmlessly; the
  // cluster merge below recovers the multiplicity. When the start value is
  // already accurate to rounding, f and df are both noise and f / df can be a
  // huge bogus step, so only accept steps that actually reduce |p|.
  UniPoly dp = p.derivative();
  for (auto& r : roots) {
    double best = std::abs(p.eval(r));
    for (int it = 0; it < 3; ++it) {
      cplx df = dp.eval(r);
      if (std::abs(df) < 1e-300) break;
      cplx step = p.eval(r) / df;
      if (!std::isfinite(std::abs(step))) break;
      cplx cand = r - step;
      double val = std::abs(p.eval(cand));
      if (val >= best) break;
      r = cand;
      best = val;
    }
  }

  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  // Greedy clustering: consecutive (in sorted order) roots within cluster_tol
  // of the running cluster centroid merge into one root of higher multiplicity.
  for (cplx r : roots) {
    if (!rs.roots.empty() &&
        std::abs(r - rs.roots.back().value) < cluster_tol) {
      Root& last = rs.roots.back();
      last.value = (last.value * double(last.multiplicity) + r) /
                   double(last.multiplicity + 1);
      last.multiplicity += 1;
    } else {
      rs.roots.push_back({r, 1});
    }
  }

  // An m-fold root scatters the companion eigenvalues over a ring of radius
  // ~eps^{1/m} (1e-5 for a triple root), far beyond cluster_tol. Second pass:
  // group surviving roots within a 1e-4 proximity radius and merge a group of
  // total multiplicity m only if p and its first m-1 derivatives vanish at the
  // centroid to the accuracy a genuine m-fold root would give; otherwise split
  // the group at its widest gap and retry the halves.
  {
    constexpr double kProximity = 1e-4;
    constexpr double kScatter = 2e-5;
    double max_coeff = p.coeffs.cwiseAbs().maxCoeff();
    std::vector<UniPoly> derivs{p};
    for (int j = 1; j <= deg; ++j) derivs.push_back(derivs.back().derivative());

    auto taylor_ok = [&](cplx c, int m) {
      double scale = max_coeff * std::pow(std::max(1.0, std::abs(c)), deg);
      double fact = 1.0;
      for (int j = 0; j < m; ++j) {
        if (j > 0) fact *= double(j);
        double tol_j =
            scale * std::max(10.0 * std::pow(kScatter, m - j), 1e-13);
        if (std::abs(derivs[j].eval(c)) / fact > tol_j) return false;
      }
      return true;
    };

    std::vector<Root> merged;
    auto resolve = [&](auto&& self, std::vector<Root> group) -> void {
      if (group.size() == 1) {
        merged.push_back(group[0]);
        return;
      }
      int m = 0;
      cplx c = 0.0;
      for (const Root& r : group) {
        m += r.multiplicity;
        c += r.value * double(r.multiplicity);
      }
      c /= double(m);
      if (taylor_ok(c, m)) {
        // polish the centroid as a simple root of p^{(m-1)}
        for (int it = 0; it < 3; ++it) {
          cplx f = derivs[m - 1].eval(c);
          cplx df = derivs[m].eval(c);
          if (std::abs(df) < 1e-300) break;
          c -= f / df;
        }
        merged.push_back({c, m});
        return;
      }
      // split at the widest gap between consecutive roots (sorted order)
      size_t cut = 1;
      double widest = -1.0;
      for (size_t i = 1; i < group.size(); ++i) {
        double gap = std::abs(group[i].value - group[i - 1].value);
        if (gap > widest) {
          widest = gap;
          cut = i;
        }
      }
      self(self, {group.begin(), group.begin() + cut});
      self(self, {group.begin() + cut, group.end()});
    };

    std::vector<Root> group;
    for (const Root& r : rs.roots) {
      if (!group.empty() &&
          std::abs(r.value - group.back().value) > kProximity) {
        resolve(resolve, std::move(group));
        group.clear();
      }
      group.push_back(r);
    }
    if (!group.empty()) resolve(resolve, std::move(group));
    std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) {
      if (a.value.real() != b.value.real()) {
        return a.value.real() < b.value.real();
      }
      return a.value.imag() < b.value.imag();
    });
    rs.roots = std::move(merged);
  }
  return rs;
}

}  // namespace bidisk
