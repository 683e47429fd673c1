#include "bidisk/bundle.hpp"

#include <Eigen/Cholesky>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bidisk/spectrum.hpp"

namespace bidisk {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double falling(int n, int k) {
  // n (n-1) ... (n-k+1)
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= double(n - i);
  return f;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= double(i);
  return f;
}

}  // namespace

KernelFrame kernel_frame(const RationalInner& theta, cplx lambda) {
  SpectralVerdict v = classify_point(theta, lambda);
  if (v.kind != VerdictKind::FredholmSpectrum) {
    throw std::domain_error("kernel_frame: lambda is not a Fredholm spectrum point");
  }
  KernelFrame frame;
  frame.lambda = lambda;
  RootSet rs = numerator_fiber_roots(theta, lambda);
  // uni_roots returns nodes already ordered lexicographically by (re, im)
  for (const Root& root : rs.roots) {
    if (std::abs(root.value) >= 1.0) continue;
    for (int j = 0; j < root.multiplicity; ++j) {
      frame.vectors.push_back({lambda, root.value, j});
    }
  }
  return frame;
}

namespace {

cplx ipow(cplx x, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

bool frame_vector_leq(const FrameVector& u, const FrameVector& v) {
  auto key = [](const FrameVector& f) {
    return std::array<double, 5>{f.lambda.real(), f.lambda.imag(),
                                 f.zeta.real(), f.zeta.imag(), double(f.j)};
  };
  return key(u) <= key(v);
}

cplx kernel_inner_product_raw(const FrameVector& u, const FrameVector& v) {
  const int i = u.j, j = v.j;
  const cplx ac = std::conj(u.zeta), b = v.zeta;
  cplx dij = 0.0;
  for (int s = 0; s <= std::min(i, j); ++s) {
    // coefficient written symmetrically in (i, j)
    double c = factorial(i) * factorial(j) * factorial(i + j - s) /
               (factorial(s) * factorial(i - s) * factorial(j - s));
    dij += c * ipow(b, i - s) * ipow(ac, j - s) /
           ipow(1.0 - ac * b, i + j - s + 1);
  }
  return dij / (1.0 - std::conj(u.lambda) * v.lambda);
}

}  // namespace

cplx kernel_inner_product(const FrameVector& u, const FrameVector& v) {
  // canonical argument order makes Hermitian symmetry exact, not just to
  // rounding
  if (frame_vector_leq(u, v)) return kernel_inner_product_raw(u, v);
  return std::conj(kernel_inner_product_raw(v, u));
}

cplx kernel_inner_product_series(const FrameVector& u, const FrameVector& v,
                                 int degree) {
  const int i = u.j, j = v.j;
  const cplx ac = std::conj(u.zeta), b = v.zeta;
  // w part: K^{(i)}_a has w^n coefficient (n)_i conj(a)^{n-i}
  cplx wsum = 0.0;
  for (int n = std::max(i, j); n <= degree; ++n) {
    wsum += falling(n, i) * falling(n, j) * std::pow(ac, n - i) *
            std::pow(b, n - j);
  }
  // z part: geometric sum of (conj(l1) l2)^a
  cplx zr = std::conj(u.lambda) * v.lambda;
  cplx zsum = 0.0, zp = 1.0;
  for (int a = 0; a <= degree; ++a) {
    zsum += zp;
    zp *= zr;
  }
  return zsum * wsum;
}

cplx section_inner(const FrameSection& u, const FrameSection& v) {
  cplx acc = 0.0;
  for (const auto& [cu, fu] : u.terms) {
    for (const auto& [cv, fv] : v.terms) {
      acc += cu * std::conj(cv) * kernel_inner_product(fu, fv);
    }
  }
  return acc;
}

Eigen::MatrixXcd gram(const KernelFrame& frame) {
  const int n = frame.rank();
  if (n == 0) throw std::invalid_argument("gram: empty frame");
  Eigen::MatrixXcd G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      G(i, j) = kernel_inner_product(frame.vectors[i], frame.vectors[j]);
    }
  }
  return G;
}

std::vector<FrameSection> zm_wn_frame(int m, int n, cplx lambda) {
  if (lambda == 0.0) {
    throw std::invalid_argument("zm_wn_frame: frame undefined at lambda = 0");
  }
  // principal branch of lambda^{m/n}, branch line along the negative reals
  cplx mu = std::exp(cplx(double(m) / n) * std::log(lambda));
  cplx zeta = std::polar(1.0, kTau / n);
  std::vector<FrameSection> frame;
  for (int j = 0; j < n; ++j) {
    FrameSection e;
    cplx pref = 1.0 / (double(n) * std::pow(std::conj(mu), j));
    for (int k = 0; k < n; ++k) {
      cplx node = mu * std::pow(zeta, k);
      e.terms.push_back({pref * std::pow(zeta, j * k), {lambda, node, 0}});
    }
    frame.push_back(std::move(e));
  }
  return frame;
}

namespace {

Eigen::MatrixXcd dbar_fd(const GramField& F, cplx lambda, double h) {
  Eigen::MatrixXcd dx = (F(lambda + h) - F(lambda - h)) / (2.0 * h);
  Eigen::MatrixXcd dy =
      (F(lambda + cplx(0, h)) - F(lambda - cplx(0, h))) / (2.0 * h);
  return 0.5 * (dx + cplx(0, 1) * dy);
}

Eigen::MatrixXcd d_fd(const GramField& F, cplx lambda, double h) {
  Eigen::MatrixXcd dx = (F(lambda + h) - F(lambda - h)) / (2.0 * h);
  Eigen::MatrixXcd dy =
      (F(lambda + cplx(0, h)) - F(lambda - cplx(0, h))) / (2.0 * h);
  return 0.5 * (dx - cplx(0, 1) * dy);
}

}  // namespace

Eigen::MatrixXcd connection_matrix(const GramField& G, cplx lambda, double h) {
  Eigen::MatrixXcd G0 = G(lambda);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(G0);
  if (!lu.isInvertible()) {
    throw std::runtime_error("connection_matrix: singular Gram matrix");
  }
  return dbar_fd(G, lambda, h) * lu.inverse();
}

CurvatureReport curvature_samples(const GramField& G, cplx lambda, double h,
                                  int max_order) {
  Eigen::MatrixXcd G0 = G(lambda);
  Eigen::LLT<Eigen::MatrixXcd> llt(G0);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("curvature_samples: Gram not positive definite");
  }

  GramField theta_field = [&](cplx l) -> Eigen::MatrixXcd {
    return connection_matrix(G, l, h);
  };
  // Sign convention: for rank 1 this is -d dbar log G, which evaluates to
  // -2/(1-|lambda|^2)^2 on the diagonal-kernel module.
  GramField k_field = [&](cplx l) -> Eigen::MatrixXcd {
    return -d_fd(theta_field, l, h);
  };

  CurvatureReport rep;
  rep.curvature_frame = k_field(lambda);

  // conjugation into the orthonormal frame: with G = L L^H the frame change
  // e -> e L^{-T} has identity Gram, and matrices in frame coordinates
  // transform as M -> L^{-1} M L
  Eigen::MatrixXcd L = llt.matrixL();
  Eigen::MatrixXcd Linv =
      L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(
          G0.rows(), G0.cols()));
  rep.on_transform = Linv;
  auto to_on = [&](const Eigen::MatrixXcd& M) { return Linv * M * L; };

  Eigen::MatrixXcd K_on = to_on(rep.curvature_frame);
  double herm = (K_on - K_on.adjoint()).norm();
  if (herm > 1e-4 * std::max(1.0, K_on.norm())) {
    throw std::runtime_error(
        "curvature_samples: curvature not Hermitian in the orthonormal frame; "
        "reduce the step h");
  }
  rep.samples.push_back({0, 0, K_on});

  // Nested covariant differencing: D(M) = dM, Dbar(M) = dbar(M) + [Theta, M].
  struct Field {
    int i, j;
    GramField f;
  };
  std::vector<Field> layer{{0, 0, k_field}};
  for (int order = 1; order <= max_order; ++order) {
    std::vector<Field> next;
    for (const auto& fld : layer) {
      GramField base = fld.f;
      next.push_back({fld.i + 1, fld.j, [base, h](cplx l) {
                        return d_fd(base, l, h);
                      }});
      next.push_back({fld.i, fld.j + 1, [base, theta_field, h](cplx l) {
                        Eigen::MatrixXcd Th = theta_field(l);
                        Eigen::MatrixXcd M = base(l);
                        return (dbar_fd(base, l, h) + Th * M - M * Th).eval();
                      }});
    }
    for (const auto& fld : next) {
      rep.samples.push_back({fld.i, fld.j, to_on(fld.f(lambda))});
    }
    layer = std::move(next);
  }
  return rep;
}

MatrixJet MatrixJet::zero(int order, int dim) {
  MatrixJet j;
  j.order = order;
  j.coeff.assign(tri(0, order) + 1, Eigen::MatrixXcd::Zero(dim, dim));
  return j;
}

MatrixJet MatrixJet::operator+(const MatrixJet& o) const {
  int n = std::min(order, o.order);
  MatrixJet r = zero(n, static_cast<int>(value().rows()));
  for (int t = 0; t <= n; ++t) {
    for (int b = 0; b <= t; ++b) r.at(t - b, b) = at(t - b, b) + o.at(t - b, b);
  }
  return r;
}

MatrixJet MatrixJet::operator-(const MatrixJet& o) const {
  int n = std::min(order, o.order);
  MatrixJet r = zero(n, static_cast<int>(value().rows()));
  for (int t = 0; t <= n; ++t) {
    for (int b = 0; b <= t; ++b) r.at(t - b, b) = at(t - b, b) - o.at(t - b, b);
  }
  return r;
}

MatrixJet MatrixJet::operator*(const MatrixJet& o) const {
  int n = std::min(order, o.order);
  MatrixJet r = zero(n, static_cast<int>(value().rows()));
  for (int t1 = 0; t1 <= n; ++t1) {
    for (int b1 = 0; b1 <= t1; ++b1) {
      for (int t2 = 0; t1 + t2 <= n; ++t2) {
        for (int b2 = 0; b2 <= t2; ++b2) {
          r.at(t1 - b1 + t2 - b2, b1 + b2) += at(t1 - b1, b1) * o.at(t2 - b2, b2);
        }
      }
    }
  }
  return r;
}

MatrixJet MatrixJet::d() const {
  MatrixJet r = zero(order - 1, static_cast<int>(value().rows()));
  for (int t = 1; t <= order; ++t) {
    for (int b = 0; b < t; ++b) {
      r.at(t - b - 1, b) = double(t - b) * at(t - b, b);
    }
  }
  return r;
}

MatrixJet MatrixJet::dbar() const {
  MatrixJet r = zero(order - 1, static_cast<int>(value().rows()));
  for (int t = 1; t <= order; ++t) {
    for (int b = 1; b <= t; ++b) {
      r.at(t - b, b - 1) = double(b) * at(t - b, b);
    }
  }
  return r;
}

MatrixJet MatrixJet::inverse() const {
  int dim = static_cast<int>(value().rows());
  Eigen::MatrixXcd A0inv = value().inverse();
  // X = (I + A0inv E)^{-1} A0inv with E the order >= 1 part; Neumann series
  // terminates because E is nilpotent on truncated jets.
  MatrixJet E = *this;
  E.at(0, 0) = Eigen::MatrixXcd::Zero(dim, dim);
  MatrixJet J0 = zero(order, dim);
  J0.at(0, 0) = A0inv;
  MatrixJet B = J0 * E;
  MatrixJet acc = zero(order, dim);
  acc.at(0, 0) = Eigen::MatrixXcd::Identity(dim, dim);
  MatrixJet term = acc;
  for (int k = 0; k < order; ++k) {
    term = term * B;
    for (auto& M : term.coeff) M = -M;
    acc = acc + term;
  }
  return acc * J0;
}

MatrixJet gram_jet(const PolarizedGramField& G, cplx l0, int order, double r,
                   int nc) {
  std::vector<cplx> ring(nc);
  for (int i = 0; i < nc; ++i) ring[i] = l0 + std::polar(r, kTau * i / nc);

  std::vector<std::vector<Eigen::MatrixXcd>> S(nc);
  for (int i = 0; i < nc; ++i) {
    S[i].resize(nc);
    for (int j = 0; j < nc; ++j) {
      // left slot mu (enters anti-holomorphically), right slot lambda
      S[i][j] = G(ring[i], ring[j]);
    }
  }
  int dim = static_cast<int>(S[0][0].rows());

  // S(i, j) = sum c_{ab} u^a v^b with u = r e^{i th_j} (lambda offset) and
  // v = conj(mu) - conj(l0) = r e^{-i th_i}; extract c_{ab} by direct DFT.
  MatrixJet jet = MatrixJet::zero(order, dim);
  for (int t = 0; t <= order; ++t) {
    for (int b = 0; b <= t; ++b) {
      int a = t - b;
      Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
      for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
          double thi = kTau * i / nc, thj = kTau * j / nc;
          M += S[i][j] * std::polar(1.0, -a * thj + b * thi);
        }
      }
      jet.at(a, b) = M / (double(nc) * nc * std::pow(r, a + b));
    }
  }
  return jet;
}

}  // namespace bidisk
