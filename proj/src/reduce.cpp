#include "bidisk/reduce.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bidisk {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;
constexpr double kRankTol = 1e-8;

struct BaseNode {
  cplx value;
  int mult;
};

std::vector<BaseNode> base_nodes(const KernelFrame& frame) {
  std::vector<BaseNode> nodes;
  for (const FrameVector& v : frame.vectors) {
    if (v.j == 0) {
      nodes.push_back({v.zeta, 1});
    } else {
      nodes.back().mult += 1;
    }
  }
  return nodes;
}

// Fiber roots at lam matched to the base nodes by proximity: each base node
// absorbs the `mult` nearest remaining roots (averaged). Keeps frames
// continuous across the jet sampling circle, which plain lexicographic
// ordering does not.
std::vector<BaseNode> matched_nodes(const RationalInner& theta,
                                    const std::vector<BaseNode>& base,
                                    cplx lam) {
  RootSet rs = numerator_fiber_roots(theta, lam);
  std::vector<cplx> pool;
  for (const Root& r : rs.roots) {
    for (int k = 0; k < r.multiplicity; ++k) pool.push_back(r.value);
  }
  std::vector<BaseNode> out;
  for (const BaseNode& bn : base) {
    std::sort(pool.begin(), pool.end(), [&](cplx a, cplx b) {
      return std::abs(a - bn.value) < std::abs(b - bn.value);
    });
    if (static_cast<int>(pool.size()) < bn.mult) {
      throw std::runtime_error("node matching lost a fiber root");
    }
    cplx acc = 0.0;
    for (int k = 0; k < bn.mult; ++k) acc += pool[k];
    out.push_back({acc / double(bn.mult), bn.mult});
    pool.erase(pool.begin(), pool.begin() + bn.mult);
  }
  return out;
}

std::vector<FrameVector> frame_from_nodes(cplx lam,
                                          const std::vector<BaseNode>& nodes) {
  std::vector<FrameVector> out;
  for (const BaseNode& n : nodes) {
    for (int j = 0; j < n.mult; ++j) out.push_back({lam, n.value, j});
  }
  return out;
}

Eigen::VectorXcd vec_of(const Eigen::MatrixXcd& M) {
  return Eigen::Map<const Eigen::VectorXcd>(M.data(), M.size());
}

std::vector<Eigen::MatrixXcd> span_basis_of(
    const std::vector<Eigen::MatrixXcd>& mats, double tol = kRankTol) {
  if (mats.empty()) return {};
  const int k = static_cast<int>(mats[0].rows());
  Eigen::MatrixXcd stack(mats.size(), k * k);
  for (size_t i = 0; i < mats.size(); ++i) {
    stack.row(i) = vec_of(mats[i]).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack,
                                         Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > tol * s[0]) ++rank;
  }
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = 0; i < rank; ++i) {
    Eigen::VectorXcd v = svd.matrixV().col(i).conjugate();
    basis.push_back(Eigen::Map<const Eigen::MatrixXcd>(v.data(), k, k));
  }
  return basis;
}

std::vector<Eigen::MatrixXcd> close_algebra(
    const std::vector<Eigen::MatrixXcd>& gens, int L) {
  std::vector<Eigen::MatrixXcd> with_adj = gens;
  for (const auto& g : gens) with_adj.push_back(g.adjoint());
  std::vector<Eigen::MatrixXcd> basis = span_basis_of(with_adj);
  for (int round = 0; round < L; ++round) {
    std::vector<Eigen::MatrixXcd> ext = basis;
    for (const auto& a : basis) {
      for (const auto& b : basis) ext.push_back(a * b);
    }
    std::vector<Eigen::MatrixXcd> nb = span_basis_of(ext);
    if (nb.size() == basis.size()) break;
    basis = std::move(nb);
  }
  return basis;
}

std::vector<Eigen::MatrixXcd> commutant_basis_of(
    const std::vector<Eigen::MatrixXcd>& mats) {
  const int k = static_cast<int>(mats[0].rows());
  Eigen::MatrixXcd stack(mats.size() * k * k, k * k);
  for (size_t m = 0; m < mats.size(); ++m) {
    const Eigen::MatrixXcd& A = mats[m];
    // column-major vec: A X - X A  <->  (I (x) A - A^T (x) I) vec(X)
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(k * k, k * k);
    for (int i = 0; i < k; ++i) {
      M.block(i * k, i * k, k, k) += A;
    }
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        M.block(j * k, i * k, k, k) -=
            A(i, j) * Eigen::MatrixXcd::Identity(k, k);
      }
    }
    stack.block(m * k * k, 0, k * k, k * k) = M;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double top = std::max(1.0, s.size() ? s[0] : 1.0);
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i) {
    if (s[i] < kRankTol * top) {
      Eigen::VectorXcd v = svd.matrixV().col(i);
      basis.push_back(Eigen::Map<const Eigen::MatrixXcd>(v.data(), k, k));
    } else {
      break;
    }
  }
  // pad in case fewer than k*k singular values were reported (never for
  // square full SVD, kept for safety)
  return basis;
}

MatrixAlgebraBasis curvature_algebra_once(const RationalInner& theta,
                                          cplx lambda, int max_order, int L) {
  KernelFrame frame = kernel_frame(theta, lambda);
  std::vector<BaseNode> base = base_nodes(frame);
  PolarizedGramField field = [&theta, base](cplx mu, cplx lam) {
    std::vector<FrameVector> fl =
        frame_from_nodes(mu, matched_nodes(theta, base, mu));
    std::vector<FrameVector> fr =
        frame_from_nodes(lam, matched_nodes(theta, base, lam));
    const int n = static_cast<int>(fl.size());
    Eigen::MatrixXcd G(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) G(i, j) = kernel_inner_product(fl[i], fr[j]);
    }
    return G;
  };

  // jet radius: stay well inside the disk and away from lambda = 0
  double r = std::min({0.04, 0.25 * (1.0 - std::abs(lambda)),
                       0.5 * std::abs(lambda)});
  if (r < 1e-3) {
    throw std::runtime_error("curvature_algebra: lambda too close to 0 or T");
  }
  const int jet_order = max_order + 4;
  MatrixJet G = gram_jet(field, lambda, jet_order, r);
  MatrixJet Th = G.dbar() * G.inverse();
  MatrixJet K = Th.d();
  for (auto& M : K.coeff) M = -M;  // K = -d(dbar G . G^{-1})

  std::vector<MatrixJet> fields{K};
  std::vector<MatrixJet> layer{K};
  for (int o = 1; o <= max_order; ++o) {
    std::vector<MatrixJet> next;
    for (const MatrixJet& M : layer) {
      next.push_back(M.d());
      next.push_back(M.dbar() + Th * M - M * Th);
    }
    for (const MatrixJet& M : next) fields.push_back(M);
    layer = std::move(next);
  }

  Eigen::MatrixXcd G0 = G.value();
  Eigen::LLT<Eigen::MatrixXcd> llt(G0);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("curvature_algebra: Gram not positive definite");
  }
  Eigen::MatrixXcd Lc = llt.matrixL();
  Eigen::MatrixXcd Lcinv = Lc.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXcd::Identity(G0.rows(), G0.cols()));

  // orthonormal-frame gauge: with G = L L^H the frame change e -> e L^{-T}
  // has identity Gram, and frame-coordinate matrices map as M -> L^{-1} M L
  MatrixAlgebraBasis alg;
  alg.lambda = lambda;
  for (const MatrixJet& F : fields) {
    alg.generators.push_back(Lcinv * F.value() * Lc);
  }
  alg.span_basis = close_algebra(alg.generators, L);
  alg.dim = static_cast<int>(alg.span_basis.size());
  return alg;
}

}  // namespace

MatrixAlgebraBasis curvature_algebra(const RationalInner& theta, cplx lambda,
                                     int max_order, int L) {
  MatrixAlgebraBasis alg = curvature_algebra_once(theta, lambda, max_order, L);
  // one escalation if the dimension has not stabilized
  MatrixAlgebraBasis esc =
      curvature_algebra_once(theta, lambda, max_order + 1, L + 1);
  if (esc.dim != alg.dim) alg = std::move(esc);
  // coalescing-point detection: the dimension must be stable under small
  // moves of lambda
  const double delta = 0.02 * std::max(0.1, std::abs(lambda));
  for (cplx off : {cplx(delta, 0.0), cplx(-delta, 0.0)}) {
    MatrixAlgebraBasis nb;
    try {
      nb = curvature_algebra_once(theta, lambda + off, max_order, L);
    } catch (const std::exception&) {
      continue;  // neighbor fell off the component; not evidence of coalescing
    }
    if (nb.dim != alg.dim) {
      throw std::runtime_error(
          "curvature_algebra: dimension unstable near lambda (coalescing "
          "point); resample");
    }
  }
  return alg;
}

ReducibilityReport commutant_and_blocks(const MatrixAlgebraBasis& alg,
                                        unsigned seed) {
  const int k = static_cast<int>(alg.span_basis.front().rows());
  ReducibilityReport rep;
  rep.sample_points = {alg.lambda};

  std::vector<Eigen::MatrixXcd> comm = commutant_basis_of(alg.span_basis);
  rep.commutant_dim = static_cast<int>(comm.size());
  rep.verdict = rep.commutant_dim == 1 ? Reducibility::Irreducible
                                       : Reducibility::Reducible;

  // random self-adjoint commutant element
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(k, k);
  for (const auto& C : comm) X += cplx(gauss(rng), gauss(rng)) * C;
  X = ((X + X.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X);
  Eigen::VectorXd ev = es.eigenvalues();
  Eigen::MatrixXcd V = es.eigenvectors();

  // eigenvalue clusters -> spectral projections
  double spread = std::max(1.0, ev[k - 1] - ev[0]);
  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  int begin = 0;
  for (int i = 1; i <= k; ++i) {
    if (i == k || ev[i] - ev[i - 1] > 1e-6 * spread) {
      clusters.push_back({begin, i});
      begin = i;
    }
  }
  std::vector<Eigen::MatrixXcd> proj;
  for (auto [b, e] : clusters) {
    Eigen::MatrixXcd Vc = V.middleCols(b, e - b);
    proj.push_back(Vc * Vc.adjoint());
  }

  // group clusters into blocks: clusters connected through the commutant
  // belong to equivalent algebra blocks
  const int m = static_cast<int>(clusters.size());
  std::vector<int> block_of(m, -1);
  int nblocks = 0;
  for (int i = 0; i < m; ++i) {
    if (block_of[i] != -1) continue;
    int id = nblocks++;
    std::vector<int> stack{i};
    block_of[i] = id;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int d = 0; d < m; ++d) {
        if (block_of[d] != -1) continue;
        bool connected = false;
        for (const auto& C : comm) {
          if ((proj[c] * C * proj[d]).norm() > 1e-6) {
            connected = true;
            break;
          }
        }
        if (connected) {
          block_of[d] = id;
          stack.push_back(d);
        }
      }
    }
  }
  for (int id = 0; id < nblocks; ++id) {
    int n_i = -1, m_i = 0;
    for (int c = 0; c < m; ++c) {
      if (block_of[c] != id) continue;
      int rank = clusters[c].second - clusters[c].first;
      if (n_i == -1) n_i = rank;
      if (n_i != rank) {
        throw std::runtime_error(
            "commutant_and_blocks: unequal cluster ranks within a block");
      }
      m_i += 1;
      rep.minimal_projections.push_back(proj[c]);
    }
    rep.blocks.push_back({n_i, m_i});
  }

  int sum_nm = 0, sum_m2 = 0;
  for (auto [n_i, m_i] : rep.blocks) {
    sum_nm += n_i * m_i;
    sum_m2 += m_i * m_i;
  }
  if (sum_nm != k || sum_m2 != rep.commutant_dim) {
    throw std::runtime_error(
        "commutant_and_blocks: block structure inconsistent with commutant "
        "dimension");
  }
  return rep;
}

bool cross_component_orthogonal(const std::vector<SectionField>& a,
                                const std::vector<cplx>& pts_a,
                                const std::vector<SectionField>& b,
                                const std::vector<cplx>& pts_b,
                                double* max_abs) {
  double worst = 0.0;
  for (const SectionField& sa : a) {
    for (const SectionField& sb : b) {
      for (cplx mu : pts_a) {
        FrameSection u = sa(mu);
        double nu = std::sqrt(std::abs(section_inner(u, u)));
        for (cplx lam : pts_b) {
          FrameSection v = sb(lam);
          double nv = std::sqrt(std::abs(section_inner(v, v)));
          double val = std::abs(section_inner(u, v)) / (nu * nv);
          worst = std::max(worst, val);
        }
      }
    }
  }
  if (max_abs) *max_abs = worst;
  return worst < 1e-8;
}

namespace {

// Greatest common divisor of the w-exponents carried by the numerator: when
// >= 2, q is a polynomial in (z, w^n) and the kernel bundle splits into exact
// w-Fourier parity sub-bundles.
int w_parity_order(const BiPoly& q) {
  int g = 0;
  for (int a = 0; a <= q.deg_z(); ++a) {
    for (int b = 0; b <= q.deg_w(); ++b) {
      if (std::abs(q.coeffs(a, b)) > kCoeffTrimTol && b > 0) {
        g = g == 0 ? b : std::gcd(g, b);
      }
    }
  }
  return g;
}

std::vector<cplx> component_samples(const FredholmRegionMap& map,
                                    const FredholmComponent& comp, int count,
                                    std::mt19937& rng) {
  // interior cells only: all 4 neighbors share the label
  std::vector<cplx> interior;
  for (int row = 1; row + 1 < map.grid_n; ++row) {
    for (int col = 1; col + 1 < map.grid_n; ++col) {
      int c = map.cell_at(row, col);
      if (map.labels[c] != comp.label) continue;
      if (map.labels[map.cell_at(row - 1, col)] == comp.label &&
          map.labels[map.cell_at(row + 1, col)] == comp.label &&
          map.labels[map.cell_at(row, col - 1)] == comp.label &&
          map.labels[map.cell_at(row, col + 1)] == comp.label) {
        cplx z = map.cell_center(row, col);
        if (std::abs(z) > 0.05 && std::abs(z) < 0.95) interior.push_back(z);
      }
    }
  }
  if (interior.empty()) interior.push_back(comp.representative);
  std::shuffle(interior.begin(), interior.end(), rng);
  if (static_cast<int>(interior.size()) > count) interior.resize(count);
  return interior;
}

// Parity sub-bundle sections: group the in-disk fiber roots at lambda into
// orbits under w -> zeta_n w and form the discrete-Fourier combinations.
std::vector<SectionField> parity_sections(const RationalInner& theta, int n,
                                          int parity) {
  return {SectionField([&theta, n, parity](cplx lambda) {
    RootSet rs = numerator_fiber_roots(theta, lambda);
    std::vector<cplx> in_disk;
    for (const Root& r : rs.roots) {
      if (std::abs(r.value) < 1.0) {
        for (int k = 0; k < r.multiplicity; ++k) in_disk.push_back(r.value);
      }
    }
    cplx zeta = std::polar(1.0, kTau / n);
    std::vector<bool> used(in_disk.size(), false);
    FrameSection s;
    for (size_t i = 0; i < in_disk.size(); ++i) {
      if (used[i]) continue;
      // orbit of in_disk[i]
      used[i] = true;
      std::vector<cplx> orbit{in_disk[i]};
      for (int k = 1; k < n; ++k) {
        cplx target = in_disk[i] * std::pow(zeta, k);
        for (size_t j = 0; j < in_disk.size(); ++j) {
          if (!used[j] && std::abs(in_disk[j] - target) < 1e-8) {
            used[j] = true;
            orbit.push_back(in_disk[j]);
            break;
          }
        }
      }
      if (static_cast<int>(orbit.size()) != n) continue;  // incomplete orbit
      for (int k = 0; k < n; ++k) {
        s.terms.push_back({std::pow(zeta, parity * k),
                           FrameVector{lambda, orbit[k], 0}});
      }
    }
    return s;
  })};
}

}  // namespace

StrictReducibilityReport strict_reducibility(const RationalInner& theta,
                                             const FredholmRegionMap& map,
                                             unsigned seed) {
  StrictReducibilityReport rep;
  std::mt19937 rng(seed);

  std::vector<const FredholmComponent*> comps;
  for (const auto& c : map.components) {
    if (c.kind == VerdictKind::FredholmSpectrum && !c.thin) comps.push_back(&c);
  }
  if (comps.empty()) {
    rep.verdict = Reducibility::Irreducible;
    rep.witness = "no Fredholm components";
    return rep;
  }

  // rank-1 shortcut: a component where the kernel is a line bundle admits no
  // nontrivial decomposition, so no decomposition can be nontrivial everywhere
  for (const auto* c : comps) {
    if (c->index == 1) {
      rep.verdict = Reducibility::Irreducible;
      rep.witness = "component with one-dimensional kernels";
      return rep;
    }
  }

  // per-component verdicts, 3 sample points with consistency voting; a
  // component whose every sample sits next to a node-coalescing point (e.g. a
  // small island around a fiber branch point) stays undecided and is left to
  // the exact parity decomposition below
  std::vector<bool> decided(comps.size(), true);
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    std::vector<cplx> samples = component_samples(map, *comps[ci], 12, rng);
    std::vector<ReducibilityReport> votes;
    for (cplx lam : samples) {
      if (votes.size() == 3) break;
      try {
        MatrixAlgebraBasis alg = curvature_algebra(theta, lam);
        votes.push_back(commutant_and_blocks(alg, seed));
      } catch (const std::exception&) {
        continue;  // coalescing or edge point; try the next sample
      }
    }
    if (votes.empty()) {
      if (comps.size() == 1) {
        throw std::runtime_error(
            "strict_reducibility: no usable sample point in the component");
      }
      decided[ci] = false;
      ReducibilityReport placeholder;
      placeholder.component_id = static_cast<int>(ci);
      placeholder.sample_points = {comps[ci]->representative};
      rep.per_component.push_back(std::move(placeholder));
      continue;
    }
    // majority vote on the commutant dimension
    std::sort(votes.begin(), votes.end(),
              [](const auto& a, const auto& b) {
                return a.commutant_dim < b.commutant_dim;
              });
    ReducibilityReport chosen = votes[votes.size() / 2];
    for (const auto& v : votes) {
      if (v.commutant_dim == chosen.commutant_dim) {
        chosen = v;
        break;
      }
    }
    chosen.component_id = static_cast<int>(ci);
    std::vector<cplx> pts;
    for (const auto& v : votes) {
      pts.insert(pts.end(), v.sample_points.begin(), v.sample_points.end());
    }
    chosen.sample_points = pts;
    rep.per_component.push_back(std::move(chosen));
  }

  if (comps.size() == 1) {
    rep.verdict = rep.per_component[0].verdict;
    rep.witness = rep.verdict == Reducibility::Reducible
                      ? "nontrivial commutant on the single component"
                      : "trivial commutant on the single component";
    return rep;
  }

  // multiple components: a reducing decomposition must be nontrivial on every
  // component, so every decided per-component verdict must be Reducible
  bool any_undecided = false;
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    if (!decided[ci]) {
      any_undecided = true;
      continue;
    }
    if (rep.per_component[ci].verdict == Reducibility::Irreducible) {
      rep.verdict = Reducibility::Irreducible;
      rep.witness = "a component carries a trivial commutant";
      return rep;
    }
  }

  std::vector<std::vector<cplx>> pts;
  for (const auto* c : comps) pts.push_back(component_samples(map, *c, 25, rng));

  // exact parity candidates first: when q is a polynomial in (z, w^n) the
  // w-Fourier sub-bundles are orthogonal across (and within) components
  int n = w_parity_order(theta.q);
  if (n >= 2) {
    std::vector<SectionField> even, odd;
    for (int parity = 0; parity < n; ++parity) {
      auto secs = parity_sections(theta, n, parity);
      auto& dst = parity == 0 ? even : odd;
      dst.insert(dst.end(), secs.begin(), secs.end());
    }
    double worst = 0.0;
    bool all_ok = true;
    rep.cross_orthogonality.assign(comps.size(),
                                   std::vector<bool>(comps.size(), false));
    for (size_t i = 0; i < comps.size(); ++i) {
      for (size_t j = 0; j < comps.size(); ++j) {
        double w = 0.0;
        bool ok = cross_component_orthogonal(even, pts[i], odd, pts[j], &w);
        rep.cross_orthogonality[i][j] = ok;
        worst = std::max(worst, w);
        all_ok = all_ok && ok;
      }
    }
    rep.max_cross_inner = worst;
    if (all_ok) {
      rep.verdict = Reducibility::Reducible;
      rep.witness = "w-Fourier parity decomposition (order " +
                    std::to_string(n) + ")";
      return rep;
    }
  }

  if (any_undecided) {
    throw std::runtime_error(
        "strict_reducibility: a component has no usable sample point and no "
        "exact parity decomposition applies");
  }

  // general candidate search: minimal-projection images extended by fixed
  // coefficients in the node-matched orthonormal frame of each component
  auto projection_section = [&theta](cplx base_lambda,
                                     const Eigen::MatrixXcd& coeff_cols)
      -> std::vector<SectionField> {
    KernelFrame base_frame = kernel_frame(theta, base_lambda);
    std::vector<BaseNode> base = base_nodes(base_frame);
    std::vector<SectionField> out;
    for (int c = 0; c < coeff_cols.cols(); ++c) {
      Eigen::VectorXcd coeff = coeff_cols.col(c);
      out.push_back(SectionField([&theta, base, coeff](cplx lam) {
        std::vector<FrameVector> fv =
            frame_from_nodes(lam, matched_nodes(theta, base, lam));
        FrameSection s;
        for (int i = 0; i < coeff.size(); ++i) {
          if (std::abs(coeff[i]) > 1e-14) s.terms.push_back({coeff[i], fv[i]});
        }
        return s;
      }));
    }
    return out;
  };

  // per component: candidate (E1, E2) pairs from minimal projections
  std::vector<std::vector<std::pair<std::vector<SectionField>,
                                    std::vector<SectionField>>>> cands(
      comps.size());
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& pc = rep.per_component[ci];
    cplx lam0 = pc.sample_points.front();
    for (const auto& P : pc.minimal_projections) {
      // columns spanning the image of P and of its complement
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          P, Eigen::ComputeThinU | Eigen::ComputeThinV);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] > 0.5) ++rank;
      }
      if (rank == 0 || rank == P.rows()) continue;
      Eigen::MatrixXcd img = svd.matrixU().leftCols(rank);
      Eigen::MatrixXcd compl_cols = svd.matrixU().rightCols(P.rows() - rank);
      cands[ci].push_back({projection_section(lam0, img),
                           projection_section(lam0, compl_cols)});
    }
    if (cands[ci].empty()) {
      rep.verdict = Reducibility::Irreducible;
      rep.witness = "no candidate sub-bundles on a component";
      return rep;
    }
  }

  // exhaustive assignment search (candidate index per component)
  std::vector<size_t> pick(comps.size(), 0);
  for (;;) {
    double worst = 0.0;
    bool ok = true;
    for (size_t i = 0; i < comps.size() && ok; ++i) {
      for (size_t j = 0; j < comps.size() && ok; ++j) {
        double w = 0.0;
        ok = cross_component_orthogonal(cands[i][pick[i]].first, pts[i],
                                        cands[j][pick[j]].second, pts[j], &w);
        worst = std::max(worst, w);
      }
    }
    if (ok) {
      rep.verdict = Reducibility::Reducible;
      rep.witness = "minimal-projection assignment";
      rep.max_cross_inner = worst;
      return rep;
    }
    // next assignment
    size_t d = 0;
    while (d < pick.size() && ++pick[d] == cands[d].size()) {
      pick[d] = 0;
      ++d;
    }
    if (d == pick.size()) break;
  }
  rep.verdict = Reducibility::Irreducible;
  rep.witness = "no orthogonal cross-component assignment found";
  return rep;
}

bool degree2_criterion(cplx alpha, cplx beta) {
  if (alpha == 0.0 || beta == 0.0) {
    throw std::invalid_argument("degree2_criterion: zero coefficient");
  }
  return std::abs(alpha + beta) < 1e-12;
}

}  // namespace bidisk
