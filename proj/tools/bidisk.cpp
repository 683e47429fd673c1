// Command-line front end: spectral maps, essential curves, kernel-bundle
// geometry, reducibility verdicts, and the finite-truncation laboratory for
// compressed shifts on bidisk quotient modules.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bidisk/bundle.hpp"
#include "bidisk/json_io.hpp"
#include "bidisk/quotient.hpp"
#include "bidisk/reduce.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bidisk;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string input;
  std::string out = ".";
  int grid = 301;
  double tol = 1e-6;
  int degree = 14;
  unsigned seed = 12345;
};

json defaults_echo(const Options& opt) {
  // every report carries the full parameter set so regressions pin it
  return json{{"input", opt.input}, {"grid", opt.grid},
              {"tol", opt.tol},     {"degree", opt.degree},
              {"seed", opt.seed},   {"R", 1.1},
              {"fd_step", 1e-4},    {"max_order", 2},
              {"product_length", 3}};
}

RationalInner load_input(const Options& opt) {
  std::ifstream in(opt.input);
  if (!in) {
    std::cerr << "cannot open input file: " << opt.input << "\n";
    std::exit(kExitIo);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    std::cerr << "input is not valid JSON: " << e.what() << "\n";
    std::exit(kExitParse);
  }
  try {
    return inner_from_json(j);
  } catch (const ValidationError& e) {
    std::cerr << "input failed validation: " << e.what() << "\n";
    std::exit(kExitValidation);
  } catch (const std::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    std::exit(kExitParse);
  }
}

std::ofstream open_out(const Options& opt, const std::string& name) {
  fs::path dir(opt.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write output file: " << (dir / name).string() << "\n";
    std::exit(kExitIo);
  }
  return f;
}

void write_json(const Options& opt, const std::string& name, const json& j) {
  auto f = open_out(opt, name);
  f << j.dump(2) << "\n";
  if (!f.good()) std::exit(kExitIo);
}

const char* verdict_name(const SpectralVerdict& v) {
  switch (v.kind) {
    case VerdictKind::Resolvent: return "resolvent";
    case VerdictKind::Essential: return "essential";
    default: return "fredholm";
  }
}

int run_analyze(const Options& opt) {
  RationalInner theta = load_input(opt);
  FredholmRegionMap map = decompose_fredholm_regions(theta, 1.1, opt.grid);
  EssentialCurves curves = trace_essential_curves(theta, 1024, opt.tol);

  json components = json::array();
  json alpha = json::array();
  for (const auto& c : map.components) {
    components.push_back({{"label", c.label},
                          {"kind", verdict_name({c.kind, c.index})},
                          {"index", c.index},
                          {"representative",
                           {c.representative.real(), c.representative.imag()}},
                          {"cell_count", c.cell_count},
                          {"thin", c.thin}});
    if (c.kind == VerdictKind::FredholmSpectrum && !c.thin) {
      alpha.push_back(c.index);
    }
  }

  json factor_verdicts = json::array();
  bool all_connected = true;
  for (const auto& f : theta.factors) {
    bool conn = factor_projection_connected(f.poly, 1.1, opt.grid);
    all_connected = all_connected && conn;
    factor_verdicts.push_back({{"connected", conn}, {"exp", f.exp}});
  }
  if (theta.factors.empty()) {
    bool conn = factor_projection_connected(theta.q, 1.1, opt.grid);
    all_connected = conn;
    factor_verdicts.push_back({{"connected", conn}, {"exp", 1}});
  }

  json report{{"params", defaults_echo(opt)},
              {"components", components},
              {"alpha", alpha},
              {"essential_curve_count", static_cast<int>(curves.curves.size())},
              {"cowen_douglas", all_connected}};
  try {
    StrictReducibilityReport red = strict_reducibility(theta, map, opt.seed);
    report["reducibility"] =
        red.verdict == Reducibility::Reducible ? "Reducible" : "Irreducible";
  } catch (const std::exception& e) {
    report["reducibility"] = std::string("unavailable: ") + e.what();
  }
  write_json(opt, "report.json", report);
  return 0;
}

int run_spectrum_map(const Options& opt) {
  RationalInner theta = load_input(opt);
  FredholmRegionMap map = decompose_fredholm_regions(theta, 1.1, opt.grid);

  {
    auto csv = open_out(opt, "grid.csv");
    csv << "re,im,verdict,index\n";
    for (int row = 0; row < map.grid_n; ++row) {
      for (int col = 0; col < map.grid_n; ++col) {
        cplx z = map.cell_center(row, col);
        const SpectralVerdict& v = map.cells[map.cell_at(row, col)];
        csv << format_double(z.real()) << "," << format_double(z.imag()) << ","
            << verdict_name(v) << "," << v.index << "\n";
      }
    }
    if (!csv.good()) return kExitIo;
  }
  {
    auto pgm = open_out(opt, "map.pgm");
    pgm << "P5\n" << map.grid_n << " " << map.grid_n << "\n255\n";
    // image rows top-down: start at im = +R
    for (int row = map.grid_n - 1; row >= 0; --row) {
      for (int col = 0; col < map.grid_n; ++col) {
        const SpectralVerdict& v = map.cells[map.cell_at(row, col)];
        int g = 255;
        if (v.kind == VerdictKind::Essential) g = 0;
        if (v.kind == VerdictKind::FredholmSpectrum) {
          g = std::clamp(200 - 40 * v.index, 0, 255);
        }
        pgm.put(static_cast<char>(g));
      }
    }
    if (!pgm.good()) return kExitIo;
  }
  write_json(opt, "map.json",
             json{{"params", defaults_echo(opt)},
                  {"map", region_map_to_json(map)}});
  return 0;
}

int run_curves(const Options& opt) {
  RationalInner theta = load_input(opt);
  EssentialCurves curves = trace_essential_curves(theta, 1024, opt.tol);
  auto csv = open_out(opt, "curves.csv");
  csv << "curve,t,re,im,uncertain\n";
  for (size_t c = 0; c < curves.curves.size(); ++c) {
    const auto& cur = curves.curves[c];
    for (size_t i = 0; i < cur.t.size(); ++i) {
      csv << c << "," << format_double(cur.t[i]) << ","
          << format_double(cur.z[i].real()) << ","
          << format_double(cur.z[i].imag()) << "," << (cur.uncertain ? 1 : 0)
          << "\n";
    }
  }
  if (!csv.good()) return kExitIo;
  return 0;
}

int run_bundle(const Options& opt) {
  RationalInner theta = load_input(opt);
  FredholmRegionMap map = decompose_fredholm_regions(theta, 1.1, opt.grid);
  json reports = json::array();
  for (const auto& c : map.components) {
    if (c.kind != VerdictKind::FredholmSpectrum || c.thin) continue;
    cplx lambda = c.representative;
    KernelFrame frame = kernel_frame(theta, lambda);
    Eigen::MatrixXcd G = gram(frame);
    GramField field = [&theta](cplx l) { return gram(kernel_frame(theta, l)); };
    Eigen::MatrixXcd Th = connection_matrix(field, lambda, 1e-4);
    CurvatureReport cur = curvature_samples(field, lambda, 1e-4, 0);
    json nodes = json::array();
    for (const auto& v : frame.vectors) {
      nodes.push_back({{"zeta", {v.zeta.real(), v.zeta.imag()}}, {"order", v.j}});
    }
    reports.push_back({{"component", c.label},
                       {"lambda", {lambda.real(), lambda.imag()}},
                       {"nodes", nodes},
                       {"gram", matrix_to_json(G)},
                       {"connection", matrix_to_json(Th)},
                       {"curvature", matrix_to_json(cur.curvature_frame)},
                       {"on_transform", matrix_to_json(cur.on_transform)}});
  }
  write_json(opt, "bundle.json",
             json{{"params", defaults_echo(opt)}, {"reports", reports}});
  return 0;
}

int run_reduce_check(const Options& opt) {
  RationalInner theta = load_input(opt);
  FredholmRegionMap map = decompose_fredholm_regions(theta, 1.1, opt.grid);
  StrictReducibilityReport rep = strict_reducibility(theta, map, opt.seed);
  write_json(opt, "reducibility.json",
             json{{"params", defaults_echo(opt)},
                  {"report", strict_reducibility_to_json(rep)}});
  return 0;
}

int run_quotient_lab(const Options& opt) {
  RationalInner theta = load_input(opt);
  const BiPoly& q = theta.q;
  int D = opt.degree;
  TruncationBasis basis = quotient_basis(q, D);
  CompressedShiftMatrix S = compress_shift(basis, Var::Z);
  int interior = std::min(D - 4, D - q.deg_z() - 1);
  int cdim = commutant_dim_estimate(basis, S, interior);

  json report{{"params", defaults_echo(opt)},
              {"box_dim", basis.box_dim()},
              {"complement_dim", static_cast<int>(basis.Q.cols())},
              {"interior_degree", interior},
              {"commutant_dim_estimate", cdim}};

  // weighted-shift table when q = c (z^m - w^n)
  int m = q.deg_z(), n = q.deg_w();
  bool monomial_pair = true;
  for (int a = 0; a <= m && monomial_pair; ++a) {
    for (int b = 0; b <= n && monomial_pair; ++b) {
      bool corner = (a == m && b == 0) || (a == 0 && b == n);
      if (!corner && std::abs(q.coeffs(a, b)) > kCoeffTrimTol) {
        monomial_pair = false;
      }
    }
  }
  if (monomial_pair && m >= 1 && n >= 1 &&
      std::abs(q.coeffs(m, 0) + q.coeffs(0, n)) < 1e-12) {
    WeightedShiftCheck check = weighted_shift_weights(m, n, D);
    auto csv = open_out(opt, "weights.csv");
    csv << "N,formula,matrix,abs_diff\n";
    for (size_t N = 0; N < check.formula.size(); ++N) {
      csv << N << "," << format_double(check.formula[N]) << ","
          << format_double(check.matrix[N]) << ","
          << format_double(std::abs(check.formula[N] - check.matrix[N]))
          << "\n";
    }
    if (!csv.good()) return kExitIo;
    report["weighted_shift"] = {{"m", m},
                                {"n", n},
                                {"multiplicity", check.multiplicity},
                                {"max_abs_diff", check.max_abs_diff}};
  }
  write_json(opt, "quotient.json", report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral analysis of compressed shifts on bidisk quotient modules"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "input JSON file")->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--grid", opt.grid, "grid resolution per axis");
    sub->add_option("--tol", opt.tol, "classification tolerance");
    sub->add_option("--degree", opt.degree, "truncation degree");
    sub->add_option("--seed", opt.seed, "RNG seed for sampled points");
  };

  auto* analyze = app.add_subcommand("analyze", "full spectral report");
  auto* smap = app.add_subcommand("spectrum-map", "grid CSV and PGM map");
  auto* curves = app.add_subcommand("curves", "essential curve polylines");
  auto* bundle = app.add_subcommand("bundle", "kernel-bundle geometry report");
  auto* reduce = app.add_subcommand("reduce-check", "reducibility verdict");
  auto* qlab = app.add_subcommand("quotient-lab", "finite truncation laboratory");
  for (auto* sub : {analyze, smap, curves, bundle, reduce, qlab}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (analyze->parsed()) return run_analyze(opt);
    if (smap->parsed()) return run_spectrum_map(opt);
    if (curves->parsed()) return run_curves(opt);
    if (bundle->parsed()) return run_bundle(opt);
    if (reduce->parsed()) return run_reduce_check(opt);
    if (qlab->parsed()) return run_quotient_lab(opt);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
