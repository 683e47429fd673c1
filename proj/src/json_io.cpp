#include "bidisk/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace bidisk {

using nlohmann::json;

namespace {

json cplx_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("expected [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json bipoly_to_json(const BiPoly& p) {
  json rows = json::array();
  for (int a = 0; a < p.coeffs.rows(); ++a) {
    json row = json::array();
    for (int b = 0; b < p.coeffs.cols(); ++b) {
      row.push_back(cplx_to_json(p.coeffs(a, b)));
    }
    rows.push_back(row);
  }
  return json{{"coeffs", rows}};
}

BiPoly bipoly_from_json(const json& j) {
  if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
    throw std::invalid_argument("BiPoly JSON needs a nonempty coeffs array");
  }
  const json& rows = j["coeffs"];
  size_t ncols = rows[0].size();
  Eigen::MatrixXcd c(rows.size(), ncols);
  for (size_t a = 0; a < rows.size(); ++a) {
    if (rows[a].size() != ncols) {
      throw std::invalid_argument("ragged coeffs rows");
    }
    for (size_t b = 0; b < ncols; ++b) c(a, b) = cplx_from_json(rows[a][b]);
  }
  return BiPoly(std::move(c));
}

json inner_to_json(const RationalInner& theta) {
  json factors = json::array();
  for (const auto& f : theta.factors) {
    factors.push_back({{"poly", bipoly_to_json(f.poly)}, {"exp", f.exp}});
  }
  return json{{"k", theta.k},
              {"l", theta.l},
              {"p", bipoly_to_json(theta.polynomial_mode ? theta.q : theta.p)},
              {"factors", factors},
              {"mode", theta.polynomial_mode ? "polynomial" : "inner"}};
}

RationalInner inner_from_json(const json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string k = it.key();
    if (k != "k" && k != "l" && k != "p" && k != "factors" && k != "mode") {
      throw std::invalid_argument("unknown field in input: " + k);
    }
  }
  std::string mode = j.value("mode", "inner");
  std::vector<InnerFactor> factors;
  if (j.contains("factors")) {
    for (const auto& f : j["factors"]) {
      factors.push_back({bipoly_from_json(f.at("poly")), f.value("exp", 1)});
    }
  }
  BiPoly p = bipoly_from_json(j.at("p"));
  if (mode == "polynomial") {
    return make_polynomial_module(p, factors);
  }
  if (mode != "inner") throw std::invalid_argument("mode must be inner|polynomial");
  return make_rational_inner(p, j.value("k", 0), j.value("l", 0), factors);
}

json verdict_to_json(const SpectralVerdict& v) {
  const char* kind = v.kind == VerdictKind::Resolvent      ? "resolvent"
                     : v.kind == VerdictKind::Essential    ? "essential"
                                                           : "fredholm";
  return json{{"kind", kind}, {"index", v.index}};
}

json region_map_to_json(const FredholmRegionMap& map) {
  json comps = json::array();
  for (const auto& c : map.components) {
    comps.push_back({{"label", c.label},
                     {"kind", verdict_to_json({c.kind, c.index})["kind"]},
                     {"index", c.index},
                     {"representative", cplx_to_json(c.representative)},
                     {"cell_count", c.cell_count},
                     {"thin", c.thin}});
  }
  return json{{"R", map.R}, {"grid_n", map.grid_n}, {"components", comps}};
}

json reducibility_to_json(const ReducibilityReport& r) {
  json blocks = json::array();
  for (auto [n, m] : r.blocks) blocks.push_back({{"n", n}, {"m", m}});
  json pts = json::array();
  for (cplx p : r.sample_points) pts.push_back(cplx_to_json(p));
  json projs = json::array();
  for (const auto& P : r.minimal_projections) projs.push_back(matrix_to_json(P));
  return json{{"component_id", r.component_id},
              {"blocks", blocks},
              {"commutant_dim", r.commutant_dim},
              {"minimal_projections", projs},
              {"verdict", r.verdict == Reducibility::Reducible ? "Reducible"
                                                               : "Irreducible"},
              {"sample_points", pts}};
}

json strict_reducibility_to_json(const StrictReducibilityReport& r) {
  json per = json::array();
  for (const auto& c : r.per_component) per.push_back(reducibility_to_json(c));
  return json{{"per_component", per},
              {"cross_orthogonality", r.cross_orthogonality},
              {"verdict", r.verdict == Reducibility::Reducible ? "Reducible"
                                                               : "Irreducible"},
              {"witness", r.witness},
              {"max_cross_inner", r.max_cross_inner}};
}

json matrix_to_json(const Eigen::MatrixXcd& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(cplx_to_json(M(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace bidisk
