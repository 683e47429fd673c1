#pragma once

#include <string>

// single-header nlohmann JSON at the vendor root
#include <json.hpp>

#include "bidisk/inner.hpp"
#include "bidisk/reduce.hpp"
#include "bidisk/spectrum.hpp"

namespace bidisk {

// {"coeffs": [[[re, im], ...], ...]}, row index = z power, column = w power
nlohmann::json bipoly_to_json(const BiPoly& p);
BiPoly bipoly_from_json(const nlohmann::json& j);

// {"k", "l", "p", "factors": [{"poly", "exp"}], "mode": "inner"|"polynomial"}
// In polynomial mode the field "p" carries the defining polynomial itself.
nlohmann::json inner_to_json(const RationalInner& theta);
RationalInner inner_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const SpectralVerdict& v);
nlohmann::json region_map_to_json(const FredholmRegionMap& map);
nlohmann::json reducibility_to_json(const ReducibilityReport& r);
nlohmann::json strict_reducibility_to_json(const StrictReducibilityReport& r);

// row-major [re, im] pair encoding
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& M);

// fixed 17-significant-digit formatting for byte-deterministic reports
std::string format_double(double x);

}  // namespace bidisk
