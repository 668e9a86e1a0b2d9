#pragma once

// JSON matrix schema: {"rows": n, "cols": m, "data": [[re, im], ...]} in
// row-major order. Serialization round-trips finite doubles bit-exactly.

#include <json.hpp>

#include "ptbrach/matrix.hpp"

namespace ptbrach {

inline nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (cplx z : m.data()) data.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols)
    throw std::invalid_argument("matrix_from_json: data length mismatch");
  std::vector<cplx> e;
  e.reserve(rows * cols);
  for (const auto& pair : data)
    e.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return CMatrix(rows, cols, std::move(e));
}

}  // namespace ptbrach
