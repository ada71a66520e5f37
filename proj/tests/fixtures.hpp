#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ucvrp/instance.hpp"

namespace ucvrp::ref {

// Depot at position 0, customer i at positions[i-1] on a line.
inline Instance line_instance(const std::vector<double>& positions,
                              const std::vector<std::int64_t>& demands,
                              std::int64_t k, std::string name = "line") {
  RawInstance raw;
  raw.name = std::move(name);
  raw.capacity = k;
  raw.demands = demands;
  std::vector<double> pos{0.0};
  pos.insert(pos.end(), positions.begin(), positions.end());
  const std::size_t m = pos.size();
  raw.matrix.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      raw.matrix[i * m + j] = std::abs(pos[i] - pos[j]);
    }
  }
  return validate_instance(std::move(raw));
}

inline Instance matrix_instance(std::vector<double> matrix,
                                const std::vector<std::int64_t>& demands,
                                std::int64_t k) {
  RawInstance raw;
  raw.name = "matrix";
  raw.capacity = k;
  raw.demands = demands;
  raw.matrix = std::move(matrix);
  return validate_instance(std::move(raw));
}

inline std::string data_path(const std::string& file) {
  return std::string(UCVRP_DATA_DIR) + "/" + file;
}

} // namespace ucvrp::ref
