#pragma once

#include <cmath>
#include <vector>

#include "krauskit/channel.hpp"
#include "krauskit/complex_matrix.hpp"

namespace kraus::fixtures {

/// Amplitude damping with decay probability gamma:
/// V1 = diag(1, sqrt(1-gamma)), V2 = sqrt(gamma) |0><1|.
inline KrausFamily amplitude_damping(double gamma = 0.5) {
  ComplexMatrix v1(2, 2);
  v1(0, 0) = 1.0;
  v1(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix v2(2, 2);
  v2(0, 1) = std::sqrt(gamma);
  return KrausFamily({v1, v2});
}

/// Projective measurement in the computational basis: {|0><0|, |1><1|}.
inline KrausFamily projective_qubit() {
  return KrausFamily({ComplexMatrix::matrix_unit(2, 0, 0), ComplexMatrix::matrix_unit(2, 1, 1)});
}

inline ComplexMatrix basis_vector(std::size_t d, std::size_t k) {
  ComplexMatrix v(d, 1);
  v(k, 0) = Cx{1.0, 0.0};
  return v;
}

/// Cascade damping toward |0> on C^d: V1 = diag(1, sqrt(1-g), ...),
/// jump operators sqrt(g) |0><j| for j >= 1. Normalized with stationary
/// state |0><0|, so dim_F = 1 and dim_D = d - 1.
inline KrausFamily damped_cascade(std::size_t d, double gamma = 0.5) {
  std::vector<ComplexMatrix> ops;
  ComplexMatrix v1 = ComplexMatrix::identity(d);
  for (std::size_t j = 1; j < d; ++j) v1(j, j) = std::sqrt(1.0 - gamma);
  ops.push_back(v1);
  for (std::size_t j = 1; j < d; ++j) {
    ComplexMatrix v(d, d);
    v(0, j) = std::sqrt(gamma);
    ops.push_back(v);
  }
  return KrausFamily(std::move(ops));
}

}  // namespace kraus::fixtures
