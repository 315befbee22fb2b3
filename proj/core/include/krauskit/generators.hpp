#pragma once

#include <cstdint>
#include <random>

#include "krauskit/channel.hpp"
#include "krauskit/complex_matrix.hpp"

namespace kraus {

/// Deterministic random source: mt19937_64 with hand-rolled uniform and
/// Box-Muller Gaussian transforms, so streams are identical across
/// platforms and standard-library versions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian();
  Cx gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return Cx{re, im};
  }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-like random unitary: QR of a complex Gaussian matrix via modified
/// Gram-Schmidt (two passes).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// Unit column vector with Gaussian direction.
ComplexMatrix random_unit_vector(std::size_t d, Rng& rng);

/// Normalized family from an (m d) x d isometry: orthonormalize the columns
/// of a Gaussian block matrix and slice into m stacked d x d operators, so
/// sum V_a* V_a = Id to machine precision. Deterministic per seed.
KrausFamily random_kraus_isometry(std::size_t d, std::size_t m, std::uint64_t seed,
                                  double tol = kDefaultTol);

/// Commuting normal normalized family V_a = U diag(f_a) U*: one random
/// unitary U, and for each basis index an m-tuple of values drawn uniformly
/// on the complex unit sphere of C^m (so sum_a |f_a(j)|^2 = 1).
KrausFamily random_commuting_normal(std::size_t d, std::size_t m, std::uint64_t seed,
                                    double tol = kDefaultTol);

}  // namespace kraus
