#include "krauskit/generators.hpp"

#include <cmath>

#include "krauskit/errors.hpp"

namespace kraus {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = radius * std::sin(2.0 * M_PI * u2);
  return radius * std::cos(2.0 * M_PI * u2);
}

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = rng.gaussian_complex();
  return m;
}

namespace {

/// Modified Gram-Schmidt, two passes per column for orthogonality at
/// machine precision.
void orthonormalize_columns(ComplexMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Cx overlap{0.0, 0.0};
        for (std::size_t i = 0; i < rows; ++i) overlap += std::conj(m(i, k)) * m(i, j);
        for (std::size_t i = 0; i < rows; ++i) m(i, j) -= overlap * m(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      throw NoConvergence("orthonormalize_columns: rank-deficient random draw");
    }
    for (std::size_t i = 0; i < rows; ++i) m(i, j) *= 1.0 / norm;
  }
}

}  // namespace

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix m = random_gaussian_matrix(d, d, rng);
  orthonormalize_columns(m);
  return m;
}

ComplexMatrix random_unit_vector(std::size_t d, Rng& rng) {
  ComplexMatrix v = random_gaussian_matrix(d, 1, rng);
  const double n = vector_norm(v);
  if (n == 0.0) throw NoConvergence("random_unit_vector: zero draw");
  return (1.0 / n) * v;
}

KrausFamily random_kraus_isometry(std::size_t d, std::size_t m, std::uint64_t seed, double tol) {
  if (d < 1 || m < 1)
    throw PreconditionViolated("random_kraus_isometry: need d >= 1 and m >= 1");
  Rng rng(seed);
  ComplexMatrix stacked = random_gaussian_matrix(m * d, d, rng);
  orthonormalize_columns(stacked);

  std::vector<ComplexMatrix> ops;
  ops.reserve(m);
  for (std::size_t a = 0; a < m; ++a) ops.push_back(block(stacked, a * d, 0, d, d));
  return KrausFamily(std::move(ops), tol);
}

KrausFamily random_commuting_normal(std::size_t d, std::size_t m, std::uint64_t seed, double tol) {
  if (d < 1 || m < 1)
    throw PreconditionViolated("random_commuting_normal: need d >= 1 and m >= 1");
  Rng rng(seed);
  const ComplexMatrix u = random_unitary(d, rng);
  const ComplexMatrix u_adj = adjoint(u);

  // Per basis index, an outcome-amplitude tuple on the unit sphere of C^m.
  std::vector<std::vector<Cx>> f(m, std::vector<Cx>(d));
  for (std::size_t j = 0; j < d; ++j) {
    double norm = 0.0;
    std::vector<Cx> tuple(m);
    for (std::size_t a = 0; a < m; ++a) {
      tuple[a] = rng.gaussian_complex();
      norm += std::norm(tuple[a]);
    }
    norm = std::sqrt(norm);
    for (std::size_t a = 0; a < m; ++a) f[a][j] = tuple[a] / norm;
  }

  std::vector<ComplexMatrix> ops;
  ops.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    ComplexMatrix scaled = u;  // scale columns by the eigenvalues, then close with U*
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= f[a][j];
    ops.push_back(scaled * u_adj);
  }
  return KrausFamily(std::move(ops), tol);
}

}  // namespace kraus
