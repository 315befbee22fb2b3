#pragma once

#include <cstdint>
#include <vector>

#include "krauskit/complex_matrix.hpp"

namespace kraus {

struct HermitianEig {
  std::vector<double> eigenvalues;  ///< ascending
  ComplexMatrix eigenvectors;       ///< unitary; column k pairs with eigenvalues[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Sweeps run until the off-diagonal Frobenius mass drops below
/// 1e-14 * ||M||_F, capped at 100 sweeps. Eigenvalues come back ascending;
/// each eigenvector column has its largest-magnitude component made real
/// positive, so identical inputs give identical outputs.
///
/// Throws NotHermitian when ||M - M*||_F > tol * ||M||_F.
HermitianEig hermitian_eig(const ComplexMatrix& m, double tol = kDefaultTol);

/// Largest singular value, computed from the top eigenvalue of M*M with
/// tiny negatives clamped to zero.
double operator_norm(const ComplexMatrix& m);

/// All singular values, ascending.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Orthonormal basis of the numerical null space of M (possibly 0 columns).
///
/// Candidate directions are the eigenvectors of M*M whose singular value
/// falls below 1e-6 * sigma_max (the Gram matrix squares the spectrum, so
/// exact null directions surface around sqrt(eps) relative); each candidate
/// u is then kept only if the direct residual ||M u|| <= tol * ||M||_F,
/// which is the advertised contract. A zero M returns the full space.
ComplexMatrix null_space(const ComplexMatrix& m, double tol);

/// Spectral-radius estimate for a general square matrix by power iteration:
/// `iterations` normalized multiplies per start, estimate = geometric mean
/// of the per-step growth factors, maximized over `starts` seeded random
/// starting vectors. 1x1 matrices are returned exactly.
double spectral_radius_estimate(const ComplexMatrix& s, int iterations = 200,
                                int starts = 3, std::uint64_t seed = 12345);

}  // namespace kraus
