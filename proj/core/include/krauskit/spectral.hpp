#pragma once

#include <vector>

#include "krauskit/channel.hpp"
#include "krauskit/complex_matrix.hpp"

namespace kraus {

/// Eigenvalue-cluster gap (relative to max(1, ||V||_F)) used when splitting
/// blocks during joint diagonalization. Clustering errs toward merging: a
/// merged class still yields a valid witness, a false split would break
/// diagonality.
inline constexpr double kClusterTol = 1e-7;

/// Joint eigenbasis of a commuting normal family.
struct JointEigenstructure {
  ComplexMatrix basis;             ///< d x d unitary of joint eigenvectors
  ComplexMatrix eigenvalue_table;  ///< m x d; row a holds the eigenvalue of V_a per column
  /// Column groups sharing one eigenvalue m-tuple, each a contiguous run of
  /// column indices; classes are sorted lexicographically by their tuple
  /// (re, im of the first operator first).
  std::vector<std::vector<std::size_t>> classes;
};

/// Simultaneously diagonalize a commuting family of normal operators by
/// recursive block refinement: for each operator, split the current column
/// blocks along the eigenvalue clusters of its Hermitian and anti-Hermitian
/// parts until no block splits. Normalization is not required.
///
/// Throws NotCommuting / NotNormal naming the offending pair or operator.
JointEigenstructure simultaneous_diagonalize(const KrausFamily& f);

/// Non-demolition witness: one Hermitian observable N and scalar tables
/// f_a so that V_a = f_a(N).
struct NdWitness {
  ComplexMatrix n_operator;           ///< Hermitian, integer spectrum
  std::vector<double> lambda_values;  ///< one distinct integer per class (0, 1, 2, ...)
  ComplexMatrix f_table;              ///< m x num_classes; f_table(a, j) = f_a(lambda_j)
};

/// Build the witness from a joint eigenstructure: N = sum_j lambda_j P_j
/// over the class projectors, f tables from the shared eigenvalue tuples.
NdWitness build_witness(const JointEigenstructure& j);

/// Evaluate f_a(N) for every a, using only the witness: eigendecompose N,
/// assign each eigenvector to the nearest lambda, and sum f_a(lambda) times
/// the eigenprojectors. Reconstructs the original family for a valid
/// witness.
std::vector<ComplexMatrix> reconstruct_family(const NdWitness& w);

}  // namespace kraus
