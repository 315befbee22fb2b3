#pragma once

#include <cstdint>
#include <vector>

#include "krauskit/complex_matrix.hpp"

namespace kraus {

/// Heisenberg: X -> sum_a V_a* X V_a. Schrodinger: X -> sum_a V_a X V_a*.
enum class Picture { Heisenberg, Schrodinger };

/// An ordered family of same-dimension square operators {V_a} with a
/// tolerance used by all validation flags. The family need not satisfy the
/// normalization sum V_a* V_a = Id; validate() reports whether it does.
/// Operator indices are 0-based in this API; serialized outcome labels are
/// 1-based (see the trajectory and io headers).
struct KrausFamily {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> ops;
  double tol = kDefaultTol;

  KrausFamily() = default;
  /// Throws on an empty list, non-square or mismatched operators, or
  /// non-finite entries.
  explicit KrausFamily(std::vector<ComplexMatrix> operators, double tolerance = kDefaultTol);

  std::size_t size() const { return ops.size(); }
};

/// Matrix form of the channel on vec'd inputs, column-stacking convention:
/// matrix * vec(X) = vec(apply(F, X, picture)).
struct Superoperator {
  std::size_t dim = 0;
  Picture picture = Picture::Heisenberg;
  ComplexMatrix matrix;  ///< dim^2 x dim^2
};

struct ValidationReport {
  ComplexMatrix defect_matrix;  ///< sum V_a* V_a - Id
  double defect_norm = 0.0;     ///< operator norm of the defect
  bool is_normalized = false;   ///< defect_norm <= tol

  /// ||[V_a, V_b]||_F, symmetric with zero diagonal.
  std::vector<std::vector<double>> pairwise_commutators;
  double max_commutator = 0.0;
  bool is_commuting = false;  ///< every pair within tol * max(1, ||V_a|| ||V_b||)

  std::vector<double> normality_defects;  ///< ||[V_a, V_a*]||_F per operator
  bool is_normal_family = false;          ///< each within tol * max(1, ||V_a||^2)
};

/// Normalization, pairwise-commutation and normality diagnostics.
ValidationReport validate(const KrausFamily& f);

/// Apply the channel to a dim x dim matrix in the requested picture.
/// Linear in X and Hermiticity-preserving. Throws DimensionMismatch.
ComplexMatrix apply(const KrausFamily& f, const ComplexMatrix& x, Picture picture);

/// Same maps for a raw operator list (used on decomposition blocks).
ComplexMatrix apply_ops(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& x,
                        Picture picture);

/// Dense matrix of the channel under column-stacking vec. Heisenberg picture
/// assembles sum (V^T kron V*), Schrodinger sum (conj(V) kron V); the two
/// are adjoints of each other.
Superoperator superoperator(const KrausFamily& f, Picture picture);
ComplexMatrix superoperator_matrix(const std::vector<ComplexMatrix>& ops, Picture picture,
                                   std::size_t dim);

struct NormIdentityReport {
  double bound = 0.0;      ///< ||sum V_a* V_a||_op, the operator norm of the channel
  double max_ratio = 0.0;  ///< max sampled ||Phi(X)||_op / ||X||_op (identity included)
  bool attained_at_identity = false;  ///< ||Phi(Id)||_op equals bound exactly
  bool bound_respected = false;       ///< max_ratio <= bound * (1 + 1e-10)
};

/// Randomized check that the Heisenberg channel norm equals ||sum V_a* V_a||.
/// `trials` probe matrices are sampled (alternating general complex Gaussian
/// and Hermitian-symmetrized), plus the identity probe which attains the
/// bound. Deterministic for a fixed seed.
NormIdentityReport norm_identity_check(const KrausFamily& f, int trials, std::uint64_t seed);

/// sum_a |[A_beta*, A_alpha]|^2, where |M|^2 = M* M. Positive semidefinite
/// by construction; zero exactly when A_beta* commutes with every A_alpha.
/// beta is a 0-based index into the list.
ComplexMatrix commutator_defect(const std::vector<ComplexMatrix>& a_ops, std::size_t beta);

/// Residual of the identity
///   Phi(A_b A_b*) - A_b Phi(A_b*) - Phi(A_b) A_b* + A_b A_b*
///     = sum_a |[A_b*, A_a]|^2
/// with Phi(X) = sum_a A_a* X A_a, evaluated on arbitrary blocks. The two
/// sides are computed independently; the residual is their Frobenius gap.
double defect_identity_residual(const std::vector<ComplexMatrix>& a_ops, std::size_t beta);

/// Same residual for a Kraus family, with the preconditions of the setting
/// it comes from: throws PreconditionViolated unless the family is both
/// normalized and commuting. Contract: residual <= 1e-10 * dim.
double defect_identity_check(const KrausFamily& f, std::size_t beta);

}  // namespace kraus
