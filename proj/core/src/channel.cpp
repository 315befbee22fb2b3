#include "krauskit/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "krauskit/eig.hpp"
#include "krauskit/errors.hpp"

namespace kraus {

KrausFamily::KrausFamily(std::vector<ComplexMatrix> operators, double tolerance)
    : ops(std::move(operators)), tol(tolerance) {
  if (ops.empty()) throw PreconditionViolated("KrausFamily: needs at least one operator");
  dim = ops.front().rows();
  if (dim == 0) throw PreconditionViolated("KrausFamily: dimension must be positive");
  for (std::size_t a = 0; a < ops.size(); ++a) {
    if (!ops[a].is_square() || ops[a].rows() != dim) {
      throw DimensionMismatch("KrausFamily: operator " + std::to_string(a + 1) + " is " +
                              std::to_string(ops[a].rows()) + "x" + std::to_string(ops[a].cols()) +
                              ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!all_finite(ops[a])) {
      throw PreconditionViolated("KrausFamily: operator " + std::to_string(a + 1) +
                                 " has non-finite entries");
    }
  }
}

ValidationReport validate(const KrausFamily& f) {
  const std::size_t m = f.size();
  ValidationReport rep;

  ComplexMatrix sum(f.dim, f.dim);
  for (const ComplexMatrix& v : f.ops) sum += adjoint(v) * v;
  rep.defect_matrix = sum - ComplexMatrix::identity(f.dim);
  rep.defect_norm = operator_norm(rep.defect_matrix);
  rep.is_normalized = rep.defect_norm <= f.tol;

  std::vector<double> fro(m);
  for (std::size_t a = 0; a < m; ++a) fro[a] = frobenius_norm(f.ops[a]);

  rep.pairwise_commutators.assign(m, std::vector<double>(m, 0.0));
  rep.is_commuting = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double c = frobenius_norm(commutator(f.ops[a], f.ops[b]));
      rep.pairwise_commutators[a][b] = c;
      rep.pairwise_commutators[b][a] = c;
      rep.max_commutator = std::max(rep.max_commutator, c);
      if (c > f.tol * std::max(1.0, fro[a] * fro[b])) rep.is_commuting = false;
    }
  }

  rep.normality_defects.resize(m);
  rep.is_normal_family = true;
  for (std::size_t a = 0; a < m; ++a) {
    rep.normality_defects[a] = normality_defect(f.ops[a]);
    if (rep.normality_defects[a] > f.tol * std::max(1.0, fro[a] * fro[a]))
      rep.is_normal_family = false;
  }
  return rep;
}

ComplexMatrix apply_ops(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& x,
                        Picture picture) {
  if (ops.empty()) return x * 0.0;
  const std::size_t d = ops.front().rows();
  if (!x.is_square() || x.rows() != d) {
    throw DimensionMismatch("apply: X is " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + ", expected " + std::to_string(d) + "x" +
                            std::to_string(d));
  }
  ComplexMatrix out(d, d);
  for (const ComplexMatrix& v : ops) {
    if (picture == Picture::Heisenberg) {
      out += adjoint(v) * x * v;
    } else {
      out += v * x * adjoint(v);
    }
  }
  return out;
}

ComplexMatrix apply(const KrausFamily& f, const ComplexMatrix& x, Picture picture) {
  return apply_ops(f.ops, x, picture);
}

ComplexMatrix superoperator_matrix(const std::vector<ComplexMatrix>& ops, Picture picture,
                                   std::size_t dim) {
  // vec(A X B) = (B^T kron A) vec(X):
  //   Heisenberg  V* X V  -> V^T kron V*
  //   Schrodinger V X V*  -> conj(V) kron V
  ComplexMatrix s(dim * dim, dim * dim);
  for (const ComplexMatrix& v : ops) {
    if (picture == Picture::Heisenberg) {
      s += kron(transpose(v), adjoint(v));
    } else {
      s += kron(conjugate(v), v);
    }
  }
  return s;
}

Superoperator superoperator(const KrausFamily& f, Picture picture) {
  Superoperator s;
  s.dim = f.dim;
  s.picture = picture;
  s.matrix = superoperator_matrix(f.ops, picture, f.dim);
  return s;
}

NormIdentityReport norm_identity_check(const KrausFamily& f, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionViolated("norm_identity_check: trials must be >= 1");
  NormIdentityReport rep;

  ComplexMatrix gram(f.dim, f.dim);
  for (const ComplexMatrix& v : f.ops) gram += adjoint(v) * v;
  rep.bound = operator_norm(gram);

  std::mt19937_64 gen(seed);
  auto uniform = [&]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  auto gaussian = [&]() {
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * uniform());
  };

  for (int t = 0; t < trials; ++t) {
    ComplexMatrix x(f.dim, f.dim);
    for (std::size_t k = 0; k < x.data().size(); ++k) x.data()[k] = Cx{gaussian(), gaussian()};
    if (t % 2 == 1) x = hermitian_part(x);
    const double nx = operator_norm(x);
    if (nx == 0.0) continue;
    rep.max_ratio = std::max(rep.max_ratio, operator_norm(apply(f, x, Picture::Heisenberg)) / nx);
  }

  // The identity probe: Phi(Id) = sum V_a* V_a bit for bit, so the bound is
  // attained with exact equality of operator norms.
  const ComplexMatrix phi_id = apply(f, ComplexMatrix::identity(f.dim), Picture::Heisenberg);
  const double id_norm = operator_norm(phi_id);
  rep.max_ratio = std::max(rep.max_ratio, id_norm);
  rep.attained_at_identity = (id_norm == rep.bound);
  rep.bound_respected = rep.max_ratio <= rep.bound * (1.0 + 1e-10);
  return rep;
}

ComplexMatrix commutator_defect(const std::vector<ComplexMatrix>& a_ops, std::size_t beta) {
  if (beta >= a_ops.size()) throw IndexOutOfRange("commutator_defect: beta out of range");
  const std::size_t d = a_ops.front().rows();
  for (const ComplexMatrix& a : a_ops) {
    if (!a.is_square() || a.rows() != d)
      throw DimensionMismatch("commutator_defect: blocks must be square and same-dimension");
  }
  const ComplexMatrix beta_adj = adjoint(a_ops[beta]);
  ComplexMatrix out(d, d);
  for (const ComplexMatrix& a : a_ops) {
    const ComplexMatrix c = beta_adj * a - a * beta_adj;
    out += adjoint(c) * c;
  }
  return out;
}

double defect_identity_residual(const std::vector<ComplexMatrix>& a_ops, std::size_t beta) {
  if (beta >= a_ops.size()) throw IndexOutOfRange("defect_identity_residual: beta out of range");
  const ComplexMatrix& ab = a_ops[beta];
  const ComplexMatrix ab_adj = adjoint(ab);
  const ComplexMatrix lhs = apply_ops(a_ops, ab * ab_adj, Picture::Heisenberg) -
                            ab * apply_ops(a_ops, ab_adj, Picture::Heisenberg) -
                            apply_ops(a_ops, ab, Picture::Heisenberg) * ab_adj + ab * ab_adj;
  return frobenius_norm(lhs - commutator_defect(a_ops, beta));
}

double defect_identity_check(const KrausFamily& f, std::size_t beta) {
  const ValidationReport rep = validate(f);
  if (!rep.is_normalized) {
    throw PreconditionViolated("defect_identity_check: family not normalized (defect " +
                               std::to_string(rep.defect_norm) + ")");
  }
  if (!rep.is_commuting) {
    throw PreconditionViolated("defect_identity_check: family not commuting (max commutator " +
                               std::to_string(rep.max_commutator) + ")");
  }
  return defect_identity_residual(f.ops, beta);
}

}  // namespace kraus
