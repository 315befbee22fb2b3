#include "krauskit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "krauskit/eig.hpp"
#include "krauskit/errors.hpp"

namespace kraus {

namespace {

/// Split ascending eigenvalues into clusters at gaps above `gap`.
std::vector<std::vector<std::size_t>> cluster_ascending(const std::vector<double>& values,
                                                        double gap) {
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == 0 || values[k] - values[k - 1] > gap) clusters.emplace_back();
    clusters.back().push_back(k);
  }
  return clusters;
}

}  // namespace

JointEigenstructure simultaneous_diagonalize(const KrausFamily& f) {
  const ValidationReport rep = validate(f);
  const std::size_t m = f.size();
  const std::size_t d = f.dim;

  if (!rep.is_commuting) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const double fro = std::max(
            1.0, frobenius_norm(f.ops[a]) * frobenius_norm(f.ops[b]));
        if (rep.pairwise_commutators[a][b] > f.tol * fro) {
          throw NotCommuting("simultaneous_diagonalize: operators " + std::to_string(a + 1) +
                             " and " + std::to_string(b + 1) + " have commutator norm " +
                             std::to_string(rep.pairwise_commutators[a][b]));
        }
      }
  }
  if (!rep.is_normal_family) {
    for (std::size_t a = 0; a < m; ++a) {
      const double fro = frobenius_norm(f.ops[a]);
      if (rep.normality_defects[a] > f.tol * std::max(1.0, fro * fro)) {
        throw NotNormal("simultaneous_diagonalize: operator " + std::to_string(a + 1) +
                        " has normality defect " + std::to_string(rep.normality_defects[a]));
      }
    }
  }

  ComplexMatrix u = ComplexMatrix::identity(d);
  std::vector<std::vector<std::size_t>> partition{std::vector<std::size_t>(d)};
  std::iota(partition[0].begin(), partition[0].end(), 0);

  // Refine until no operator part splits any block. d columns can split at
  // most d - 1 times, so the outer loop terminates quickly.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < m; ++a) {
      const double gap = kClusterTol * std::max(1.0, frobenius_norm(f.ops[a]));
      for (const ComplexMatrix& h :
           {hermitian_part(f.ops[a]), antihermitian_part(f.ops[a])}) {
        std::vector<std::vector<std::size_t>> next;
        for (const std::vector<std::size_t>& blk : partition) {
          if (blk.size() == 1) {
            next.push_back(blk);
            continue;
          }
          const ComplexMatrix ub = select_columns(u, blk);
          const HermitianEig eig = hermitian_eig(adjoint(ub) * h * ub, 1e-6);
          const ComplexMatrix rotated = ub * eig.eigenvectors;
          for (std::size_t k = 0; k < blk.size(); ++k)
            for (std::size_t i = 0; i < d; ++i) u(i, blk[k]) = rotated(i, k);

          const auto clusters = cluster_ascending(eig.eigenvalues, gap);
          if (clusters.size() > 1) changed = true;
          for (const auto& cluster : clusters) {
            std::vector<std::size_t> sub;
            for (std::size_t k : cluster) sub.push_back(blk[k]);
            next.push_back(std::move(sub));
          }
        }
        partition = std::move(next);
      }
    }
  }

  // Eigenvalues from the diagonal of the rotated operators, plus a
  // diagonality check: refinement must have exhausted all structure.
  ComplexMatrix table(m, d);
  const ComplexMatrix u_adj = adjoint(u);
  for (std::size_t a = 0; a < m; ++a) {
    const ComplexMatrix w = u_adj * f.ops[a] * u;
    double off = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      table(a, j) = w(j, j);
      for (std::size_t i = 0; i < d; ++i)
        if (i != j) off += std::norm(w(i, j));
    }
    const double scale = std::max(1.0, frobenius_norm(f.ops[a]));
    if (std::sqrt(off) > 100.0 * std::max(f.tol, 1e-12) * scale) {
      throw NoConvergence("simultaneous_diagonalize: operator " + std::to_string(a + 1) +
                          " is not diagonal in the refined basis (residual " +
                          std::to_string(std::sqrt(off)) + ")");
    }
  }

  // Deterministic class order: lexicographic in the eigenvalue tuple.
  auto tuple_less = [&](const std::vector<std::size_t>& lhs, const std::vector<std::size_t>& rhs) {
    const std::size_t jl = lhs.front(), jr = rhs.front();
    for (std::size_t a = 0; a < m; ++a) {
      const Cx l = table(a, jl), r = table(a, jr);
      if (l.real() != r.real()) return l.real() < r.real();
      if (l.imag() != r.imag()) return l.imag() < r.imag();
    }
    return false;
  };
  std::stable_sort(partition.begin(), partition.end(), tuple_less);

  std::vector<std::size_t> column_order;
  for (const auto& blk : partition)
    for (std::size_t j : blk) column_order.push_back(j);

  JointEigenstructure out;
  out.basis = select_columns(u, column_order);
  out.eigenvalue_table = ComplexMatrix(m, d);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t j = 0; j < d; ++j) out.eigenvalue_table(a, j) = table(a, column_order[j]);

  std::size_t next_col = 0;
  for (const auto& blk : partition) {
    std::vector<std::size_t> cls(blk.size());
    std::iota(cls.begin(), cls.end(), next_col);
    next_col += blk.size();
    out.classes.push_back(std::move(cls));
  }
  return out;
}

NdWitness build_witness(const JointEigenstructure& j) {
  const std::size_t m = j.eigenvalue_table.rows();
  const std::size_t d = j.basis.rows();
  const std::size_t num_classes = j.classes.size();

  NdWitness w;
  w.n_operator = ComplexMatrix(d, d);
  w.f_table = ComplexMatrix(m, num_classes);
  for (std::size_t cls = 0; cls < num_classes; ++cls) {
    w.lambda_values.push_back(static_cast<double>(cls));

    const ComplexMatrix cols = select_columns(j.basis, j.classes[cls]);
    w.n_operator += static_cast<double>(cls) * (cols * adjoint(cols));

    for (std::size_t a = 0; a < m; ++a) {
      Cx mean{0.0, 0.0};
      for (std::size_t col : j.classes[cls]) mean += j.eigenvalue_table(a, col);
      w.f_table(a, cls) = mean * (1.0 / static_cast<double>(j.classes[cls].size()));
    }
  }
  w.n_operator = hermitian_part(w.n_operator);
  return w;
}

std::vector<ComplexMatrix> reconstruct_family(const NdWitness& w) {
  const std::size_t d = w.n_operator.rows();
  const std::size_t m = w.f_table.rows();
  const HermitianEig eig = hermitian_eig(w.n_operator, 1e-6);

  // Assign each eigenvector of N to the class with the nearest lambda.
  std::vector<std::size_t> cls_of(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t best = 0;
    double best_dist = std::abs(eig.eigenvalues[k] - w.lambda_values[0]);
    for (std::size_t cls = 1; cls < w.lambda_values.size(); ++cls) {
      const double dist = std::abs(eig.eigenvalues[k] - w.lambda_values[cls]);
      if (dist < best_dist) {
        best_dist = dist;
        best = cls;
      }
    }
    if (best_dist > 0.25) {
      throw PreconditionViolated("reconstruct_family: eigenvalue " +
                                 std::to_string(eig.eigenvalues[k]) +
                                 " matches no witness label");
    }
    cls_of[k] = best;
  }

  std::vector<ComplexMatrix> family;
  for (std::size_t a = 0; a < m; ++a) {
    ComplexMatrix v(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      ComplexMatrix col(d, 1);
      for (std::size_t i = 0; i < d; ++i) col(i, 0) = eig.eigenvectors(i, k);
      v += w.f_table(a, cls_of[k]) * (col * adjoint(col));
    }
    family.push_back(std::move(v));
  }
  return family;
}

}  // namespace kraus
