#include "krauskit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "krauskit/eig.hpp"
#include "krauskit/errors.hpp"

namespace kraus {

namespace {

void require_normalized(const ValidationReport& rep, const char* op) {
  if (!rep.is_normalized) {
    throw NotNormalized(std::string(op) + ": family not normalized (defect " +
                        std::to_string(rep.defect_norm) + ")");
  }
}

/// Real-orthonormal basis of the Hermitian part of the numerical fixed space
/// of the superoperator S (dimension d^2 x d^2, Schrodinger or Heisenberg).
std::vector<ComplexMatrix> hermitian_fixed_basis(const ComplexMatrix& s, std::size_t d,
                                                 double tol) {
  const ComplexMatrix kernel = null_space(s - ComplexMatrix::identity(d * d), tol);

  std::vector<ComplexMatrix> candidates;
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    ComplexMatrix col(d * d, 1);
    for (std::size_t i = 0; i < d * d; ++i) col(i, 0) = kernel(i, j);
    const ComplexMatrix x = unvec(col, d, d);
    candidates.push_back(hermitian_part(x));
    candidates.push_back(antihermitian_part(x));
  }

  // Gram-Schmidt over the reals: the Hermitian fixed matrices form a real
  // vector space under re tr(A* B).
  std::vector<ComplexMatrix> basis;
  for (ComplexMatrix& c : candidates) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexMatrix& b : basis) {
        c -= frobenius_inner(b, c).real() * b;
      }
    }
    const double n = frobenius_norm(c);
    if (n > 1e-6) basis.push_back((1.0 / n) * c);
  }
  return basis;
}

double estimate_block_radius(const std::vector<ComplexMatrix>& c_blocks, std::size_t dim_d) {
  if (dim_d == 0) return 0.0;
  const ComplexMatrix s = superoperator_matrix(c_blocks, Picture::Heisenberg, dim_d);
  return spectral_radius_estimate(s);
}

StationaryState stationary_from_density(const ComplexMatrix& rho_raw, double residual) {
  StationaryState out;
  ComplexMatrix rho = hermitian_part(rho_raw);
  const double tr = trace(rho).real();
  if (std::abs(tr) < 1e-6) {
    throw NoConvergence("stationary state candidate has vanishing trace");
  }
  rho *= 1.0 / tr;
  const HermitianEig eig = hermitian_eig(rho, 1e-6);
  out.rho = std::move(rho);
  out.residual = residual;
  out.min_eigenvalue = eig.eigenvalues.front();
  out.trace = 1.0;
  out.is_faithful = out.min_eigenvalue > kSupportRankThreshold * std::max(eig.eigenvalues.back(), 0.0);
  return out;
}

}  // namespace

StationaryState cesaro_stationary(const KrausFamily& f) {
  const ValidationReport rep = validate(f);
  require_normalized(rep, "cesaro_stationary");
  const std::size_t d = f.dim;

  const ComplexMatrix s = superoperator_matrix(f.ops, Picture::Schrodinger, d);
  const std::vector<ComplexMatrix> fixed = hermitian_fixed_basis(s, d, f.tol);
  if (fixed.empty()) {
    throw NoConvergence("cesaro_stationary: no fixed point found for a normalized family");
  }

  // Damped averaging from the maximally mixed state. Every stationary state
  // has support inside the support of the limit, so the support cut below
  // sees the maximal stationary subspace.
  ComplexMatrix a = (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d);
  ComplexMatrix checkpoint = a;
  bool converged = false;
  int next_check = 8;
  for (int k = 1; k <= kStationaryMaxIterations; ++k) {
    a = 0.5 * (a + apply(f, a, Picture::Schrodinger));
    if (k == next_check) {
      if (frobenius_norm(a - checkpoint) <= 1e-12) {
        converged = true;
        break;
      }
      checkpoint = a;
      next_check *= 2;
    }
  }

  // Kill the remaining transient exactly: project onto the Hermitian fixed
  // space of the superoperator.
  ComplexMatrix projected(d, d);
  for (const ComplexMatrix& b : fixed) projected += frobenius_inner(b, a).real() * b;

  const double tr = trace(projected).real();
  if (std::abs(tr) < 0.5) {
    throw NoConvergence("cesaro_stationary: fixed-space projection lost the trace");
  }
  ComplexMatrix rho = hermitian_part((1.0 / tr) * projected);
  const double residual = frobenius_norm(apply(f, rho, Picture::Schrodinger) - rho);

  if (residual > 1e-10) {
    throw NoConvergence("cesaro_stationary: residual " + std::to_string(residual) +
                        " above contract" + (converged ? "" : " (iteration cap reached)"));
  }
  return stationary_from_density(rho, residual);
}

std::vector<ComplexMatrix> fixed_point_space(const KrausFamily& f, Picture picture) {
  const ValidationReport rep = validate(f);
  require_normalized(rep, "fixed_point_space");
  const std::size_t d = f.dim;

  const ComplexMatrix s = superoperator_matrix(f.ops, picture, d);
  const ComplexMatrix kernel = null_space(s - ComplexMatrix::identity(d * d), f.tol);

  std::vector<ComplexMatrix> basis;
  basis.reserve(kernel.cols());
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    ComplexMatrix col(d * d, 1);
    for (std::size_t i = 0; i < d * d; ++i) col(i, 0) = kernel(i, j);
    basis.push_back(unvec(col, d, d));
  }
  return basis;
}

Decomposition decompose(const KrausFamily& f) {
  const ValidationReport rep = validate(f);
  require_normalized(rep, "decompose");
  const std::size_t d = f.dim;

  const StationaryState ss = cesaro_stationary(f);
  const HermitianEig eig = hermitian_eig(ss.rho, 1e-6);
  const double lambda_max = std::max(eig.eigenvalues.back(), 0.0);
  const double cut = kSupportRankThreshold * lambda_max;

  // Support eigenvectors first, each group in descending eigenvalue order.
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return eig.eigenvalues[i] > eig.eigenvalues[j];
  });
  std::size_t dim_f = 0;
  while (dim_f < d && eig.eigenvalues[order[dim_f]] > cut) ++dim_f;

  Decomposition dec;
  dec.dim_F = dim_f;
  dec.dim_D = d - dim_f;
  dec.basis = select_columns(eig.eigenvectors, order);

  const ComplexMatrix basis_adj = adjoint(dec.basis);
  for (const ComplexMatrix& v : f.ops) {
    const ComplexMatrix w = basis_adj * v * dec.basis;
    dec.a_blocks.push_back(block(w, 0, 0, dim_f, dim_f));
    if (dec.dim_D > 0) {
      dec.b_blocks.push_back(block(w, 0, dim_f, dim_f, dec.dim_D));
      dec.c_blocks.push_back(block(w, dim_f, dim_f, dec.dim_D, dec.dim_D));
      const double lower_left = frobenius_norm(block(w, dim_f, 0, dec.dim_D, dim_f));
      dec.lower_left_residual = std::max(dec.lower_left_residual, lower_left);
      if (lower_left > f.tol * std::max(1.0, frobenius_norm(v))) {
        throw PropertyViolation(PropertyViolation::Kind::BlockZero,
                                "decompose: lower-left block residual " +
                                    std::to_string(lower_left) +
                                    " exceeds tolerance; support rank may be misjudged");
      }
    }
  }

  // rho restricted to its support, in the new basis.
  const ComplexMatrix rho_rot = basis_adj * ss.rho * dec.basis;
  ComplexMatrix rho_f = block(rho_rot, 0, 0, dim_f, dim_f);
  const double residual_f =
      frobenius_norm(apply_ops(dec.a_blocks, rho_f, Picture::Schrodinger) - rho_f);
  StationaryState ss_f = stationary_from_density(rho_f, residual_f);
  if (!ss_f.is_faithful) {
    throw PropertyViolation(PropertyViolation::Kind::FaithfulStationary,
                            "decompose: stationary state is rank-deficient on its own support");
  }
  dec.rho_F = std::move(ss_f);

  dec.spectral_radius_D = estimate_block_radius(dec.c_blocks, dec.dim_D);
  if (dec.dim_D > 0 && dec.spectral_radius_D >= 1.0) {
    throw PropertyViolation(PropertyViolation::Kind::SpectralRadius,
                            "decompose: decaying block has spectral radius " +
                                std::to_string(dec.spectral_radius_D));
  }
  return dec;
}

DecompositionReport verify_decomposition(const KrausFamily& f, const Decomposition& d,
                                         int decay_steps, double tol) {
  DecompositionReport rep;

  // (i) recompute the stationary state from the A-blocks alone.
  const KrausFamily a_family(d.a_blocks, f.tol);
  const StationaryState ss_a = cesaro_stationary(a_family);
  rep.faithful_ok = ss_a.is_faithful;

  // (ii)
  rep.radius_ok = d.dim_D == 0 || d.spectral_radius_D < 1.0 - tol;

  // (iii) every Heisenberg fixed point is block diagonal in the basis.
  const ComplexMatrix basis_adj = adjoint(d.basis);
  for (const ComplexMatrix& x : fixed_point_space(f, Picture::Heisenberg)) {
    if (d.dim_D == 0) break;
    const ComplexMatrix w = basis_adj * x * d.basis;
    const double off = std::max(frobenius_norm(block(w, 0, d.dim_F, d.dim_F, d.dim_D)),
                                frobenius_norm(block(w, d.dim_F, 0, d.dim_D, d.dim_F)));
    rep.max_fixed_point_offdiagonal = std::max(rep.max_fixed_point_offdiagonal, off);
  }
  rep.diagonal_fixed_points_ok =
      rep.max_fixed_point_offdiagonal <= tol;

  // Transience of H_D under repeated Phi*.
  const std::size_t dim = f.dim;
  ComplexMatrix state = (1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim);
  for (int k = 0; k <= decay_steps; ++k) {
    if (k > 0) state = apply(f, state, Picture::Schrodinger);
    if (d.dim_D == 0) {
      rep.transience_decay.push_back(0.0);
      continue;
    }
    const ComplexMatrix w = basis_adj * state * d.basis;
    rep.transience_decay.push_back(operator_norm(block(w, d.dim_F, d.dim_F, d.dim_D, d.dim_D)));
  }

  if (d.dim_D == 0) {
    rep.transience_ok = true;
  } else {
    const double r = d.spectral_radius_D;
    const double envelope =
        100.0 * std::max(1.0, rep.transience_decay.front()) * std::pow(r, decay_steps) + 1e-12;
    rep.transience_ok = rep.transience_decay.back() <= envelope;
  }
  return rep;
}

ComplexMatrix solve_neumann(const std::vector<ComplexMatrix>& c_blocks, const ComplexMatrix& y,
                            double spectral_radius, double tol) {
  if (spectral_radius >= 1.0) {
    throw RadiusNotLessThanOne("solve_neumann: spectral radius " +
                               std::to_string(spectral_radius) + " is not below one");
  }
  if (c_blocks.empty() || c_blocks.front().rows() == 0) {
    throw PreconditionViolated("solve_neumann: decaying block is trivial");
  }
  const std::size_t dim_d = c_blocks.front().rows();
  if (!y.is_square() || y.rows() != dim_d) {
    throw DimensionMismatch("solve_neumann: Y must be " + std::to_string(dim_d) + "x" +
                            std::to_string(dim_d));
  }

  const double target = tol * std::max(1.0, frobenius_norm(y));
  const double r = std::min(spectral_radius, 1.0 - 1e-12);
  const double term_stop = 0.5 * target * (1.0 - r);

  ComplexMatrix x = y;
  ComplexMatrix term = y;
  const int cap = 1000000;
  for (int n = 0; n < cap; ++n) {
    term = apply_ops(c_blocks, term, Picture::Heisenberg);
    x += term;
    if (frobenius_norm(term) <= term_stop) break;
  }

  const double residual =
      frobenius_norm(x - apply_ops(c_blocks, x, Picture::Heisenberg) - y);
  if (residual > 10.0 * target) {
    throw NoConvergence("solve_neumann: residual " + std::to_string(residual) +
                        " misses target " + std::to_string(target));
  }
  return x;
}

ComplexMatrix solve_neumann(const Decomposition& d, const ComplexMatrix& y) {
  if (d.dim_D == 0) throw PreconditionViolated("solve_neumann: decomposition is trivial");
  return solve_neumann(d.c_blocks, y, d.spectral_radius_D);
}

BlockEquationResiduals block_equation_residuals(const Decomposition& d) {
  BlockEquationResiduals res;
  const std::size_t m = d.a_blocks.size();

  ComplexMatrix n1(d.dim_F, d.dim_F);
  for (const ComplexMatrix& a : d.a_blocks) n1 += adjoint(a) * a;
  res.n1 = frobenius_norm(n1 - ComplexMatrix::identity(d.dim_F));

  if (d.dim_D > 0) {
    ComplexMatrix n2(d.dim_F, d.dim_D);
    ComplexMatrix n3(d.dim_D, d.dim_D);
    for (std::size_t a = 0; a < m; ++a) {
      n2 += adjoint(d.a_blocks[a]) * d.b_blocks[a];
      n3 += adjoint(d.b_blocks[a]) * d.b_blocks[a] + adjoint(d.c_blocks[a]) * d.c_blocks[a];
    }
    res.n2 = frobenius_norm(n2);
    res.n3 = frobenius_norm(n3 - ComplexMatrix::identity(d.dim_D));
  }

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      res.c1 = std::max(res.c1, frobenius_norm(commutator(d.a_blocks[a], d.a_blocks[b])));
      if (d.dim_D > 0) {
        res.c2 = std::max(
            res.c2, frobenius_norm(d.a_blocks[a] * d.b_blocks[b] + d.b_blocks[a] * d.c_blocks[b] -
                                   d.a_blocks[b] * d.b_blocks[a] - d.b_blocks[b] * d.c_blocks[a]));
        res.c3 = std::max(res.c3, frobenius_norm(commutator(d.c_blocks[a], d.c_blocks[b])));
      }
    }
  }
  return res;
}

TheoremReport theorem_check(const KrausFamily& f) {
  TheoremReport rep;
  rep.validation = validate(f);
  rep.proof_trace.normality_defects = rep.validation.normality_defects;
  rep.all_normal = rep.validation.is_normal_family;

  if (!rep.validation.is_normalized) rep.failed_hypotheses.push_back("normalization");
  if (!rep.validation.is_commuting) rep.failed_hypotheses.push_back("commutation");
  rep.applicable = rep.failed_hypotheses.empty();
  if (!rep.applicable) return rep;

  Decomposition dec;
  try {
    dec = decompose(f);
  } catch (const PropertyViolation& e) {
    rep.notes.push_back(std::string("decompose failed: ") + e.what());
    return rep;
  }

  rep.b_blocks_zero = dec.dim_D == 0;
  if (!rep.b_blocks_zero) {
    double b_norm = 0.0;
    for (const ComplexMatrix& b : dec.b_blocks) b_norm = std::max(b_norm, frobenius_norm(b));
    rep.b_blocks_zero = b_norm <= f.tol;
  }

  rep.proof_trace.block_equations = block_equation_residuals(dec);
  const std::size_t m = dec.a_blocks.size();
  for (std::size_t beta = 0; beta < m; ++beta) {
    rep.proof_trace.defect_identity.push_back(defect_identity_residual(dec.a_blocks, beta));
    const ComplexMatrix& ab = dec.a_blocks[beta];
    rep.proof_trace.jump_fixed_point.push_back(
        frobenius_norm(apply_ops(dec.a_blocks, ab, Picture::Heisenberg) - ab));
    rep.proof_trace.stationary_trace.push_back(
        std::abs(trace(dec.rho_F.rho * commutator_defect(dec.a_blocks, beta))));
    if (dec.dim_D > 0) {
      ComplexMatrix propagated(dec.dim_F, dec.dim_D);
      for (std::size_t a = 0; a < m; ++a) {
        propagated += adjoint(dec.a_blocks[a]) * dec.b_blocks[beta] * dec.c_blocks[a];
      }
      rep.proof_trace.b_propagation.push_back(
          frobenius_norm(dec.b_blocks[beta] - propagated));
    }
  }
  rep.decomposition = std::move(dec);
  return rep;
}

}  // namespace kraus
