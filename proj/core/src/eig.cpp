#include "krauskit/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "krauskit/errors.hpp"

namespace kraus {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing A(p, q). A is Hermitian; the unitary
// W = [[c, -s e^{i phi}], [s e^{-i phi}, c]] acts on the (p, q) plane, with
// phi the phase of A(p, q). Accumulates U <- U W.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& u, std::size_t p, std::size_t q) {
  const Cx apq = a(p, q);
  const double h = std::abs(apq);
  const Cx phase = apq / h;  // e^{i phi}

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * h);
  // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0.
  const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Cx sp = s * phase;             // s e^{i phi}
  const Cx sm = s * std::conj(phase);  // s e^{-i phi}
  const std::size_t d = a.rows();

  // Rows p, q: A <- W* A.
  for (std::size_t k = 0; k < d; ++k) {
    const Cx akp = a(p, k);
    const Cx akq = a(q, k);
    a(p, k) = c * akp + sp * akq;
    a(q, k) = -sm * akp + c * akq;
  }
  // Columns p, q: A <- A W.
  for (std::size_t k = 0; k < d; ++k) {
    const Cx akp = a(k, p);
    const Cx akq = a(k, q);
    a(k, p) = c * akp + sm * akq;
    a(k, q) = -sp * akp + c * akq;
  }
  // The pivot is zero analytically; pin it and keep the diagonal real.
  a(p, q) = Cx{0.0, 0.0};
  a(q, p) = Cx{0.0, 0.0};
  a(p, p) = Cx{a(p, p).real(), 0.0};
  a(q, q) = Cx{a(q, q).real(), 0.0};

  for (std::size_t k = 0; k < d; ++k) {
    const Cx ukp = u(k, p);
    const Cx ukq = u(k, q);
    u(k, p) = c * ukp + sm * ukq;
    u(k, q) = -sp * ukp + c * ukq;
  }
}

void fix_column_phases(ComplexMatrix& u) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag == 0.0) continue;
    const Cx rot = std::conj(u(best, j)) / best_mag;
    for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) *= rot;
    u(best, j) = Cx{u(best, j).real(), 0.0};
  }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) throw DimensionMismatch("hermitian_eig: matrix not square");
  const std::size_t d = m.rows();
  const double scale = frobenius_norm(m);
  if (frobenius_norm(m - adjoint(m)) > tol * scale) {
    throw NotHermitian("hermitian_eig: ||M - M*||_F = " +
                       std::to_string(frobenius_norm(m - adjoint(m))) + " exceeds " +
                       std::to_string(tol) + " * ||M||_F");
  }

  HermitianEig out;
  out.eigenvectors = ComplexMatrix::identity(d);
  out.eigenvalues.assign(d, 0.0);
  if (d == 0) return out;

  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix u = ComplexMatrix::identity(d);
  if (scale > 0.0) {
    const double stop = 1e-14 * scale;
    const double skip = stop / static_cast<double>(d * d);
    for (int sweep = 0; sweep < 100; ++sweep) {
      if (off_diagonal_norm(a) <= stop) break;
      for (std::size_t p = 0; p + 1 < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q)
          if (std::abs(a(p, q)) > skip) jacobi_rotate(a, u, p, q);
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  ComplexMatrix sorted_u(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < d; ++i) sorted_u(i, j) = u(i, order[j]);
  }
  fix_column_phases(sorted_u);
  out.eigenvectors = std::move(sorted_u);
  return out;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const HermitianEig eig = hermitian_eig(adjoint(m) * m, 1e-6);
  return std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  const HermitianEig eig = hermitian_eig(adjoint(m) * m, 1e-6);
  std::vector<double> sv(eig.eigenvalues.size());
  for (std::size_t k = 0; k < sv.size(); ++k) sv[k] = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
  return sv;
}

ComplexMatrix null_space(const ComplexMatrix& m, double tol) {
  const std::size_t n = m.cols();
  if (n == 0) return ComplexMatrix(0, 0);

  const HermitianEig eig = hermitian_eig(adjoint(m) * m, 1e-6);
  const double sigma_max = std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
  if (sigma_max == 0.0) return eig.eigenvectors;  // M = 0: everything is null

  const double mfro = frobenius_norm(m);
  const double candidate_cut = 1e-6 * sigma_max;
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k) {
    const double sigma = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
    if (sigma > candidate_cut) continue;
    ComplexMatrix u(n, 1);
    for (std::size_t i = 0; i < n; ++i) u(i, 0) = eig.eigenvectors(i, k);
    if (vector_norm(m * u) <= tol * mfro) keep.push_back(k);
  }
  return select_columns(eig.eigenvectors, keep);
}

double spectral_radius_estimate(const ComplexMatrix& s, int iterations, int starts,
                                std::uint64_t seed) {
  if (!s.is_square()) throw DimensionMismatch("spectral_radius_estimate: matrix not square");
  const std::size_t d = s.rows();
  if (d == 0) return 0.0;
  if (d == 1) return std::abs(s(0, 0));

  double best = 0.0;
  for (int start = 0; start < starts; ++start) {
    std::mt19937_64 gen(seed + static_cast<std::uint64_t>(start));
    auto uniform = [&]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    ComplexMatrix x(d, 1);
    for (std::size_t i = 0; i < d; ++i) x(i, 0) = Cx{2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0};
    double nx = vector_norm(x);
    if (nx == 0.0) continue;
    x *= 1.0 / nx;

    double log_sum = 0.0;
    int counted = 0;
    bool collapsed = false;
    for (int it = 0; it < iterations; ++it) {
      x = s * x;
      const double growth = vector_norm(x);
      if (growth < 1e-300) {  // nilpotent-like collapse
        collapsed = true;
        break;
      }
      log_sum += std::log(growth);
      ++counted;
      x *= 1.0 / growth;
    }
    const double estimate = collapsed || counted == 0 ? 0.0 : std::exp(log_sum / counted);
    best = std::max(best, estimate);
  }
  return best;
}

}  // namespace kraus
