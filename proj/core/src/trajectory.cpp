#include "krauskit/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "krauskit/errors.hpp"
#include "krauskit/spectral.hpp"

namespace kraus {

namespace {

void require_state(const KrausFamily& f, const ComplexMatrix& psi) {
  if (psi.cols() != 1 || psi.rows() != f.dim) {
    throw DimensionMismatch("state must be a " + std::to_string(f.dim) + "x1 column vector");
  }
  const double n = vector_norm(psi);
  if (std::abs(n - 1.0) > std::max(f.tol, 1e-9)) {
    throw NotUnitVector("state has norm " + std::to_string(n));
  }
}

void require_symbols(const KrausFamily& f, const OutcomeString& s) {
  for (int sym : s) {
    if (sym < 0 || static_cast<std::size_t>(sym) >= f.size()) {
      throw IndexOutOfRange("outcome symbol " + std::to_string(sym) + " outside 0.." +
                            std::to_string(f.size() - 1));
    }
  }
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t value = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (value > cap / base) {
      throw ExplosionCap("enumeration of " + std::to_string(base) + "^" + std::to_string(exp) +
                         " strings exceeds cap " + std::to_string(cap));
    }
    value *= base;
  }
  return value;
}

}  // namespace

std::size_t MeasureTable::index_of(const OutcomeString& s) const {
  if (s.size() != length) throw DimensionMismatch("MeasureTable: string length mismatch");
  std::size_t idx = 0;
  for (int sym : s) {
    if (sym < 0 || static_cast<std::size_t>(sym) >= num_outcomes)
      throw IndexOutOfRange("MeasureTable: symbol out of range");
    idx = idx * num_outcomes + static_cast<std::size_t>(sym);
  }
  return idx;
}

OutcomeString MeasureTable::string_at(std::size_t index) const {
  OutcomeString s(length);
  for (std::size_t t = length; t-- > 0;) {
    s[t] = static_cast<int>(index % num_outcomes);
    index /= num_outcomes;
  }
  return s;
}

double string_probability(const KrausFamily& f, const ComplexMatrix& psi, const OutcomeString& s) {
  require_state(f, psi);
  require_symbols(f, s);
  ComplexMatrix v = psi;
  for (int sym : s) v = f.ops[static_cast<std::size_t>(sym)] * v;
  const double n = vector_norm(v);
  return n * n;
}

MeasureTable enumerate_measure(const KrausFamily& f, const ComplexMatrix& psi, std::size_t length,
                               std::size_t cap) {
  require_state(f, psi);
  const std::size_t m = f.size();
  const std::size_t count = checked_power(m, length, cap);

  MeasureTable table;
  table.num_outcomes = m;
  table.length = length;
  table.probs.assign(count, 0.0);

  // One evolved (unnormalized) vector per tree level; prefix work is shared
  // across all strings that extend it.
  std::vector<ComplexMatrix> level(length + 1);
  level[0] = psi;
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t prefix_index) -> void {
    if (depth == length) {
      const double n = vector_norm(level[depth]);
      table.probs[prefix_index] = n * n;
      return;
    }
    for (std::size_t a = 0; a < m; ++a) {
      level[depth + 1] = f.ops[a] * level[depth];
      self(self, depth + 1, prefix_index * m + a);
    }
  };
  recurse(recurse, 0, 0);

  table.total = 0.0;
  for (double p : table.probs) table.total += p;
  return table;
}

TrajectoryRun sample_trajectory(const KrausFamily& f, const ComplexMatrix& psi,
                                std::size_t length, std::uint64_t seed) {
  require_state(f, psi);
  const std::size_t m = f.size();

  std::mt19937_64 gen(seed);
  auto uniform = [&]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

  TrajectoryRun run;
  run.seed = seed;
  run.states.push_back(psi);

  ComplexMatrix state = psi;
  std::vector<ComplexMatrix> branches(m);
  std::vector<double> weights(m);
  for (std::size_t t = 0; t < length; ++t) {
    double total = 0.0;
    double max_norm = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      branches[a] = f.ops[a] * state;
      const double n = vector_norm(branches[a]);
      weights[a] = n * n;
      total += weights[a];
      max_norm = std::max(max_norm, n);
    }
    if (max_norm < 1e-14) {
      throw DegenerateStep("sample_trajectory: all branch norms vanished at step " +
                           std::to_string(t + 1));
    }
    if (std::abs(total - 1.0) > 1e-8) {
      throw NotNormalized("sample_trajectory: branch probabilities sum to " +
                          std::to_string(total) + " at step " + std::to_string(t + 1));
    }

    const double u = uniform() * total;
    double acc = 0.0;
    std::size_t picked = m - 1;
    for (std::size_t a = 0; a < m; ++a) {
      acc += weights[a];
      if (u < acc) {
        picked = a;
        break;
      }
    }
    state = (1.0 / std::sqrt(weights[picked])) * branches[picked];
    run.outcomes.push_back(static_cast<int>(picked));
    run.states.push_back(state);
  }
  return run;
}

double exchangeability_check(const KrausFamily& f, const ComplexMatrix& psi, std::size_t length,
                             std::size_t cap) {
  const MeasureTable table = enumerate_measure(f, psi, length, cap);

  // Strings reachable from each other by position permutations are exactly
  // the strings with equal symbol multisets; the max permutation gap is the
  // per-multiset spread.
  std::map<OutcomeString, std::pair<double, double>> spread;  // sorted string -> (min, max)
  for (std::size_t k = 0; k < table.probs.size(); ++k) {
    OutcomeString key = table.string_at(k);
    std::sort(key.begin(), key.end());
    auto [it, fresh] = spread.try_emplace(std::move(key), table.probs[k], table.probs[k]);
    if (!fresh) {
      it->second.first = std::min(it->second.first, table.probs[k]);
      it->second.second = std::max(it->second.second, table.probs[k]);
    }
  }
  double gap = 0.0;
  for (const auto& [key, mm] : spread) gap = std::max(gap, mm.second - mm.first);
  return gap;
}

DeFinettiReport definetti_check(const KrausFamily& f, const ComplexMatrix& psi,
                                std::size_t length, std::size_t cap) {
  const ValidationReport rep = validate(f);
  if (!rep.is_normalized)
    throw PreconditionViolated("definetti_check: family not normalized");
  if (!rep.is_commuting)
    throw PreconditionViolated("definetti_check: family not commuting");
  if (!rep.is_normal_family)
    throw PreconditionViolated("definetti_check: family not normal");

  const MeasureTable exact = enumerate_measure(f, psi, length, cap);
  const JointEigenstructure j = simultaneous_diagonalize(f);
  const std::size_t d = f.dim;
  const std::size_t m = f.size();

  // Spectral weights of psi and per-mode outcome laws.
  const ComplexMatrix amplitudes = adjoint(j.basis) * psi;
  std::vector<double> weights(d);
  for (std::size_t k = 0; k < d; ++k) weights[k] = std::norm(amplitudes(k, 0));
  std::vector<std::vector<double>> law(m, std::vector<double>(d));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t k = 0; k < d; ++k) law[a][k] = std::norm(j.eigenvalue_table(a, k));

  DeFinettiReport out;
  out.mixture_table.num_outcomes = m;
  out.mixture_table.length = length;
  out.mixture_table.probs.assign(exact.probs.size(), 0.0);
  for (std::size_t idx = 0; idx < exact.probs.size(); ++idx) {
    const OutcomeString s = exact.string_at(idx);
    double p = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (weights[k] == 0.0) continue;
      double prod = weights[k];
      for (int sym : s) prod *= law[static_cast<std::size_t>(sym)][k];
      p += prod;
    }
    out.mixture_table.probs[idx] = p;
    out.mixture_table.total += p;
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(p - exact.probs[idx]));
  }
  return out;
}

KrausFamily cyclic_shift_family(std::size_t d, double tol) {
  if (d < 2) throw PreconditionViolated("cyclic_shift_family: need dimension >= 2");
  ComplexMatrix shift(d, d);
  for (std::size_t j = 0; j < d; ++j) shift((j + 1) % d, j) = Cx{1.0, 0.0};
  const ComplexMatrix id = ComplexMatrix::identity(d);
  return KrausFamily({0.5 * (id + shift), 0.5 * (id - shift)}, tol);
}

KrausFamily truncated_shift_family(std::size_t d, double tol) {
  if (d < 2) throw PreconditionViolated("truncated_shift_family: need dimension >= 2");
  ComplexMatrix shift(d, d);
  for (std::size_t j = 0; j + 1 < d; ++j) shift(j + 1, j) = Cx{1.0, 0.0};
  const ComplexMatrix id = ComplexMatrix::identity(d);
  return KrausFamily({0.5 * (id + shift), 0.5 * (id - shift)}, tol);
}

CyclicExample build_cyclic_example(std::size_t d, const ComplexMatrix& psi, std::size_t length) {
  CyclicExample out{cyclic_shift_family(d), FourierCheck{}};
  require_state(out.family, psi);
  out.fourier.length = length;

  // Unitary DFT; the shift acts diagonally on the Fourier modes, so each
  // string probability is a plain spectral sum.
  std::vector<double> mode_weight(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    Cx amp{0.0, 0.0};
    for (std::size_t jj = 0; jj < d; ++jj) {
      const double angle = -2.0 * M_PI * static_cast<double>(k * jj) / static_cast<double>(d);
      amp += Cx{std::cos(angle), std::sin(angle)} * psi(jj, 0);
    }
    mode_weight[k] = std::norm(amp) / static_cast<double>(d);
  }

  out.fourier.fourier_probs.assign(length + 1, 0.0);
  const double scale = std::pow(0.5, static_cast<double>(length));
  for (std::size_t n1 = 0; n1 <= length; ++n1) {
    double sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double c = std::cos(2.0 * M_PI * static_cast<double>(k) / static_cast<double>(d));
      sum += std::pow(1.0 + c, static_cast<double>(n1)) *
             std::pow(1.0 - c, static_cast<double>(length - n1)) * mode_weight[k];
    }
    out.fourier.fourier_probs[n1] = scale * sum;
  }

  const MeasureTable table = enumerate_measure(out.family, psi, length);
  for (std::size_t idx = 0; idx < table.probs.size(); ++idx) {
    const OutcomeString s = table.string_at(idx);
    const std::size_t n1 =
        static_cast<std::size_t>(std::count(s.begin(), s.end(), 0));
    out.fourier.max_abs_diff = std::max(
        out.fourier.max_abs_diff, std::abs(table.probs[idx] - out.fourier.fourier_probs[n1]));
  }
  return out;
}

TruncatedExample build_truncated_example(std::size_t d) {
  TruncatedExample out{truncated_shift_family(d), 0.0, {}};
  const ValidationReport rep = validate(out.family);
  out.defect_norm = rep.defect_norm;
  out.normality_defects = rep.normality_defects;
  return out;
}

double truncated_no_leak_check(std::size_t d, const ComplexMatrix& psi, std::size_t length,
                               std::size_t cyclic_dim) {
  const KrausFamily trunc = truncated_shift_family(d);
  const KrausFamily cyc = cyclic_shift_family(cyclic_dim);
  if (cyclic_dim < d) {
    throw PreconditionViolated("truncated_no_leak_check: cyclic dimension below truncated one");
  }

  ComplexMatrix padded(cyclic_dim, 1);
  for (std::size_t i = 0; i < d; ++i) padded(i, 0) = psi(i, 0);

  const MeasureTable p_trunc = enumerate_measure(trunc, psi, length);
  const MeasureTable p_cyc = enumerate_measure(cyc, padded, length);
  double diff = 0.0;
  for (std::size_t idx = 0; idx < p_trunc.probs.size(); ++idx) {
    diff = std::max(diff, std::abs(p_trunc.probs[idx] - p_cyc.probs[idx]));
  }
  return diff;
}

}  // namespace kraus
