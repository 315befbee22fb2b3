#pragma once

#include <cstdint>
#include <vector>

#include "krauskit/channel.hpp"
#include "krauskit/complex_matrix.hpp"

namespace kraus {

/// Sequence of measurement outcomes. Outcomes are 0-based operator indices
/// in this API; serialized forms label them 1..m.
using OutcomeString = std::vector<int>;

/// Default cap on the number of enumerated strings m^L.
inline constexpr std::size_t kEnumerationCap = 1000000;

/// Probabilities of every outcome string of a fixed length, stored densely:
/// entry k corresponds to the string whose symbols are the base-m digits of
/// k, most significant first, so storage order is lexicographic order.
struct MeasureTable {
  std::size_t num_outcomes = 0;  ///< m
  std::size_t length = 0;        ///< L
  std::vector<double> probs;     ///< m^L entries
  double total = 0.0;

  std::size_t index_of(const OutcomeString& s) const;
  OutcomeString string_at(std::size_t index) const;
  double prob(const OutcomeString& s) const { return probs[index_of(s)]; }
};

/// One sampled trajectory: outcomes plus the normalized posterior states,
/// states[t] being the state after t measurement steps (states[0] = psi).
struct TrajectoryRun {
  OutcomeString outcomes;
  std::vector<ComplexMatrix> states;
  std::uint64_t seed = 0;
};

/// || V_{s_L} ... V_{s_1} psi ||^2 for a unit column vector psi.
/// Throws DimensionMismatch / NotUnitVector / IndexOutOfRange.
double string_probability(const KrausFamily& f, const ComplexMatrix& psi,
                          const OutcomeString& s);

/// Exact measure over all m^L strings by depth-first prefix recursion (one
/// evolved vector per tree level, so shared prefixes are computed once).
/// Throws ExplosionCap when m^L exceeds `cap`.
MeasureTable enumerate_measure(const KrausFamily& f, const ComplexMatrix& psi, std::size_t length,
                               std::size_t cap = kEnumerationCap);

/// Sample one trajectory: at each step outcome a is drawn with probability
/// ||V_a psi||^2 (renormalized when the branch total drifts from one by at
/// most 1e-8; NotNormalized beyond that, DegenerateStep when every branch
/// norm collapses). Reproducible per seed.
TrajectoryRun sample_trajectory(const KrausFamily& f, const ComplexMatrix& psi,
                                std::size_t length, std::uint64_t seed);

/// Exact max over strings s and position permutations pi of
/// |P(s) - P(pi s)|, computed by grouping strings with equal symbol
/// multisets (permutations of positions reach exactly the strings with the
/// same multiset). Zero for commuting families.
double exchangeability_check(const KrausFamily& f, const ComplexMatrix& psi, std::size_t length,
                             std::size_t cap = kEnumerationCap);

struct DeFinettiReport {
  MeasureTable mixture_table;
  double max_abs_diff = 0.0;
};

/// Mixture-of-iid reconstruction of the outcome measure for a commuting
/// normal normalized family: with joint eigenbasis {u_j}, weights
/// w_j = |<u_j, psi>|^2 and per-mode laws p_a(j) = |Lambda(a, j)|^2, the
/// mixture sum_j w_j prod_t p_{s_t}(j) reproduces the exact measure.
DeFinettiReport definetti_check(const KrausFamily& f, const ComplexMatrix& psi,
                                std::size_t length, std::size_t cap = kEnumerationCap);

/// V_1 = (Id + R)/2, V_2 = (Id - R)/2 with R the cyclic shift on C^d.
/// Normalized, commuting, normal.
KrausFamily cyclic_shift_family(std::size_t d, double tol = kDefaultTol);

/// V_1 = (Id + R)/2, V_2 = (Id - R)/2 with R the nilpotent shift
/// (R e_{d-1} = 0). Commuting, neither normal nor normalized.
KrausFamily truncated_shift_family(std::size_t d, double tol = kDefaultTol);

struct FourierCheck {
  std::size_t length = 0;
  /// Fourier-sum probability per symbol-count pair, indexed by n1 = number
  /// of '1' outcomes (n2 = length - n1):
  ///   2^-L sum_k (1 + cos theta_k)^n1 (1 - cos theta_k)^n2 |psi_hat_k|^2.
  std::vector<double> fourier_probs;
  double max_abs_diff = 0.0;  ///< against the enumerated measure
};

struct CyclicExample {
  KrausFamily family;
  FourierCheck fourier;
};

/// Build the cyclic-shift family and cross-check every length-L string
/// probability against the discrete Fourier sum (unitary DFT of psi,
/// psi_hat_k = d^-1/2 sum_j e^{-2 pi i k j / d} psi_j).
CyclicExample build_cyclic_example(std::size_t d, const ComplexMatrix& psi,
                                   std::size_t length = 5);

struct TruncatedExample {
  KrausFamily family;
  double defect_norm = 0.0;               ///< ||sum V* V - Id||_op, equals 1/2
  std::vector<double> normality_defects;  ///< per operator
};

TruncatedExample build_truncated_example(std::size_t d);

/// Max difference between string probabilities of the truncated family on
/// C^d and the cyclic family on C^cyclic_dim with psi zero-padded. For psi
/// supported on the first s coordinates, length <= d - s and
/// cyclic_dim >= s + length, neither truncation nor wrap-around is reached
/// and the difference is numerically zero.
double truncated_no_leak_check(std::size_t d, const ComplexMatrix& psi, std::size_t length,
                               std::size_t cyclic_dim);

}  // namespace kraus
