// Acceptance suite: one scripted check per release criterion, each printed
// as a PASS/FAIL line with the measured numbers. Exit code is the number of
// failed criteria.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "krauskit/channel.hpp"
#include "krauskit/eig.hpp"
#include "krauskit/generators.hpp"
#include "krauskit/spectral.hpp"
#include "krauskit/structure.hpp"
#include "krauskit/trajectory.hpp"

using namespace kraus;
using fixtures::basis_vector;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

void record(Outcome& out, bool ok, const std::string& what) {
  if (!ok) {
    out.pass = false;
    if (out.detail.tellp() > 0) out.detail << "; ";
    out.detail << what;
  }
}

std::size_t pick_dim(std::size_t i) { return 2 + i % 7; }   // 2..8
std::size_t pick_ops(std::size_t i) { return 1 + i % 4; }   // 1..4

// 1. Trivial decomposition and normality for commuting families; full
//    decomposition pipeline with properties (i)-(iii) for generic ones.
Outcome criterion_theorem_reproduction() {
  Outcome out;
  for (std::size_t i = 0; i < 100; ++i) {
    const KrausFamily f = random_commuting_normal(pick_dim(i), pick_ops(i), 1000 + i);
    const TheoremReport rep = theorem_check(f);
    record(out, rep.applicable, "family " + std::to_string(i) + " not applicable");
    record(out, rep.b_blocks_zero, "family " + std::to_string(i) + " has dim_D > 0");
    for (double defect : rep.validation.normality_defects) {
      record(out, defect <= 1e-10,
             "family " + std::to_string(i) + " normality defect " + std::to_string(defect));
    }
  }
  for (std::size_t i = 0; i < 100; ++i) {
    const KrausFamily f = random_kraus_isometry(pick_dim(i), pick_ops(i), 2000 + i);
    const ValidationReport val = validate(f);
    record(out, val.is_normalized, "isometry family " + std::to_string(i) + " not normalized");
    const Decomposition dec = decompose(f);
    const DecompositionReport ver = verify_decomposition(f, dec, 10, 1e-8);
    record(out, ver.faithful_ok, "isometry family " + std::to_string(i) + " fails (i)");
    record(out, ver.radius_ok, "isometry family " + std::to_string(i) + " fails (ii)");
    record(out, ver.diagonal_fixed_points_ok,
           "isometry family " + std::to_string(i) + " fails (iii)");
  }
  return out;
}

// 2. Proof-identity residuals on commuting-normal families.
Outcome criterion_proof_identities() {
  Outcome out;
  for (std::size_t i = 0; i < 50; ++i) {
    const KrausFamily f = random_commuting_normal(pick_dim(i), pick_ops(i), 3000 + i);
    const TheoremReport rep = theorem_check(f);
    record(out, rep.applicable && rep.decomposition.has_value(),
           "family " + std::to_string(i) + " did not decompose");
    for (double r : rep.proof_trace.defect_identity) {
      record(out, r <= 1e-10,
             "family " + std::to_string(i) + " defect identity residual " + std::to_string(r));
    }
    const BlockEquationResiduals& eq = rep.proof_trace.block_equations;
    for (double r : {eq.n1, eq.n2, eq.n3, eq.c1, eq.c2, eq.c3}) {
      record(out, r <= 1e-10,
             "family " + std::to_string(i) + " block equation residual " + std::to_string(r));
    }
  }
  return out;
}

// 3. Channel norm equals the norm of the Kraus Gram matrix, attained at Id.
Outcome criterion_norm_identity() {
  Outcome out;
  for (std::size_t i = 0; i < 50; ++i) {
    const KrausFamily f = random_kraus_isometry(pick_dim(i), pick_ops(i), 4000 + i);
    const NormIdentityReport rep = norm_identity_check(f, 200, 4000 + i);
    record(out, rep.max_ratio <= 1.0 + 1e-10,
           "family " + std::to_string(i) + " ratio " + std::to_string(rep.max_ratio));
    record(out, rep.attained_at_identity,
           "family " + std::to_string(i) + " bound not attained at Id");
  }
  return out;
}

// 4. Amplitude damping fixture at gamma = 1/2.
Outcome criterion_amplitude_damping() {
  Outcome out;
  const KrausFamily f = fixtures::amplitude_damping(0.5);
  const Decomposition dec = decompose(f);
  record(out, dec.dim_F == 1 && dec.dim_D == 1,
         "dims (" + std::to_string(dec.dim_F) + "," + std::to_string(dec.dim_D) + ")");
  record(out, std::abs(dec.spectral_radius_D - 0.5) <= 1e-10,
         "spectral radius " + std::to_string(dec.spectral_radius_D));

  const auto heis = fixed_point_space(f, Picture::Heisenberg);
  record(out, heis.size() == 1, "fixed space dimension " + std::to_string(heis.size()));
  if (heis.size() == 1) {
    const Cx mean = trace(heis.front()) * 0.5;
    record(out,
           frobenius_norm(heis.front() - mean * ComplexMatrix::identity(2)) <= 1e-9,
           "fixed point is not a multiple of Id");
  }

  const DecompositionReport ver = verify_decomposition(f, dec, 10);
  record(out, ver.transience_decay.size() == 11, "decay profile length");
  const double decay10 = ver.transience_decay.back();
  record(out, std::abs(decay10 - 4.8828125e-4) <= 1e-12,
         "transience_decay[10] = " + std::to_string(decay10));

  const double gap = exchangeability_check(f, basis_vector(2, 1), 2);
  record(out, std::abs(gap - 0.25) <= 1e-12, "exchangeability gap " + std::to_string(gap));
  return out;
}

// 5. Cyclic shift example.
Outcome criterion_cyclic_example() {
  Outcome out;
  const CyclicExample ex = build_cyclic_example(8, basis_vector(8, 0), 5);
  const MeasureTable table = enumerate_measure(ex.family, basis_vector(8, 0), 5);
  record(out, std::abs(table.total - 1.0) <= 1e-12, "total " + std::to_string(table.total));
  record(out, ex.fourier.max_abs_diff <= 1e-12,
         "fourier gap " + std::to_string(ex.fourier.max_abs_diff));
  const double exch = exchangeability_check(ex.family, basis_vector(8, 0), 5);
  record(out, exch <= 1e-12, "exchangeability " + std::to_string(exch));
  const DeFinettiReport definetti = definetti_check(ex.family, basis_vector(8, 0), 5);
  record(out, definetti.max_abs_diff <= 1e-10,
         "de Finetti gap " + std::to_string(definetti.max_abs_diff));

  const MeasureTable small = enumerate_measure(cyclic_shift_family(2), basis_vector(2, 0), 2);
  record(out, std::abs(small.prob({0, 0}) - 0.5) <= 1e-12, "P(1,1) off");
  record(out, std::abs(small.prob({1, 1}) - 0.5) <= 1e-12, "P(2,2) off");
  record(out, small.prob({0, 1}) <= 1e-12 && small.prob({1, 0}) <= 1e-12, "cross terms off");
  return out;
}

// 6. Truncated shift example.
Outcome criterion_truncated_example() {
  Outcome out;
  const TruncatedExample ex = build_truncated_example(3);
  record(out, std::abs(ex.defect_norm - 0.5) <= 1e-12,
         "defect " + std::to_string(ex.defect_norm));
  record(out, std::abs(ex.normality_defects[0] - std::sqrt(2.0) / 4.0) <= 1e-12,
         "normality defect " + std::to_string(ex.normality_defects[0]));

  const TheoremReport rep = theorem_check(ex.family);
  record(out, !rep.applicable, "theorem unexpectedly applicable");
  bool names_normalization = false;
  for (const std::string& h : rep.failed_hypotheses) {
    if (h == "normalization") names_normalization = true;
  }
  record(out, names_normalization, "normalization hypothesis not named");

  const double leak = truncated_no_leak_check(6, basis_vector(6, 1), 4, 8);
  record(out, leak <= 1e-12, "no-leak gap " + std::to_string(leak));
  return out;
}

// 7. Monte Carlo sampling agrees with enumeration in total variation.
Outcome criterion_monte_carlo() {
  Outcome out;
  const KrausFamily f = cyclic_shift_family(4);
  const ComplexMatrix psi = basis_vector(4, 0);
  const std::size_t samples = 100000;
  const std::uint64_t seed = 424242;

  const MeasureTable exact = enumerate_measure(f, psi, 4);
  std::vector<double> empirical(exact.probs.size(), 0.0);
  for (std::size_t k = 0; k < samples; ++k) {
    const TrajectoryRun run = sample_trajectory(f, psi, 4, seed + k);
    empirical[exact.index_of(run.outcomes)] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t idx = 0; idx < exact.probs.size(); ++idx) {
    tv += std::abs(empirical[idx] / samples - exact.probs[idx]);
  }
  tv *= 0.5;
  record(out, tv <= 0.01, "TV distance " + std::to_string(tv));
  return out;
}

// 8. Witness round trip.
Outcome criterion_witness_round_trip() {
  Outcome out;
  for (std::size_t i = 0; i < 50; ++i) {
    const KrausFamily f = random_commuting_normal(pick_dim(i), pick_ops(i), 5000 + i);
    const NdWitness w = build_witness(simultaneous_diagonalize(f));
    const auto rebuilt = reconstruct_family(w);
    for (std::size_t a = 0; a < f.size(); ++a) {
      const double err = frobenius_norm(rebuilt[a] - f.ops[a]);
      record(out, err <= 1e-9 * frobenius_norm(f.ops[a]),
             "family " + std::to_string(i) + " operator " + std::to_string(a + 1) +
                 " residual " + std::to_string(err));
    }
    for (std::size_t k = 0; k + 1 < w.lambda_values.size(); ++k) {
      record(out, w.lambda_values[k + 1] > w.lambda_values[k],
             "family " + std::to_string(i) + " labels not distinct");
    }
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "theorem reproduction on 200 random families", criterion_theorem_reproduction},
      {2, "proof-identity residuals below 1e-10", criterion_proof_identities},
      {3, "channel norm identity with 200 probes per family", criterion_norm_identity},
      {4, "amplitude damping fixture (gamma = 0.5)", criterion_amplitude_damping},
      {5, "cyclic shift example (Fourier, exchangeability, de Finetti)",
       criterion_cyclic_example},
      {6, "truncated shift example (defect, hypotheses, no-leak)",
       criterion_truncated_example},
      {7, "Monte Carlo vs enumeration, TV <= 0.01", criterion_monte_carlo},
      {8, "non-demolition witness round trip", criterion_witness_round_trip},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name;
    const std::string detail = out.detail.str();
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
