#include <cmath>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "krauskit/errors.hpp"
#include "krauskit/generators.hpp"
#include "krauskit/trajectory.hpp"

using namespace kraus;
using fixtures::basis_vector;

TEST_CASE("string_probability") {
  SUBCASE("projective measurement of an eigenstate is deterministic") {
    const KrausFamily f = fixtures::projective_qubit();
    const ComplexMatrix psi = basis_vector(2, 0);
    CHECK(string_probability(f, psi, {0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(string_probability(f, psi, {0, 1, 0}) == 0.0);
  }

  SUBCASE("cyclic pair on C^2") {
    const KrausFamily f = cyclic_shift_family(2);
    CHECK(string_probability(f, basis_vector(2, 0), {0, 0}) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(string_probability(f, basis_vector(2, 0), {0, 1}) <= 1e-15);
  }

  SUBCASE("single unitary never loses norm") {
    Rng rng(71);
    const KrausFamily f({random_unitary(3, rng)});
    const ComplexMatrix psi = random_unit_vector(3, rng);
    CHECK(string_probability(f, psi, {0, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("input validation") {
    const KrausFamily f = fixtures::projective_qubit();
    CHECK_THROWS_AS(string_probability(f, basis_vector(3, 0), {0}), DimensionMismatch);
    CHECK_THROWS_AS(string_probability(f, 2.0 * basis_vector(2, 0), {0}), NotUnitVector);
    CHECK_THROWS_AS(string_probability(f, basis_vector(2, 0), {5}), IndexOutOfRange);
  }
}

TEST_CASE("enumerate_measure") {
  SUBCASE("cyclic pair on C^2, length two") {
    const MeasureTable t = enumerate_measure(cyclic_shift_family(2), basis_vector(2, 0), 2);
    CHECK(t.prob({0, 0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t.prob({1, 1}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t.prob({0, 1}) <= 1e-15);
    CHECK(t.prob({1, 0}) <= 1e-15);
    CHECK(t.total == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("projective family collapses the plus state") {
    const ComplexMatrix plus =
        ComplexMatrix::column_vector({Cx{1.0 / std::sqrt(2.0), 0.0}, Cx{1.0 / std::sqrt(2.0), 0.0}});
    const MeasureTable t = enumerate_measure(fixtures::projective_qubit(), plus, 3);
    CHECK(t.prob({0, 0, 0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t.prob({1, 1, 1}) == doctest::Approx(0.5).epsilon(1e-14));
    double off = 0.0;
    for (std::size_t k = 0; k < t.probs.size(); ++k) {
      const OutcomeString s = t.string_at(k);
      const bool constant = std::all_of(s.begin(), s.end(), [&](int x) { return x == s[0]; });
      if (!constant) off = std::max(off, t.probs[k]);
    }
    CHECK(off <= 1e-15);
  }

  SUBCASE("totals telescope to one for normalized families") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const KrausFamily f = random_kraus_isometry(3, 2, seed);
      Rng rng(seed + 1000);
      const MeasureTable t = enumerate_measure(f, random_unit_vector(3, rng), 4);
      CHECK(std::abs(t.total - 1.0) <= 1e-10);
    }
  }

  SUBCASE("marginalization consistency") {
    const KrausFamily f = random_kraus_isometry(3, 3, 9);
    Rng rng(9);
    const ComplexMatrix psi = random_unit_vector(3, rng);
    const MeasureTable shorter = enumerate_measure(f, psi, 2);
    const MeasureTable longer = enumerate_measure(f, psi, 3);
    for (std::size_t k = 0; k < shorter.probs.size(); ++k) {
      OutcomeString s = shorter.string_at(k);
      double sum = 0.0;
      for (int b = 0; b < 3; ++b) {
        s.push_back(b);
        sum += longer.prob(s);
        s.pop_back();
      }
      CHECK(std::abs(sum - shorter.probs[k]) <= 1e-12);
    }
  }

  SUBCASE("cap") {
    CHECK_THROWS_AS(enumerate_measure(fixtures::projective_qubit(), basis_vector(2, 0), 30, 1000),
                    ExplosionCap);
  }
}

TEST_CASE("sample_trajectory") {
  SUBCASE("deterministic branch for an eigenstate") {
    const KrausFamily f = fixtures::projective_qubit();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const TrajectoryRun run = sample_trajectory(f, basis_vector(2, 0), 5, seed);
      for (int sym : run.outcomes) CHECK(sym == 0);
      for (const ComplexMatrix& state : run.states)
        CHECK(vector_norm(state) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("frequencies match the exact law") {
    const KrausFamily f = cyclic_shift_family(2);
    const int samples = 100000;
    int ones = 0;
    for (int k = 0; k < samples; ++k) {
      const TrajectoryRun run = sample_trajectory(f, basis_vector(2, 0), 1, 9000 + k);
      if (run.outcomes[0] == 0) ++ones;
    }
    CHECK(std::abs(ones / static_cast<double>(samples) - 0.5) <= 0.01);
  }

  SUBCASE("single unitary walks deterministically") {
    Rng rng(41);
    const ComplexMatrix u = random_unitary(3, rng);
    const ComplexMatrix psi = random_unit_vector(3, rng);
    const TrajectoryRun run = sample_trajectory(KrausFamily({u}), psi, 3, 7);
    ComplexMatrix expected = psi;
    for (std::size_t t = 1; t < run.states.size(); ++t) {
      expected = u * expected;
      CHECK(frobenius_norm(run.states[t] - expected) <= 1e-12);
    }
  }

  SUBCASE("unnormalized families are refused") {
    CHECK_THROWS_AS(sample_trajectory(truncated_shift_family(3), basis_vector(3, 2), 3, 1),
                    NotNormalized);
  }

  SUBCASE("reproducible per seed") {
    const KrausFamily f = random_kraus_isometry(4, 3, 77);
    Rng rng(77);
    const ComplexMatrix psi = random_unit_vector(4, rng);
    const TrajectoryRun a = sample_trajectory(f, psi, 6, 123);
    const TrajectoryRun b = sample_trajectory(f, psi, 6, 123);
    CHECK(a.outcomes == b.outcomes);
  }
}

TEST_CASE("exchangeability_check") {
  SUBCASE("commuting family is exchangeable") {
    CHECK(exchangeability_check(cyclic_shift_family(4), basis_vector(4, 0), 4) <= 1e-12);
  }

  SUBCASE("amplitude damping from the excited state is not") {
    // P(1,2) = 1/4 against P(2,1) = 1/2 at gamma = 1/2.
    const double gap =
        exchangeability_check(fixtures::amplitude_damping(0.5), basis_vector(2, 1), 2);
    CHECK(gap == doctest::Approx(0.25).epsilon(1e-13));
  }

  SUBCASE("length one has nothing to permute") {
    CHECK(exchangeability_check(fixtures::amplitude_damping(0.5), basis_vector(2, 1), 1) == 0.0);
  }

  SUBCASE("exchangeable at length two exactly when commuting") {
    for (std::uint64_t seed : {61u, 62u}) {
      const KrausFamily commuting = random_commuting_normal(4, 2, seed);
      const KrausFamily generic = random_kraus_isometry(4, 2, seed);
      double worst_commuting = 0.0, worst_generic = 0.0;
      Rng rng(seed);
      for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix psi = random_unit_vector(4, rng);
        worst_commuting = std::max(worst_commuting, exchangeability_check(commuting, psi, 2));
        worst_generic = std::max(worst_generic, exchangeability_check(generic, psi, 2));
      }
      CHECK(worst_commuting <= 1e-12);
      CHECK(worst_generic > 1e-6);  // generic families break exchangeability
    }
  }
}

TEST_CASE("definetti_check") {
  SUBCASE("cyclic pair on C^2") {
    const DeFinettiReport rep = definetti_check(cyclic_shift_family(2), basis_vector(2, 0), 2);
    CHECK(rep.max_abs_diff <= 1e-12);
    CHECK(rep.mixture_table.prob({0, 0}) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rep.mixture_table.prob({1, 1}) == doctest::Approx(0.5).epsilon(1e-13));
  }

  SUBCASE("projective family with the plus state") {
    const ComplexMatrix plus =
        ComplexMatrix::column_vector({Cx{1.0 / std::sqrt(2.0), 0.0}, Cx{1.0 / std::sqrt(2.0), 0.0}});
    const DeFinettiReport rep = definetti_check(fixtures::projective_qubit(), plus, 3);
    CHECK(rep.max_abs_diff <= 1e-12);
  }

  SUBCASE("single identity is trivial") {
    const DeFinettiReport rep =
        definetti_check(KrausFamily({ComplexMatrix::identity(2)}), basis_vector(2, 0), 3);
    CHECK(rep.max_abs_diff <= 1e-14);
    CHECK(rep.mixture_table.prob({0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("random commuting normal families satisfy the mixture identity") {
    for (std::uint64_t seed : {71u, 72u, 73u}) {
      const std::size_t d = 2 + seed % 7;
      const KrausFamily f = random_commuting_normal(d, 2, seed);
      Rng rng(seed);
      const DeFinettiReport rep = definetti_check(f, random_unit_vector(d, rng), 5);
      CHECK(rep.max_abs_diff <= 1e-10);
    }
  }

  SUBCASE("non-commuting input is rejected") {
    CHECK_THROWS_AS(definetti_check(fixtures::amplitude_damping(0.5), basis_vector(2, 0), 2),
                    PreconditionViolated);
  }
}

TEST_CASE("cyclic example") {
  SUBCASE("two Fourier modes by hand at d = 2") {
    const CyclicExample ex = build_cyclic_example(2, basis_vector(2, 0), 2);
    CHECK(ex.fourier.fourier_probs[2] == doctest::Approx(0.5).epsilon(1e-14));  // n1 = 2
    CHECK(ex.fourier.fourier_probs[0] == doctest::Approx(0.5).epsilon(1e-14));  // n1 = 0
    CHECK(ex.fourier.fourier_probs[1] <= 1e-15);
    CHECK(ex.fourier.max_abs_diff <= 1e-13);
  }

  SUBCASE("d = 8, all 32 strings at length 5") {
    const CyclicExample ex = build_cyclic_example(8, basis_vector(8, 0), 5);
    CHECK(ex.fourier.max_abs_diff <= 1e-12);
  }

  SUBCASE("the family is normalized for every dimension") {
    for (std::size_t d : {2, 3, 5, 8, 12}) {
      const ValidationReport rep = validate(cyclic_shift_family(d));
      CHECK(rep.defect_norm <= 1e-14);
      CHECK(rep.is_commuting);
      CHECK(rep.is_normal_family);
    }
  }
}

TEST_CASE("truncated example") {
  SUBCASE("defect and normality at d = 3") {
    const TruncatedExample ex = build_truncated_example(3);
    CHECK(ex.defect_norm == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ex.normality_defects[0] == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-13));
    CHECK(ex.normality_defects[1] == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-13));
    CHECK(validate(ex.family).is_commuting);
  }

  SUBCASE("no leak before the boundary is reached") {
    CHECK(truncated_no_leak_check(6, fixtures::basis_vector(6, 1), 4, 8) <= 1e-13);
    CHECK(truncated_no_leak_check(5, fixtures::basis_vector(5, 0), 4, 8) <= 1e-13);
  }
}
