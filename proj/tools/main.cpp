#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "io.hpp"
#include "krauskit/errors.hpp"
#include "krauskit/generators.hpp"
#include "krauskit/spectral.hpp"
#include "krauskit/structure.hpp"
#include "krauskit/trajectory.hpp"

namespace {

using kraus::io::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

int emit(const json& doc, bool pass, const std::string& summary) {
  std::cout << doc.dump(2) << "\n";
  std::cerr << summary << "\n";
  return pass ? kExitPass : kExitCheckFailed;
}

/// Input loading wrapper: anything wrong with the file is an input error.
kraus::KrausFamily load_family(const std::string& path, std::optional<double> tol_override) {
  kraus::KrausFamily f = [&] {
    try {
      return kraus::io::load_family(path);
    } catch (const kraus::ParseError&) {
      throw;
    } catch (const kraus::Error& e) {
      throw kraus::ParseError(path + ": " + e.what());
    }
  }();
  if (tol_override) f.tol = *tol_override;
  return f;
}

kraus::ComplexMatrix load_state(const std::string& path, const kraus::KrausFamily& f) {
  const kraus::io::LoadedState state = kraus::io::load_state(path);
  if (state.psi.rows() != f.dim) {
    throw kraus::ParseError(path + ": state dimension " + std::to_string(state.psi.rows()) +
                            " does not match family dimension " + std::to_string(f.dim));
  }
  return state.psi;
}

kraus::ComplexMatrix first_basis_vector(std::size_t d) {
  kraus::ComplexMatrix v(d, 1);
  v(0, 0) = kraus::Cx{1.0, 0.0};
  return v;
}

std::string yesno(bool value) { return value ? "yes" : "no"; }

int run_validate(const std::string& family_path, std::optional<double> tol) {
  const kraus::KrausFamily f = load_family(family_path, tol);
  const kraus::ValidationReport rep = kraus::validate(f);
  std::ostringstream summary;
  summary << "normalized: " << yesno(rep.is_normalized) << " (defect " << rep.defect_norm
          << "); commuting: " << yesno(rep.is_commuting) << " (max commutator "
          << rep.max_commutator << "); normal family: " << yesno(rep.is_normal_family);
  return emit(kraus::io::validation_to_json(rep), rep.is_normalized, summary.str());
}

int run_analyze(const std::string& family_path, std::optional<double> tol, int decay_steps) {
  const kraus::KrausFamily f = load_family(family_path, tol);
  const kraus::ValidationReport val = kraus::validate(f);
  json doc;
  doc["validation"] = kraus::io::validation_to_json(val);
  if (!val.is_normalized) {
    return emit(doc, false, "analyze: family is not normalized, nothing to decompose");
  }
  const kraus::StationaryState ss = kraus::cesaro_stationary(f);
  const kraus::Decomposition dec = kraus::decompose(f);
  const kraus::DecompositionReport ver = kraus::verify_decomposition(f, dec, decay_steps);
  const kraus::BlockEquationResiduals eq = kraus::block_equation_residuals(dec);
  doc["stationary"] = kraus::io::stationary_to_json(ss);
  doc["decomposition"] = kraus::io::decomposition_to_json(dec);
  doc["verification"] = kraus::io::verification_to_json(ver);
  doc["block_equations"] = {{"n1", eq.n1}, {"n2", eq.n2}, {"n3", eq.n3},
                            {"c1", eq.c1}, {"c2", eq.c2}, {"c3", eq.c3}};
  const bool pass = ver.faithful_ok && ver.radius_ok && ver.diagonal_fixed_points_ok;
  std::ostringstream summary;
  summary << "dim_F = " << dec.dim_F << ", dim_D = " << dec.dim_D << ", spectral radius "
          << dec.spectral_radius_D << "; properties (i)-(iii): " << yesno(pass);
  return emit(doc, pass, summary.str());
}

int run_check_theorem(const std::string& family_path, std::optional<double> tol) {
  const kraus::KrausFamily f = load_family(family_path, tol);
  const kraus::TheoremReport rep = kraus::theorem_check(f);
  std::ostringstream summary;
  if (!rep.applicable) {
    summary << "not applicable; failed hypotheses:";
    for (const std::string& h : rep.failed_hypotheses) summary << " " << h;
  } else {
    summary << "applicable; trivial decomposition: " << yesno(rep.b_blocks_zero)
            << "; all operators normal: " << yesno(rep.all_normal);
  }
  const bool pass = rep.applicable && rep.b_blocks_zero && rep.all_normal;
  return emit(kraus::io::theorem_to_json(rep), pass, summary.str());
}

int run_diagonalize(const std::string& family_path, std::optional<double> tol) {
  const kraus::KrausFamily f = load_family(family_path, tol);
  const kraus::JointEigenstructure j = kraus::simultaneous_diagonalize(f);
  const kraus::NdWitness w = kraus::build_witness(j);
  const auto rebuilt = kraus::reconstruct_family(w);
  json doc;
  doc["joint_eigenstructure"] = kraus::io::eigenstructure_to_json(j);
  doc["witness"] = kraus::io::witness_to_json(w);
  std::vector<double> residuals;
  double worst = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double rel = kraus::frobenius_norm(rebuilt[a] - f.ops[a]) /
                       std::max(1e-300, kraus::frobenius_norm(f.ops[a]));
    residuals.push_back(rel);
    worst = std::max(worst, rel);
  }
  doc["reconstruction_residuals"] = residuals;
  const bool pass = worst <= 1e-9;
  std::ostringstream summary;
  summary << j.classes.size() << " joint eigenvalue classes; worst reconstruction residual "
          << worst;
  return emit(doc, pass, summary.str());
}

int run_measure(const std::string& family_path, const std::string& state_path,
                std::size_t length, std::size_t cap, std::optional<double> tol) {
  const kraus::KrausFamily f = load_family(family_path, tol);
  const kraus::ComplexMatrix psi = load_state(state_path, f);
  const kraus::MeasureTable table = kraus::enumerate_measure(f, psi, length, cap);
  std::ostringstream summary;
  summary << table.probs.size() << " strings of length " << length << ", total probability "
          << table.total;
  return emit(kraus::io::measure_to_json(table), true, summary.str());
}

int run_simulate(const std::string& family_path, const std::string& state_path,
                 std::size_t length, std::size_t samples, std::uint64_t seed,
                 std::optional<double> tol) {
  const kraus::KrausFamily f = load_family(family_path, tol);
  const kraus::ComplexMatrix psi = load_state(state_path, f);

  std::map<std::string, std::size_t> counts;
  for (std::size_t k = 0; k < samples; ++k) {
    const kraus::TrajectoryRun run = kraus::sample_trajectory(f, psi, length, seed + k);
    ++counts[kraus::io::outcome_key(run.outcomes, f.size())];
  }
  json doc;
  doc["samples"] = samples;
  doc["seed"] = seed;
  json freq = json::object();
  for (const auto& [key, count] : counts) {
    freq[key] = static_cast<double>(count) / static_cast<double>(samples);
  }
  doc["frequencies"] = std::move(freq);

  std::ostringstream summary;
  summary << samples << " trajectories of length " << length;

  // When enumeration is feasible, report the total-variation gap as well.
  std::size_t strings = 1;
  bool enumerable = true;
  for (std::size_t t = 0; t < length && enumerable; ++t) {
    if (strings > kraus::kEnumerationCap / f.size()) enumerable = false;
    strings *= f.size();
  }
  if (enumerable) {
    const kraus::MeasureTable exact = kraus::enumerate_measure(f, psi, length);
    double tv = 0.0;
    for (std::size_t k = 0; k < exact.probs.size(); ++k) {
      const std::string key = kraus::io::outcome_key(exact.string_at(k), f.size());
      const auto it = counts.find(key);
      const double emp =
          it == counts.end() ? 0.0 : static_cast<double>(it->second) / samples;
      tv += std::abs(emp - exact.probs[k]);
    }
    tv *= 0.5;
    doc["tv_distance_to_exact"] = tv;
    summary << ", TV distance to exact law " << tv;
  }
  return emit(doc, true, summary.str());
}

int run_example_cyclic(std::size_t dim, std::size_t length) {
  const kraus::CyclicExample ex = kraus::build_cyclic_example(dim, first_basis_vector(dim), length);
  const kraus::ValidationReport val = kraus::validate(ex.family);
  json doc;
  doc["family"] = kraus::io::family_to_json(ex.family);
  doc["validation"] = kraus::io::validation_to_json(val);
  doc["fourier_check"] = {{"length", ex.fourier.length},
                          {"probability_by_ones_count", ex.fourier.fourier_probs},
                          {"max_abs_diff", ex.fourier.max_abs_diff}};
  const bool pass = ex.fourier.max_abs_diff <= 1e-12 && val.is_normalized;
  std::ostringstream summary;
  summary << "cyclic pair on C^" << dim << "; Fourier cross-check gap " << ex.fourier.max_abs_diff;
  return emit(doc, pass, summary.str());
}

int run_example_truncated(std::size_t dim, std::optional<std::size_t> length,
                          std::optional<std::size_t> cyclic_dim) {
  const kraus::TruncatedExample ex = kraus::build_truncated_example(dim);
  const std::size_t leak_length = length.value_or(std::min<std::size_t>(4, dim - 1));
  const std::size_t leak_cyclic = cyclic_dim.value_or(std::max<std::size_t>(dim, leak_length + 4));
  const double leak =
      kraus::truncated_no_leak_check(dim, first_basis_vector(dim), leak_length, leak_cyclic);
  json doc;
  doc["family"] = kraus::io::family_to_json(ex.family);
  doc["defect_norm"] = ex.defect_norm;
  doc["normality_defects"] = ex.normality_defects;
  doc["no_leak_check"] = {{"length", leak_length},
                          {"cyclic_dim", leak_cyclic},
                          {"max_abs_diff", leak}};
  const bool pass = leak <= 1e-12;
  std::ostringstream summary;
  summary << "truncated pair on C^" << dim << "; defect " << ex.defect_norm
          << ", no-leak gap " << leak;
  return emit(doc, pass, summary.str());
}

int run_gen(const std::string& kind, std::size_t dim, std::size_t ops, std::uint64_t seed,
            std::optional<double> tol) {
  kraus::KrausFamily f = kind == "isometry"
                             ? kraus::random_kraus_isometry(dim, ops, seed)
                             : kraus::random_commuting_normal(dim, ops, seed);
  if (tol) f.tol = *tol;
  std::ostringstream summary;
  summary << kind << " family: d = " << dim << ", m = " << ops << ", seed = " << seed;
  return emit(kraus::io::family_to_json(f), true, summary.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of Kraus operator families: normalization, decomposition,\n"
               "joint diagonalization, non-demolition witnesses and trajectory measures."};
  app.require_subcommand(1);

  std::string family_path, state_path, gen_kind, example_kind;
  std::optional<double> tol;
  std::size_t length = 5, cap = kraus::kEnumerationCap, samples = 10000;
  std::size_t dim = 4, ops = 2;
  std::uint64_t seed = 1;
  int decay_steps = 10;
  std::optional<std::size_t> trunc_length, trunc_cyclic_dim;

  int exit_code = kExitPass;

  auto* validate_cmd = app.add_subcommand("validate", "Normalization and commutation report");
  validate_cmd->add_option("family", family_path, "family JSON file")->required();
  validate_cmd->add_option("--tol", tol, "override family tolerance");
  validate_cmd->callback([&] { exit_code = run_validate(family_path, tol); });

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Stationary state, decomposition and property report");
  analyze_cmd->add_option("family", family_path, "family JSON file")->required();
  analyze_cmd->add_option("--tol", tol, "override family tolerance");
  analyze_cmd->add_option("--decay-steps", decay_steps, "transience profile length");
  analyze_cmd->callback([&] { exit_code = run_analyze(family_path, tol, decay_steps); });

  auto* theorem_cmd =
      app.add_subcommand("check-theorem", "Commuting-implies-normal verification");
  theorem_cmd->add_option("family", family_path, "family JSON file")->required();
  theorem_cmd->add_option("--tol", tol, "override family tolerance");
  theorem_cmd->callback([&] { exit_code = run_check_theorem(family_path, tol); });

  auto* diag_cmd =
      app.add_subcommand("diagonalize", "Joint eigenbasis and non-demolition witness");
  diag_cmd->add_option("family", family_path, "family JSON file")->required();
  diag_cmd->add_option("--tol", tol, "override family tolerance");
  diag_cmd->callback([&] { exit_code = run_diagonalize(family_path, tol); });

  auto* measure_cmd = app.add_subcommand("measure", "Exact outcome-string probabilities");
  measure_cmd->add_option("family", family_path, "family JSON file")->required();
  measure_cmd->add_option("state", state_path, "state JSON file")->required();
  measure_cmd->add_option("--length", length, "string length")->required();
  measure_cmd->add_option("--cap", cap, "enumeration cap");
  measure_cmd->add_option("--tol", tol, "override family tolerance");
  measure_cmd->callback(
      [&] { exit_code = run_measure(family_path, state_path, length, cap, tol); });

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo trajectory sampling");
  simulate_cmd->add_option("family", family_path, "family JSON file")->required();
  simulate_cmd->add_option("state", state_path, "state JSON file")->required();
  simulate_cmd->add_option("--length", length, "trajectory length")->required();
  simulate_cmd->add_option("--samples", samples, "number of trajectories")->required();
  simulate_cmd->add_option("--seed", seed, "base seed")->required();
  simulate_cmd->add_option("--tol", tol, "override family tolerance");
  simulate_cmd->callback(
      [&] { exit_code = run_simulate(family_path, state_path, length, samples, seed, tol); });

  auto* example_cmd = app.add_subcommand("example", "Built-in shift-operator families");
  example_cmd->add_option("kind", example_kind, "cyclic | truncated")
      ->required()
      ->check(CLI::IsMember({"cyclic", "truncated"}));
  example_cmd->add_option("--dim", dim, "dimension")->required();
  example_cmd->add_option("--length", trunc_length, "check length");
  example_cmd->add_option("--cyclic-dim", trunc_cyclic_dim,
                          "cyclic comparison dimension (truncated only)");
  example_cmd->callback([&] {
    if (example_kind == "cyclic") {
      exit_code = run_example_cyclic(dim, trunc_length.value_or(5));
    } else {
      exit_code = run_example_truncated(dim, trunc_length, trunc_cyclic_dim);
    }
  });

  auto* gen_cmd = app.add_subcommand("gen", "Random family generators");
  gen_cmd->add_option("kind", gen_kind, "isometry | commuting")
      ->required()
      ->check(CLI::IsMember({"isometry", "commuting"}));
  gen_cmd->add_option("--dim", dim, "dimension")->required();
  gen_cmd->add_option("--ops", ops, "number of operators")->required();
  gen_cmd->add_option("--seed", seed, "generator seed")->required();
  gen_cmd->add_option("--tol", tol, "family tolerance to record");
  gen_cmd->callback([&] { exit_code = run_gen(gen_kind, dim, ops, seed, tol); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInputError;
  } catch (const kraus::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const kraus::Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return exit_code;
}
