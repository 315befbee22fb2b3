#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "krauskit/errors.hpp"

namespace kraus::io {

namespace {

double number_from_json(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Cx complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(where + ": expected a [re, im] pair");
  }
  const double re = number_from_json(j[0], where + "[0]");
  const double im = number_from_json(j[1], where + "[1]");
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw ParseError(where + ": non-finite entry");
  }
  return Cx{re, im};
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return doc;
}

}  // namespace

json complex_to_json(Cx value) { return json::array({value.real(), value.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParseError(where + ".row[0]: expected a list of entries");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    const std::string row_where = where + ".row[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(row_where + ": expected a list of entries");
    if (row.size() != cols) {
      throw ParseError(row_where + ": has " + std::to_string(row.size()) + " entries, expected " +
                       std::to_string(cols));
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row[k], row_where + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

json family_to_json(const KrausFamily& f) {
  json doc;
  doc["dim"] = f.dim;
  json kraus = json::array();
  for (const ComplexMatrix& v : f.ops) kraus.push_back(matrix_to_json(v));
  doc["kraus"] = std::move(kraus);
  doc["tolerance"] = f.tol;
  return doc;
}

KrausFamily family_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("family: expected a JSON object");
  if (!j.contains("dim")) throw ParseError("family: missing \"dim\"");
  if (!j.contains("kraus")) throw ParseError("family: missing \"kraus\"");
  const auto dim = j["dim"];
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
    throw ParseError("family.dim: expected a positive integer");
  }
  const std::size_t d = dim.get<std::size_t>();
  const json& kraus = j["kraus"];
  if (!kraus.is_array() || kraus.empty()) {
    throw ParseError("family.kraus: expected a non-empty list of matrices");
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t a = 0; a < kraus.size(); ++a) {
    const std::string where = "family.kraus[" + std::to_string(a) + "]";
    ComplexMatrix m = matrix_from_json(kraus[a], where);
    if (m.rows() != d || m.cols() != d) {
      throw ParseError(where + ": is " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected " + std::to_string(d) + "x" +
                       std::to_string(d));
    }
    ops.push_back(std::move(m));
  }
  double tol = kDefaultTol;
  if (j.contains("tolerance")) {
    tol = number_from_json(j["tolerance"], "family.tolerance");
    if (!(tol > 0.0)) throw ParseError("family.tolerance: must be positive");
  }
  return KrausFamily(std::move(ops), tol);
}

KrausFamily load_family(const std::string& path) { return family_from_json(load_document(path)); }

LoadedState state_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("state: expected a JSON object");
  if (!j.contains("dim")) throw ParseError("state: missing \"dim\"");
  if (!j.contains("psi")) throw ParseError("state: missing \"psi\"");
  const std::size_t d = j["dim"].get<std::size_t>();
  const json& psi = j["psi"];
  if (!psi.is_array() || psi.size() != d) {
    throw ParseError("state.psi: expected " + std::to_string(d) + " entries");
  }
  ComplexMatrix v(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    v(i, 0) = complex_from_json(psi[i], "state.psi[" + std::to_string(i) + "]");
  }
  LoadedState out;
  out.reported_norm = vector_norm(v);
  if (std::abs(out.reported_norm - 1.0) > 1e-6) {
    throw ParseError("state.psi: norm " + std::to_string(out.reported_norm) +
                     " deviates from one beyond 1e-6");
  }
  out.psi = (1.0 / out.reported_norm) * v;
  return out;
}

LoadedState load_state(const std::string& path) { return state_from_json(load_document(path)); }

std::string outcome_key(const OutcomeString& s, std::size_t num_outcomes) {
  std::ostringstream out;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (num_outcomes > 9 && t > 0) out << ',';
    out << s[t] + 1;
  }
  return out.str();
}

json validation_to_json(const ValidationReport& rep) {
  json doc;
  doc["defect_norm"] = rep.defect_norm;
  doc["is_normalized"] = rep.is_normalized;
  doc["max_commutator"] = rep.max_commutator;
  doc["is_commuting"] = rep.is_commuting;
  doc["normality_defects"] = rep.normality_defects;
  doc["is_normal_family"] = rep.is_normal_family;
  doc["pairwise_commutators"] = rep.pairwise_commutators;
  doc["defect_matrix"] = matrix_to_json(rep.defect_matrix);
  return doc;
}

json stationary_to_json(const StationaryState& ss) {
  json doc;
  doc["rho"] = matrix_to_json(ss.rho);
  doc["residual"] = ss.residual;
  doc["min_eigenvalue"] = ss.min_eigenvalue;
  doc["trace"] = ss.trace;
  doc["is_faithful"] = ss.is_faithful;
  return doc;
}

json decomposition_to_json(const Decomposition& dec) {
  json doc;
  doc["dim_F"] = dec.dim_F;
  doc["dim_D"] = dec.dim_D;
  doc["lower_left_residual"] = dec.lower_left_residual;
  doc["spectral_radius_D"] = dec.spectral_radius_D;
  doc["basis"] = matrix_to_json(dec.basis);
  json a = json::array(), b = json::array(), c = json::array();
  for (const ComplexMatrix& m : dec.a_blocks) a.push_back(matrix_to_json(m));
  for (const ComplexMatrix& m : dec.b_blocks) b.push_back(matrix_to_json(m));
  for (const ComplexMatrix& m : dec.c_blocks) c.push_back(matrix_to_json(m));
  doc["a_blocks"] = std::move(a);
  doc["b_blocks"] = std::move(b);
  doc["c_blocks"] = std::move(c);
  doc["rho_F"] = stationary_to_json(dec.rho_F);
  return doc;
}

json verification_to_json(const DecompositionReport& rep) {
  json doc;
  doc["faithful_ok"] = rep.faithful_ok;
  doc["radius_ok"] = rep.radius_ok;
  doc["diagonal_fixed_points_ok"] = rep.diagonal_fixed_points_ok;
  doc["max_fixed_point_offdiagonal"] = rep.max_fixed_point_offdiagonal;
  doc["transience_decay"] = rep.transience_decay;
  doc["transience_ok"] = rep.transience_ok;
  return doc;
}

json theorem_to_json(const TheoremReport& rep) {
  json doc;
  doc["applicable"] = rep.applicable;
  doc["failed_hypotheses"] = rep.failed_hypotheses;
  doc["b_blocks_zero"] = rep.b_blocks_zero;
  doc["all_normal"] = rep.all_normal;

  json trace;
  const auto& eq = rep.proof_trace.block_equations;
  trace["block_equations"] = {{"n1", eq.n1}, {"n2", eq.n2}, {"n3", eq.n3},
                              {"c1", eq.c1}, {"c2", eq.c2}, {"c3", eq.c3}};
  trace["defect_identity"] = rep.proof_trace.defect_identity;
  trace["jump_fixed_point"] = rep.proof_trace.jump_fixed_point;
  trace["stationary_trace"] = rep.proof_trace.stationary_trace;
  trace["b_propagation"] = rep.proof_trace.b_propagation;
  trace["normality_defects"] = rep.proof_trace.normality_defects;
  doc["proof_trace"] = std::move(trace);

  doc["validation"] = validation_to_json(rep.validation);
  if (rep.decomposition) doc["decomposition"] = decomposition_to_json(*rep.decomposition);
  if (!rep.notes.empty()) doc["notes"] = rep.notes;
  return doc;
}

json eigenstructure_to_json(const JointEigenstructure& j) {
  json doc;
  doc["basis"] = matrix_to_json(j.basis);
  json table = json::array();
  for (std::size_t a = 0; a < j.eigenvalue_table.rows(); ++a) {
    json row = json::array();
    for (std::size_t k = 0; k < j.eigenvalue_table.cols(); ++k)
      row.push_back(complex_to_json(j.eigenvalue_table(a, k)));
    table.push_back(std::move(row));
  }
  doc["eigenvalue_table"] = std::move(table);
  doc["classes"] = j.classes;  // 0-based basis-column groups
  return doc;
}

json witness_to_json(const NdWitness& w) {
  json doc;
  doc["n_operator"] = matrix_to_json(w.n_operator);
  doc["lambda_values"] = w.lambda_values;
  json table = json::array();
  for (std::size_t a = 0; a < w.f_table.rows(); ++a) {
    json row = json::array();
    for (std::size_t k = 0; k < w.f_table.cols(); ++k)
      row.push_back(complex_to_json(w.f_table(a, k)));
    table.push_back(std::move(row));
  }
  doc["f_table"] = std::move(table);
  return doc;
}

json measure_to_json(const MeasureTable& table) {
  json doc;
  doc["length"] = table.length;
  doc["num_outcomes"] = table.num_outcomes;
  doc["total"] = table.total;
  json entries = json::object();
  for (std::size_t k = 0; k < table.probs.size(); ++k) {
    entries[outcome_key(table.string_at(k), table.num_outcomes)] = table.probs[k];
  }
  doc["entries"] = std::move(entries);
  return doc;
}

}  // namespace kraus::io
