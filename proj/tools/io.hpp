#pragma once

#include <string>

#include "json.hpp"
#include "krauskit/channel.hpp"
#include "krauskit/complex_matrix.hpp"
#include "krauskit/spectral.hpp"
#include "krauskit/structure.hpp"
#include "krauskit/trajectory.hpp"

namespace kraus::io {

using json = nlohmann::ordered_json;

// Complex numbers serialize as [re, im] everywhere; matrices as a list of
// rows, each row a list of [re, im] pairs. nlohmann emits the shortest
// representation that reparses to the same double, so write/read round
// trips are bit exact.

json complex_to_json(Cx value);
json matrix_to_json(const ComplexMatrix& m);
/// `where` prefixes error messages, e.g. "kraus[2]".
ComplexMatrix matrix_from_json(const json& j, const std::string& where);

/// Family file schema:
///   { "dim": d, "kraus": [matrix, ...], "tolerance": t?, "metadata": {...}? }
/// Rejects ragged rows, wrong dimensions and non-finite entries with a
/// position-precise ParseError.
json family_to_json(const KrausFamily& f);
KrausFamily family_from_json(const json& j);
KrausFamily load_family(const std::string& path);

/// State file schema: { "dim": d, "psi": [[re, im], ...] }.
/// The vector is normalized on load when its norm is within 1e-6 of one and
/// rejected otherwise; the pre-normalization norm is reported.
struct LoadedState {
  ComplexMatrix psi;
  double reported_norm = 0.0;
};
LoadedState state_from_json(const json& j);
LoadedState load_state(const std::string& path);

/// Outcome-string key for measure tables: labels 1..m, concatenated for
/// m <= 9 ("112"), comma separated otherwise ("1,1,12").
std::string outcome_key(const OutcomeString& s, std::size_t num_outcomes);

json validation_to_json(const ValidationReport& rep);
json stationary_to_json(const StationaryState& ss);
json decomposition_to_json(const Decomposition& dec);
json verification_to_json(const DecompositionReport& rep);
json theorem_to_json(const TheoremReport& rep);
json eigenstructure_to_json(const JointEigenstructure& j);
json witness_to_json(const NdWitness& w);
json measure_to_json(const MeasureTable& table);

}  // namespace kraus::io
