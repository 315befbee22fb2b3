#include <cmath>

#include "doctest.h"
#include "io.hpp"
#include "krauskit/errors.hpp"
#include "krauskit/generators.hpp"

using namespace kraus;
using kraus::io::json;

TEST_CASE("family JSON round trip is bitwise exact") {
  for (std::uint64_t seed : {1u, 9u}) {
    const KrausFamily f = random_kraus_isometry(4, 3, seed);
    const std::string text = io::family_to_json(f).dump();
    const KrausFamily back = io::family_from_json(json::parse(text));
    REQUIRE(back.dim == f.dim);
    REQUIRE(back.size() == f.size());
    CHECK(back.tol == f.tol);
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t k = 0; k < f.ops[a].data().size(); ++k)
        CHECK(back.ops[a].data()[k] == f.ops[a].data()[k]);
  }
}

TEST_CASE("family parsing rejects malformed input with positions") {
  SUBCASE("ragged rows") {
    const json doc = {{"dim", 2},
                      {"kraus", json::array({json::array({
                          json::array({json::array({1.0, 0.0}), json::array({0.0, 0.0})}),
                          json::array({json::array({0.0, 0.0})}),
                      })})}};
    CHECK_THROWS_WITH_AS(io::family_from_json(doc),
                         doctest::Contains("family.kraus[0].row[1]"), ParseError);
  }

  SUBCASE("wrong matrix dimension") {
    const json doc = {{"dim", 3},
                      {"kraus", json::array({json::array({
                          json::array({json::array({1.0, 0.0})}),
                      })})}};
    CHECK_THROWS_WITH_AS(io::family_from_json(doc), doctest::Contains("family.kraus[0]"),
                         ParseError);
  }

  SUBCASE("missing fields") {
    CHECK_THROWS_AS(io::family_from_json(json{{"dim", 2}}), ParseError);
    CHECK_THROWS_AS(io::family_from_json(json{{"kraus", json::array()}}), ParseError);
  }

  SUBCASE("non-finite entries") {
    json doc;
    doc["dim"] = 1;
    doc["kraus"] = json::array(
        {json::array({json::array({json::array({std::nan(""), 0.0})})})});
    CHECK_THROWS_AS(io::family_from_json(doc), ParseError);
  }
}

TEST_CASE("state files normalize near-unit vectors and reject the rest") {
  json doc;
  doc["dim"] = 2;
  doc["psi"] = json::array({json::array({1.0 + 5e-7, 0.0}), json::array({0.0, 0.0})});
  const io::LoadedState state = io::state_from_json(doc);
  CHECK(state.reported_norm == doctest::Approx(1.0 + 5e-7).epsilon(1e-12));
  CHECK(vector_norm(state.psi) == doctest::Approx(1.0).epsilon(1e-14));

  doc["psi"] = json::array({json::array({2.0, 0.0}), json::array({0.0, 0.0})});
  CHECK_THROWS_AS(io::state_from_json(doc), ParseError);

  doc["psi"] = json::array({json::array({1.0, 0.0})});
  CHECK_THROWS_AS(io::state_from_json(doc), ParseError);
}

TEST_CASE("outcome keys use 1-based labels") {
  CHECK(io::outcome_key({0, 0, 1}, 2) == "112");
  CHECK(io::outcome_key({0, 10}, 12) == "1,11");
  CHECK(io::outcome_key({}, 2) == "");
}
