#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "magicrect/serialize.hpp"

using namespace magicrect;

TEST_SUITE("serialize") {

TEST_CASE("matrices round-trip with interleaved real and imaginary parts") {
  CMat m(2, 3);
  m << cplx(1, -2), cplx(0, 0.5), cplx(3, 0), cplx(-1, 1), cplx(0, -4),
      cplx(2.5, 2.5);
  Json j = matrix_to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(j["data"].size() == 12);
  CHECK(j["data"][0] == 1.0);
  CHECK(j["data"][1] == -2.0);
  CMat back = matrix_from_json(j);
  CHECK((back - m).norm() == 0.0);

  SUBCASE("shape and payload must agree") {
    j["data"].push_back(0.0);
    CHECK_THROWS_AS(matrix_from_json(j), SchemaError);
  }
  SUBCASE("unknown matrix fields are rejected") {
    j["extra"] = 1;
    CHECK_THROWS_AS(matrix_from_json(j), SchemaError);
  }
}

TEST_CASE("states and games round-trip") {
  CVec v(4);
  v << 0.5, cplx(0, 0.5), -0.5, cplx(0, -0.5);
  StateVector psi = make_state(2, 2, v);
  StateVector back = state_from_json(state_to_json(psi));
  CHECK(back.dim_a == 2);
  CHECK(back.dim_b == 2);
  CHECK((back.amplitudes - psi.amplitudes).norm() == 0.0);

  GameSpec g = GameSpec::uniform(2, 3);
  GameSpec gb = game_from_json(game_to_json(g));
  CHECK(gb.m == 2);
  CHECK(gb.n == 3);
  CHECK((gb.mu - g.mu).norm() == 0.0);

  Json bad = state_to_json(psi);
  bad["amplitudes"][0] = 9.0;  // breaks normalization
  CHECK_THROWS_AS(state_from_json(bad), Error);
}

TEST_CASE("strategy files carry the game and reproduce the value") {
  auto [setup, s] = mermin_peres_fixture();
  Json j = strategy_to_json(setup.game, s);
  CHECK(j["schemaVersion"] == 1);
  auto [g2, s2] = strategy_from_json(j);
  CHECK(g2.m == 3);
  validate_strategy(g2, s2);
  CHECK(game_value(g2, s2) == doctest::Approx(1.0).epsilon(1e-12));
  // serialization is deterministic byte for byte
  CHECK(strategy_to_json(g2, s2).dump(2) == j.dump(2));

  SUBCASE("version must be 1") {
    j["schemaVersion"] = 2;
    CHECK_THROWS_AS(strategy_from_json(j), SchemaError);
  }
  SUBCASE("unknown top-level fields are rejected") {
    j["comment"] = "hi";
    CHECK_THROWS_AS(strategy_from_json(j), SchemaError);
  }
  SUBCASE("missing fields are rejected") {
    j.erase("state");
    CHECK_THROWS_AS(strategy_from_json(j), SchemaError);
  }
  SUBCASE("outcome signs are validated") {
    j["alice"][0][0]["outcome"][0] = 3;
    CHECK_THROWS_AS(strategy_from_json(j), SchemaError);
  }
}

TEST_CASE("setup files rebuild to an equivalent setup") {
  auto [setup, s] = mermin_peres_fixture();
  (void)s;
  Json j = setup_to_json(setup);
  OperatorSetup back = setup_from_json(j);
  CHECK(back.dim_a == 4);
  CHECK(back.realized());
  CHECK(back.maximal());
  for (int i = 0; i < 3; ++i)
    for (size_t k = 0; k < 4; ++k)
      CHECK((back.rows[i].ops[k] - setup.rows[i].ops[k]).norm() == 0.0);
  CHECK(setup_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("scenario files preserve the certification verdict") {
  for (const CatalogEntry& e : builtin_scenarios()) {
    Json j = scenario_to_json(e.scenario);
    ParityScenario back = scenario_from_json(j);
    CHECK(back.name == e.scenario.name);
    CHECK(back.pools == e.scenario.pools);
    Certificate c1 = certify_scenario(e.scenario);
    Certificate c2 = certify_scenario(back);
    CHECK((c1.verdict == c2.verdict));
    CHECK(c1.trace == c2.trace);
    CHECK(scenario_to_json(back).dump(2) == j.dump(2));
  }
}

TEST_CASE("certificates serialize their trace and witness") {
  ParityScenario sc;
  sc.name = "w";
  sc.pools = {{"P", {"a"}}};
  Term t;
  t["P"] = Claim{{"a"}, 1};
  sc.constraints = {{t}};
  Certificate c = certify_scenario(sc);
  Json j = certificate_to_json(c);
  CHECK(j["verdict"] == "NoContradiction");
  CHECK(j["assignment"]["P"] == "a");
  CHECK(j["chosenTerms"].size() == 1);
}

TEST_CASE("file io is strict and atomic writes land complete") {
  const std::string path = "serialize_roundtrip_tmp.json";
  Json j;
  j["schemaVersion"] = 1;
  j["name"] = "t";
  write_json_file(path, j);
  Json back = read_json_file(path);
  CHECK(back == j);
  CHECK(std::remove((path + ".tmp").c_str()) != 0);  // no temp file left

  {
    std::ofstream out(path, std::ios::trunc);
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file(path), SchemaError);
  CHECK_THROWS_AS(read_json_file("does_not_exist_1234.json"), SchemaError);
  std::remove(path.c_str());
}

TEST_CASE("index families serialize their sign structure") {
  Json j = index_family_to_json(build_index_sets(3));
  CHECK(j["arity"] == 3);
  CHECK(j["labels"].size() == 4);
  CHECK(j["signs"][0] == Json::array({1, 1, 1}));
}

}  // TEST_SUITE
