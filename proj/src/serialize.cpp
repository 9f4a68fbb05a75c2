#include "magicrect/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace magicrect {

namespace {

void expect_object_keys(const Json& j, const std::vector<std::string>& required,
                        const std::vector<std::string>& optional,
                        const std::string& where) {
  if (!j.is_object()) {
    throw SchemaError(where + ": expected an object");
  }
  std::set<std::string> allowed(required.begin(), required.end());
  allowed.insert(optional.begin(), optional.end());
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!allowed.count(k)) {
      throw SchemaError(where + ": unknown field \"" + k + "\"");
    }
  }
  for (const std::string& k : required) {
    if (!j.contains(k)) {
      throw SchemaError(where + ": missing field \"" + k + "\"");
    }
  }
}

void check_version(const Json& j, const std::string& where) {
  if (!j.contains("schemaVersion") || !j["schemaVersion"].is_number_integer() ||
      j["schemaVersion"].get<int>() != 1) {
    throw SchemaError(where + ": schemaVersion must be 1");
  }
}

double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<int>();
}

}  // namespace

void expect_keys(const Json& j, const std::vector<std::string>& required,
                 const std::vector<std::string>& optional) {
  std::vector<std::string> req = required;
  req.push_back("schemaVersion");
  expect_object_keys(j, req, optional, "document");
  check_version(j, "document");
}

Json matrix_to_json(const CMat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  }
  j["data"] = std::move(data);
  return j;
}

CMat matrix_from_json(const Json& j) {
  expect_object_keys(j, {"rows", "cols", "data"}, {}, "matrix");
  Eigen::Index rows = get_int(j["rows"], "matrix.rows");
  Eigen::Index cols = get_int(j["cols"], "matrix.cols");
  if (rows < 0 || cols < 0) throw SchemaError("matrix: negative shape");
  const Json& data = j["data"];
  if (!data.is_array() || Eigen::Index(data.size()) != 2 * rows * cols) {
    throw SchemaError("matrix: data must hold 2*rows*cols numbers");
  }
  CMat m(rows, cols);
  size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double re = get_number(data[k], "matrix.data");
      double im = get_number(data[k + 1], "matrix.data");
      m(r, c) = cplx(re, im);
      k += 2;
    }
  }
  return m;
}

Json state_to_json(const StateVector& s) {
  Json j;
  j["dimA"] = s.dim_a;
  j["dimB"] = s.dim_b;
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
    amps.push_back(s.amplitudes(i).real());
    amps.push_back(s.amplitudes(i).imag());
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

StateVector state_from_json(const Json& j) {
  expect_object_keys(j, {"dimA", "dimB", "amplitudes"}, {}, "state");
  Eigen::Index da = get_int(j["dimA"], "state.dimA");
  Eigen::Index db = get_int(j["dimB"], "state.dimB");
  const Json& amps = j["amplitudes"];
  if (!amps.is_array() || Eigen::Index(amps.size()) != 2 * da * db) {
    throw SchemaError("state: amplitudes must hold 2*dimA*dimB numbers");
  }
  CVec v(da * db);
  for (Eigen::Index i = 0; i < da * db; ++i) {
    v(i) = cplx(get_number(amps[size_t(2 * i)], "state.amplitudes"),
                get_number(amps[size_t(2 * i + 1)], "state.amplitudes"));
  }
  return make_state(da, db, std::move(v));
}

Json game_to_json(const GameSpec& g) {
  Json j;
  j["m"] = g.m;
  j["n"] = g.n;
  Json mu = Json::array();
  for (int i = 0; i < g.m; ++i) {
    Json row = Json::array();
    for (int k = 0; k < g.n; ++k) row.push_back(g.mu(i, k));
    mu.push_back(std::move(row));
  }
  j["mu"] = std::move(mu);
  return j;
}

GameSpec game_from_json(const Json& j) {
  expect_object_keys(j, {"m", "n", "mu"}, {}, "game");
  GameSpec g;
  g.m = get_int(j["m"], "game.m");
  g.n = get_int(j["n"], "game.n");
  if (g.m < 1 || g.n < 1) throw SchemaError("game: m and n must be positive");
  const Json& mu = j["mu"];
  if (!mu.is_array() || int(mu.size()) != g.m) {
    throw SchemaError("game: mu must have m rows");
  }
  g.mu.resize(g.m, g.n);
  for (int i = 0; i < g.m; ++i) {
    if (!mu[size_t(i)].is_array() || int(mu[size_t(i)].size()) != g.n) {
      throw SchemaError("game: mu rows must have n entries");
    }
    for (int k = 0; k < g.n; ++k) {
      g.mu(i, k) = get_number(mu[size_t(i)][size_t(k)], "game.mu");
    }
  }
  return g;
}

namespace {

Json pvm_side_to_json(
    const std::vector<std::vector<std::pair<OutcomeTuple, CMat>>>& side) {
  Json out = Json::array();
  for (const auto& pvm : side) {
    Json q = Json::array();
    for (const auto& [t, op] : pvm) {
      Json e;
      e["outcome"] = t.signs;
      e["op"] = matrix_to_json(op);
      q.push_back(std::move(e));
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> pvm_side_from_json(
    const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<std::vector<std::pair<OutcomeTuple, CMat>>> out;
  for (const Json& q : j) {
    if (!q.is_array()) throw SchemaError(where + ": expected question arrays");
    std::vector<std::pair<OutcomeTuple, CMat>> pvm;
    for (const Json& e : q) {
      expect_object_keys(e, {"outcome", "op"}, {}, where);
      OutcomeTuple t;
      for (const Json& s : e["outcome"]) {
        int v = get_int(s, where + ".outcome");
        if (v != 1 && v != -1) {
          throw SchemaError(where + ": outcome signs must be +1 or -1");
        }
        t.signs.push_back(v);
      }
      pvm.push_back({std::move(t), matrix_from_json(e["op"])});
    }
    out.push_back(std::move(pvm));
  }
  return out;
}

}  // namespace

Json strategy_to_json(const GameSpec& g, const Strategy& s) {
  Json j;
  j["schemaVersion"] = 1;
  j["game"] = game_to_json(g);
  j["state"] = state_to_json(s.state);
  j["alice"] = pvm_side_to_json(s.alice);
  j["bob"] = pvm_side_to_json(s.bob);
  return j;
}

std::pair<GameSpec, Strategy> strategy_from_json(const Json& j) {
  expect_keys(j, {"game", "state", "alice", "bob"});
  GameSpec g = game_from_json(j["game"]);
  Strategy s;
  s.state = state_from_json(j["state"]);
  s.alice = pvm_side_from_json(j["alice"], "alice");
  s.bob = pvm_side_from_json(j["bob"], "bob");
  if (int(s.alice.size()) != g.m || int(s.bob.size()) != g.n) {
    throw SchemaError("strategy: PVM families do not match the game shape");
  }
  return {std::move(g), std::move(s)};
}

namespace {

Json pools_to_json(const std::vector<PoolRealization>& pools) {
  Json out = Json::array();
  for (const PoolRealization& p : pools) {
    Json ops = Json::array();
    for (const CMat& e : p.ops) ops.push_back(matrix_to_json(e));
    out.push_back(std::move(ops));
  }
  return out;
}

Json families_to_json(const std::vector<PoolRealization>& pools) {
  Json out = Json::array();
  for (const PoolRealization& p : pools) out.push_back(index_family_to_json(p.family));
  return out;
}

Json reduced_to_json(const std::vector<PoolRealization>& pools) {
  Json out = Json::array();
  for (const PoolRealization& p : pools) {
    Json flags = Json::array();
    for (char r : p.reduced) flags.push_back(int(r));
    out.push_back(std::move(flags));
  }
  return out;
}

}  // namespace

Json index_family_to_json(const IndexSetFamily& f) {
  Json j;
  j["arity"] = f.arity;
  j["target"] = f.target_product;
  j["generation"] = f.generation;
  j["labels"] = f.labels;
  Json signs = Json::array();
  for (const auto& v : f.signs) signs.push_back(v);
  j["signs"] = std::move(signs);
  return j;
}

Json setup_to_json(const OperatorSetup& s) {
  Json j;
  j["schemaVersion"] = 1;
  j["m"] = s.game.m;
  j["n"] = s.game.n;
  j["mu"] = game_to_json(s.game)["mu"];
  j["dims"] = Json::array({s.dim_a, s.dim_b});
  j["rowPools"] = pools_to_json(s.rows);
  j["colPools"] = pools_to_json(s.cols);
  j["rowIndexSets"] = families_to_json(s.rows);
  j["colIndexSets"] = families_to_json(s.cols);
  j["reduced"] =
      Json{{"rows", reduced_to_json(s.rows)}, {"cols", reduced_to_json(s.cols)}};
  return j;
}

OperatorSetup setup_from_json(const Json& j) {
  expect_keys(j, {"m", "n", "mu", "dims", "rowPools", "colPools",
                  "rowIndexSets", "colIndexSets", "reduced"});
  Json game;
  game["m"] = j["m"];
  game["n"] = j["n"];
  game["mu"] = j["mu"];
  GameSpec g = game_from_json(game);
  const Json& dims = j["dims"];
  if (!dims.is_array() || dims.size() != 2) {
    throw SchemaError("setup: dims must be [dimA, dimB]");
  }
  auto read_pools = [](const Json& node, const std::string& where) {
    if (!node.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<std::vector<CMat>> out;
    for (const Json& pool : node) {
      if (!pool.is_array()) throw SchemaError(where + ": expected pool arrays");
      std::vector<CMat> ops;
      for (const Json& op : pool) ops.push_back(matrix_from_json(op));
      out.push_back(std::move(ops));
    }
    return out;
  };
  // index sets and reduced flags are implied by zero blocks; they are
  // accepted (and written) for readability but validated on rebuild
  OperatorSetup s = realize_setup(
      g, get_int(dims[0], "setup.dims"), get_int(dims[1], "setup.dims"),
      read_pools(j["rowPools"], "setup.rowPools"),
      read_pools(j["colPools"], "setup.colPools"));
  return s;
}

Json scenario_to_json(const ParityScenario& s) {
  Json j;
  j["schemaVersion"] = 1;
  j["name"] = s.name;
  Json pools = Json::object();
  for (const auto& [p, labels] : s.pools) pools[p] = labels;
  j["pools"] = std::move(pools);
  Json cons = Json::array();
  for (const auto& con : s.constraints) {
    Json jc = Json::array();
    for (const Term& t : con) {
      Json jt = Json::object();
      for (const auto& [p, claim] : t) {
        Json c;
        c["indices"] = std::vector<std::string>(claim.indices.begin(),
                                                claim.indices.end());
        c["sign"] = claim.sign;
        jt[p] = std::move(c);
      }
      jc.push_back(std::move(jt));
    }
    cons.push_back(std::move(jc));
  }
  j["constraints"] = std::move(cons);
  return j;
}

ParityScenario scenario_from_json(const Json& j) {
  expect_keys(j, {"name", "pools", "constraints"});
  ParityScenario s;
  if (!j["name"].is_string()) throw SchemaError("scenario: name must be a string");
  s.name = j["name"].get<std::string>();
  if (!j["pools"].is_object()) {
    throw SchemaError("scenario: pools must be an object");
  }
  for (const auto& [p, labels] : j["pools"].items()) {
    if (!labels.is_array()) throw SchemaError("scenario: pool " + p);
    std::vector<std::string> ls;
    for (const Json& l : labels) {
      if (!l.is_string()) throw SchemaError("scenario: labels must be strings");
      ls.push_back(l.get<std::string>());
    }
    s.pools[p] = std::move(ls);
  }
  if (!j["constraints"].is_array()) {
    throw SchemaError("scenario: constraints must be an array");
  }
  for (const Json& jc : j["constraints"]) {
    if (!jc.is_array()) throw SchemaError("scenario: constraint must be an array");
    std::vector<Term> con;
    for (const Json& jt : jc) {
      if (!jt.is_object()) throw SchemaError("scenario: term must be an object");
      Term t;
      for (const auto& [p, claim] : jt.items()) {
        expect_object_keys(claim, {"indices", "sign"}, {}, "scenario claim");
        Claim c;
        c.sign = get_int(claim["sign"], "scenario claim sign");
        for (const Json& l : claim["indices"]) {
          if (!l.is_string()) throw SchemaError("scenario: indices must be strings");
          c.indices.insert(l.get<std::string>());
        }
        t[p] = std::move(c);
      }
      con.push_back(std::move(t));
    }
    s.constraints.push_back(std::move(con));
  }
  validate_scenario(s);
  return s;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["schemaVersion"] = 1;
  j["verdict"] = c.verdict == Verdict::Contradiction ? "Contradiction"
                                                     : "NoContradiction";
  j["trace"] = c.trace;
  Json a = Json::object();
  for (const auto& [p, k] : c.assignment) a[p] = k;
  j["assignment"] = std::move(a);
  j["chosenTerms"] = c.chosen_terms;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << j.dump(2) << "\n";
    if (!out) throw Error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move " + tmp + " into place");
  }
}

}  // namespace magicrect
