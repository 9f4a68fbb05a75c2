// mrect: command-line front end. Verdict-style commands exit 0 on a
// positive verdict and 1 on a negative one; malformed input or usage
// exits 2; numerical failures exit 3.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "magicrect/integrate.hpp"
#include "magicrect/serialize.hpp"

namespace {

using namespace magicrect;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Ctx {
  double eps = 1e-9;
  std::string format = "text";
  std::string out_path;
  bool explain = false;

  Tolerance tol() const { return Tolerance{eps}; }
};

void emit(const Ctx& ctx, Json& rep, const std::string& text,
          const std::string& explanation) {
  if (ctx.explain) rep["explanation"] = explanation;
  if (ctx.format == "json") {
    std::cout << rep.dump(2) << "\n";
  } else {
    std::cout << text;
    if (ctx.explain) std::cout << explanation << "\n";
  }
  if (!ctx.out_path.empty()) write_json_file(ctx.out_path, rep);
}

Json new_report(const std::string& command) {
  Json rep;
  rep["schemaVersion"] = 1;
  rep["command"] = command;
  return rep;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::pair<GameSpec, Strategy> read_strategy_file(const std::string& path) {
  return strategy_from_json(read_json_file(path));
}

StateVector read_state_file(const std::string& path) {
  Json j = read_json_file(path);
  expect_keys(j, {"dimA", "dimB", "amplitudes"});
  Json inner;
  inner["dimA"] = j["dimA"];
  inner["dimB"] = j["dimB"];
  inner["amplitudes"] = j["amplitudes"];
  return state_from_json(inner);
}

bool same_game(const GameSpec& a, const GameSpec& b) {
  return a.m == b.m && a.n == b.n &&
         (a.mu - b.mu).cwiseAbs().maxCoeff() <= 1e-12;
}

int cmd_verify(const Ctx& ctx, const std::string& strategy_path) {
  Json rep = new_report("verify");
  auto [g, s] = read_strategy_file(strategy_path);
  rep["m"] = g.m;
  rep["n"] = g.n;
  std::string text;
  try {
    validate_strategy(g, s, ctx.tol());
  } catch (const Error& e) {
    rep["valid"] = false;
    rep["reason"] = e.what();
    text = std::string("invalid strategy: ") + e.what() + "\n";
    emit(ctx, rep, text,
         "The measurements failed a structural check before any value was "
         "computed.");
    return 1;
  }
  double v = game_value(g, s, ctx.tol());
  bool perfect = is_perfect(g, s, ctx.tol());
  rep["valid"] = true;
  rep["value"] = v;
  rep["perfect"] = perfect;
  text = "valid strategy for the " + std::to_string(g.m) + "x" +
         std::to_string(g.n) + " game\nvalue " + num(v) + "\nperfect: " +
         (perfect ? "yes" : "no") + "\n";
  emit(ctx, rep, text,
       "Checks that each question's operators form a complete projective "
       "measurement with the required outcome products, then evaluates the "
       "winning probability; perfect means probability 1.");
  return perfect ? 0 : 1;
}

int cmd_value(const Ctx& ctx, const std::string& strategy_path) {
  Json rep = new_report("value");
  auto [g, s] = read_strategy_file(strategy_path);
  validate_strategy(g, s, ctx.tol());
  double v = game_value(g, s, ctx.tol());
  rep["value"] = v;
  emit(ctx, rep, "value " + num(v) + "\n",
       "Winning probability of the strategy under the game's question "
       "distribution.");
  return 0;
}

int cmd_pqss(const Ctx& ctx, const std::string& setup_path,
             const std::string& state_path) {
  Json rep = new_report("pqss");
  OperatorSetup s = setup_from_json(read_json_file(setup_path));
  CanonicalSpace cs = canonical_space(s, ctx.tol());
  rep["ambient"] = cs.subspace.ambient;
  rep["dimension"] = cs.subspace.dim();
  std::string text = "canonical space dimension " +
                     std::to_string(cs.subspace.dim()) + " (ambient " +
                     std::to_string(cs.subspace.ambient) + ")\n";
  const std::string why =
      "The canonical space is the intersection over all cells of the images "
      "of the cell projectors; a state is a perfect solution exactly when it "
      "lies in this space.";
  if (!state_path.empty()) {
    StateVector psi = read_state_file(state_path);
    MembershipResult mr = membership(cs, psi, ctx.tol());
    rep["member"] = mr.member;
    rep["distance"] = mr.distance;
    text += std::string("state is ") + (mr.member ? "a member" : "not a member") +
            " (distance " + num(mr.distance) + ")\n";
    emit(ctx, rep, text, why);
    return mr.member ? 0 : 1;
  }
  emit(ctx, rep, text, why);
  return cs.subspace.dim() > 0 ? 0 : 1;
}

int cmd_schmidt(const Ctx& ctx, const std::string& strategy_path,
                const std::string& setup_path, const std::string& state_path) {
  Json rep = new_report("schmidt");
  OperatorSetup setup;
  StateVector psi;
  if (!strategy_path.empty()) {
    auto [g, s] = read_strategy_file(strategy_path);
    setup = setup_from_strategy(g, s, ctx.tol());
    psi = s.state;
  } else {
    if (setup_path.empty() || state_path.empty())
      throw UsageError("schmidt needs --strategy or both --setup and --state");
    setup = setup_from_json(read_json_file(setup_path));
    psi = read_state_file(state_path);
  }
  SchmidtAnalysis an;
  try {
    an = schmidt_clusters(psi, setup, ctx.tol());
  } catch (const NotAPQSS& e) {
    rep["member"] = false;
    rep["reason"] = e.what();
    emit(ctx, rep, std::string("not a perfect solution state: ") + e.what() + "\n",
         "The state is outside the canonical space, so no cluster analysis "
         "applies.");
    return 1;
  }
  rep["member"] = true;
  Json clusters = Json::array();
  bool all_ok = true;
  std::string text = std::to_string(an.clusters.size()) + " cluster(s)\n";
  for (size_t k = 0; k < an.clusters.size(); ++k) {
    const SchmidtCluster& c = an.clusters[k];
    Json jc;
    jc["beta"] = c.beta;
    jc["sigma"] = c.sigma;
    jc["rank"] = c.schmidt_rank;
    jc["perfect"] = c.perfect;
    jc["reducedMembershipOk"] = c.reduced_membership_ok;
    Json rows = Json::array();
    for (const auto& row : c.row_configurations) {
      Json r = Json::array();
      for (const OutcomeTuple& t : row) r.push_back(t.signs);
      rows.push_back(std::move(r));
    }
    jc["rowConfigurations"] = std::move(rows);
    jc["effectiveColumns"] = c.effective_columns;
    jc["state"] = state_to_json(c.psi);
    clusters.push_back(std::move(jc));
    all_ok = all_ok && c.perfect && c.reduced_membership_ok;
    text += "cluster " + std::to_string(k) + ": beta " + num(c.beta) +
            ", sigma " + num(c.sigma) + ", rank " +
            std::to_string(c.schmidt_rank) + ", perfect " +
            (c.perfect ? "yes" : "no") + ", reduced space ok " +
            (c.reduced_membership_ok ? "yes" : "no") + "\n";
  }
  rep["clusters"] = std::move(clusters);
  emit(ctx, rep, text,
       "Schmidt modes with equal singular value are grouped; each cluster is "
       "maximally entangled with weight beta = sigma*sqrt(rank) and is itself "
       "a perfect solution of a setup no larger than the input.");
  return all_ok ? 0 : 1;
}

int cmd_certify(const Ctx& ctx, bool list, const std::string& scenario_path,
                const std::string& builtin, int depth, Eigen::Index numeric_dim,
                uint64_t seed, bool decorations) {
  Json rep = new_report("certify");
  if (list) {
    Json names = Json::array();
    std::string text;
    for (const CatalogEntry& e : builtin_scenarios()) {
      Json je;
      je["name"] = e.name;
      je["reconstructed"] = e.reconstructed;
      names.push_back(std::move(je));
      text += e.name + (e.reconstructed ? " (reconstructed)" : "") + "\n";
    }
    rep["builtins"] = std::move(names);
    emit(ctx, rep, text, "Names accepted by --builtin.");
    return 0;
  }
  ParityScenario sc;
  if (!builtin.empty()) {
    bool found = false;
    for (const CatalogEntry& e : builtin_scenarios()) {
      if (e.name == builtin) {
        sc = e.scenario;
        found = true;
        break;
      }
    }
    if (!found)
      throw MalformedScenario("no built-in scenario named " + builtin);
  } else if (!scenario_path.empty()) {
    sc = scenario_from_json(read_json_file(scenario_path));
  } else {
    throw UsageError("certify needs --scenario, --builtin, or --list");
  }
  Certificate cert = certify_scenario(sc, depth);
  rep["name"] = sc.name;
  Json jcert = certificate_to_json(cert);
  jcert.erase("schemaVersion");
  rep["certificate"] = std::move(jcert);
  std::string text =
      sc.name + ": " +
      (cert.verdict == Verdict::Contradiction ? "Contradiction"
                                              : "NoContradiction") +
      "\n" + cert.trace + "\n";
  if (cert.verdict == Verdict::NoContradiction && !cert.assignment.empty()) {
    text += "assignment:";
    for (const auto& [p, k] : cert.assignment) text += " " + p + "=" + k;
    text += "\n";
  }
  if (numeric_dim > 0) {
    const std::map<std::string, std::string>* w =
        (cert.verdict == Verdict::NoContradiction && !cert.assignment.empty())
            ? &cert.assignment
            : nullptr;
    NumericHs nh = numeric_hs(sc, numeric_dim, seed, w, ctx.tol());
    Json jn;
    jn["ambient"] = numeric_dim;
    jn["seed"] = seed;
    jn["dimension"] = nh.hs.dim();
    jn["witnessRealized"] = nh.witness_realized;
    rep["numeric"] = std::move(jn);
    text += "numeric intersection at dimension " + std::to_string(numeric_dim) +
            ", seed " + std::to_string(seed) + ": dim " +
            std::to_string(nh.hs.dim());
    if (w) {
      text += nh.witness_realized ? " (witness vector realized)"
                                  : " (witness vector missed)";
    }
    text += "\n";
  }
  bool agree = true;
  if (decorations) {
    std::vector<ParityScenario> variants = decoration_variants(sc.name);
    for (const ParityScenario& v : variants) {
      Certificate cv = certify_scenario(v, depth);
      agree = agree && cv.verdict == cert.verdict;
    }
    Json jd;
    jd["count"] = variants.size();
    jd["allAgree"] = agree;
    rep["decorations"] = std::move(jd);
    text += std::to_string(variants.size()) + " decoration variant(s), " +
            (agree ? "all verdicts agree" : "VERDICTS DISAGREE") + "\n";
  }
  emit(ctx, rep, text,
       "Support propagation, the product law over constraint subsets, and "
       "conditioning case splits either force the candidate space to {0} "
       "(Contradiction) or yield a satisfying sign assignment.");
  if (!agree) return 1;
  return cert.verdict == Verdict::Contradiction ? 0 : 1;
}

int cmd_nogo_2xn(const Ctx& ctx, int n) {
  Json rep = new_report("nogo-2xn");
  TwoByNResult r = certify_2xn_odd(n);
  rep["n"] = n;
  bool contradiction = r.cert.verdict == Verdict::Contradiction;
  rep["verdict"] = contradiction ? "Contradiction" : "NoContradiction";
  rep["trace"] = r.cert.trace;
  std::string text;
  if (contradiction) {
    Json jc;
    jc["rowGreenParity"] =
        Json::array({r.coloring.row_green_parity[0],
                     r.coloring.row_green_parity[1]});
    Json greens = Json::array();
    for (const auto& g : r.coloring.green) greens.push_back(g);
    jc["green"] = std::move(greens);
    rep["coloring"] = std::move(jc);
    text = "2x" + std::to_string(n) +
           ": no perfect strategy exists (Contradiction)\n" + r.cert.trace +
           "\nrow green parities: " +
           std::to_string(r.coloring.row_green_parity[0]) + ", " +
           std::to_string(r.coloring.row_green_parity[1]) + "\n";
  } else {
    rep["classicalValue"] = r.classical_value;
    rep["alice"] = r.alice_table;
    rep["bob"] = r.bob_table;
    text = "2x" + std::to_string(n) +
           ": a perfect deterministic strategy exists (classical value " +
           num(r.classical_value) + ")\n";
    for (size_t i = 0; i < r.alice_table.size(); ++i) {
      text += "alice row " + std::to_string(i) + ":";
      for (int s : r.alice_table[i]) text += s > 0 ? " +" : " -";
      text += "\n";
    }
    // bob_table is [row][column]; present one line per column question
    for (size_t j = 0; !r.bob_table.empty() && j < r.bob_table[0].size(); ++j) {
      text += "bob col " + std::to_string(j) + ":";
      for (const auto& row : r.bob_table) text += row[j] > 0 ? " +" : " -";
      text += "\n";
    }
  }
  emit(ctx, rep, text,
       "Per column, one term pairs row-0 sign +1 with row-1 sign -1; counting "
       "those green terms per row element forces the product of row-0 parity "
       "operators to +I and of row-1 ones to -I on the candidate space. For "
       "odd n the two products must also agree there, so the space is {0}; "
       "for even n a perfect deterministic table exists instead.");
  return contradiction ? 0 : 1;
}

int cmd_inequality(const Ctx& ctx, const std::string& strategy_path,
                   bool printed_form) {
  Json rep = new_report("inequality");
  auto [g, s] = read_strategy_file(strategy_path);
  InequalityInput in = inequality_from_strategy(g, s, ctx.tol());
  InequalityBreakdown b = inequality_report(in, printed_form, ctx.tol());
  rep["printedForm"] = printed_form;
  rep["correlations"] = b.correlations;
  rep["productsA"] = b.products_a;
  rep["productsB"] = b.products_b;
  rep["total"] = b.total;
  rep["perCell"] = b.per_cell;
  rep["perA"] = b.per_a;
  rep["perB"] = b.per_b;
  std::string text = "correlations " + num(b.correlations) + "\nalice products " +
                     num(b.products_a) + "\nbob products " + num(b.products_b) +
                     "\ntotal " + num(b.total) + "\n";
  emit(ctx, rep, text,
       "Sum of cell correlations, plus Alice's product-term expectations, "
       "minus Bob's. Under the default placement (Alice rows, Bob columns) "
       "perfect strategies of the 3x3 game reach 15.");
  return 0;
}

int cmd_integrate(const Ctx& ctx, const std::vector<std::string>& paths,
                  const std::vector<double>& weights, const std::string& save) {
  Json rep = new_report("integrate");
  if (paths.empty()) throw UsageError("integrate needs at least one --strategy");
  if (weights.size() != paths.size())
    throw UsageError("need exactly one weight per strategy file");
  IntegrationPlan plan;
  for (size_t i = 0; i < paths.size(); ++i) {
    auto [g, s] = read_strategy_file(paths[i]);
    if (i == 0) {
      plan.game = g;
    } else if (!same_game(plan.game, g)) {
      throw GameMismatch("strategy files describe different games");
    }
    plan.inputs.push_back({std::move(s), weights[i]});
  }
  Strategy out = integrate(plan, ctx.tol());
  double v = game_value(plan.game, out, ctx.tol());
  bool perfect = is_perfect(plan.game, out, ctx.tol());
  rep["inputs"] = paths.size();
  rep["weights"] = weights;
  rep["dims"] = Json::array({out.state.dim_a, out.state.dim_b});
  rep["value"] = v;
  rep["perfect"] = perfect;
  std::string text = "combined " + std::to_string(paths.size()) +
                     " strategies on " + std::to_string(out.state.dim_a) + " x " +
                     std::to_string(out.state.dim_b) + "\nvalue " + num(v) +
                     "\nperfect: " + (perfect ? "yes" : "no") + "\n";
  if (!save.empty()) {
    write_json_file(save, strategy_to_json(plan.game, out));
    rep["saved"] = save;
    text += "wrote " + save + "\n";
  }
  emit(ctx, rep, text,
       "Each input occupies one block of a direct sum on both factors; the "
       "shared state is the weighted sum of the embedded states, and one "
       "designated outcome per question absorbs the identity defect so every "
       "measurement stays complete.");
  return perfect ? 0 : 1;
}

int cmd_classical(const Ctx& ctx, int m, int n) {
  Json rep = new_report("classical");
  GameSpec g = GameSpec::uniform(m, n);
  auto [numr, den] = classical_oracle_exact(g);
  double v = classical_oracle(g);
  ClassicalTables t = classical_oracle_tables(g);
  rep["m"] = m;
  rep["n"] = n;
  rep["value"] = v;
  rep["fraction"] = Json::array({numr, den});
  rep["agreements"] = t.agreements;
  rep["alice"] = t.a;
  rep["bob"] = t.b;
  std::string text = "classical value " + std::to_string(numr) + "/" +
                     std::to_string(den) + " = " + num(v) + "\n";
  for (size_t i = 0; i < t.a.size(); ++i) {
    text += "alice row " + std::to_string(i) + ":";
    for (int s : t.a[i]) text += s > 0 ? " +" : " -";
    text += "\n";
  }
  for (size_t j = 0; !t.b.empty() && j < t.b[0].size(); ++j) {
    text += "bob col " + std::to_string(j) + ":";
    for (const auto& row : t.b) text += row[j] > 0 ? " +" : " -";
    text += "\n";
  }
  emit(ctx, rep, text,
       "Exhaustive search over deterministic sign tables obeying the parity "
       "constraints, maximizing the number of agreeing cells.");
  return 0;
}

int cmd_fixtures(const Ctx& ctx, const std::string& dir) {
  Json rep = new_report("fixtures");
  std::filesystem::create_directories(dir);
  auto [setup, strat] = mermin_peres_fixture();
  std::string strategy_path =
      (std::filesystem::path(dir) / "mp_strategy.json").string();
  std::string setup_path =
      (std::filesystem::path(dir) / "mp_setup.json").string();
  write_json_file(strategy_path, strategy_to_json(setup.game, strat));
  write_json_file(setup_path, setup_to_json(setup));
  double v = game_value(setup.game, strat, ctx.tol());
  rep["strategyFile"] = strategy_path;
  rep["setupFile"] = setup_path;
  rep["value"] = v;
  emit(ctx, rep,
       "wrote " + strategy_path + "\nwrote " + setup_path + "\nvalue " + num(v) +
           "\n",
       "The standard two-qubit-pair 3x3 strategy and its maximal operator "
       "setup.");
  return 0;
}

int cmd_index_sets(const Ctx& ctx, int arity) {
  Json rep = new_report("index-sets");
  BijectionReport br = check_recursion_matches_semantics(arity);
  IndexSetFamily rec = build_index_sets(arity, 1);
  rep["arity"] = arity;
  rep["poolSize"] = rec.pool_size();
  Json sets = Json::array();
  std::string text = "arity " + std::to_string(arity) + ", pool size " +
                     std::to_string(rec.pool_size()) + "\n";
  for (int j = 0; j < arity; ++j) {
    std::vector<int> plus = rec.set_of(1, j);
    for (int& k : plus) k += 1;  // 1-based for display
    sets.push_back(plus);
    text += "position " + std::to_string(j) + " plus set {";
    for (size_t i = 0; i < plus.size(); ++i)
      text += (i ? "," : "") + std::to_string(plus[i]);
    text += "}\n";
  }
  rep["plusSets"] = std::move(sets);
  rep["labels"] = rec.labels;
  Json jb;
  jb["ok"] = br.ok;
  jb["mapping"] = br.mapping;
  if (!br.ok) jb["detail"] = br.detail;
  rep["bijection"] = std::move(jb);
  text += std::string("bijection with outcome tuples: ") +
          (br.ok ? "ok" : ("FAILED: " + br.detail)) + "\n";
  emit(ctx, rep, text,
       "The doubling recursion (unprimed copy appends +1; primed copy flips "
       "the first position and appends -1) reproduces exactly the sign "
       "vectors of the valid outcome tuples.");
  return br.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magic rectangle toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Ctx ctx;
  if (const char* env = std::getenv("MAGICRECT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      std::cerr << "MAGICRECT_TOL must be a positive number\n";
      return 2;
    }
    ctx.eps = v;
  }
  app.add_option("--tol", ctx.eps, "numerical tolerance");
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", ctx.out_path, "also write the report to this file");
  app.add_flag("--explain", ctx.explain, "append a prose explanation");

  std::string strategy_path, setup_path, state_path, scenario_path, builtin;
  std::string save_path, out_dir = ".";
  std::vector<std::string> strategy_paths;
  std::vector<double> weights;
  bool printed_form = false, list_builtins = false, decorations = false;
  int depth = 3, nq = 0, arity = 0, gm = 0, gn = 0;
  Eigen::Index numeric_dim = 0;
  uint64_t seed = 0;

  CLI::App* verify = app.add_subcommand(
      "verify", "check a strategy file and report whether it is perfect");
  verify->add_option("--strategy", strategy_path, "strategy file")->required();

  CLI::App* value = app.add_subcommand("value", "winning probability of a strategy");
  value->add_option("--strategy", strategy_path, "strategy file")->required();

  CLI::App* pqss = app.add_subcommand(
      "pqss", "canonical space of perfect solution states of a setup");
  pqss->add_option("--setup", setup_path, "setup file")->required();
  pqss->add_option("--state", state_path, "test this state for membership");

  CLI::App* schmidt = app.add_subcommand(
      "schmidt", "Schmidt cluster analysis of a perfect solution state");
  schmidt->add_option("--strategy", strategy_path, "strategy file");
  CLI::Option* schmidt_setup =
      schmidt->add_option("--setup", setup_path, "setup file");
  CLI::Option* schmidt_state =
      schmidt->add_option("--state", state_path, "state file");
  schmidt_setup->excludes("--strategy");
  schmidt_state->excludes("--strategy");

  CLI::App* certify = app.add_subcommand(
      "certify", "run the parity rules on a scenario");
  certify->add_option("--scenario", scenario_path, "scenario file");
  certify->add_option("--builtin", builtin, "built-in scenario name")
      ->excludes("--scenario");
  certify->add_option("--depth", depth, "conditioning depth limit");
  certify->add_option("--numeric", numeric_dim,
                      "also intersect a seeded numeric realization at this "
                      "ambient dimension");
  certify->add_option("--seed", seed, "seed for --numeric");
  certify->add_flag("--list", list_builtins, "list built-in scenario names");
  certify->add_flag("--decorations", decorations,
                    "also certify every sign decoration of a built-in sketch");

  CLI::App* nogo = app.add_subcommand(
      "nogo-2xn", "decide perfect-strategy existence for the 2xn game");
  nogo->add_option("--n", nq, "number of columns")->required();

  CLI::App* inequality = app.add_subcommand(
      "inequality", "Bell-type rectangle inequality value of a strategy");
  inequality->add_option("--strategy", strategy_path, "strategy file")
      ->required();
  inequality->add_flag("--printed-form", printed_form,
                       "swap the product-term placements");

  CLI::App* integrate = app.add_subcommand(
      "integrate", "combine perfect strategies of one game on a direct sum");
  integrate->add_option("--strategy", strategy_paths, "strategy file (repeat)")
      ->required();
  integrate->add_option("--weights", weights, "one weight per strategy")
      ->required()
      ->delimiter(',');
  integrate->add_option("--save", save_path, "write the combined strategy here");

  CLI::App* classical = app.add_subcommand(
      "classical", "optimal deterministic value of the uniform mxn game");
  classical->add_option("--m", gm, "rows")->required();
  classical->add_option("--n", gn, "columns")->required();

  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "write the built-in 3x3 strategy and setup files");
  fixtures->add_option("--out-dir", out_dir, "target directory");

  CLI::App* index_sets = app.add_subcommand(
      "index-sets", "check the index-set recursion against outcome tuples");
  index_sets->add_option("--arity", arity, "positions per element")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(ctx, strategy_path);
    if (value->parsed()) return cmd_value(ctx, strategy_path);
    if (pqss->parsed()) return cmd_pqss(ctx, setup_path, state_path);
    if (schmidt->parsed())
      return cmd_schmidt(ctx, strategy_path, setup_path, state_path);
    if (certify->parsed())
      return cmd_certify(ctx, list_builtins, scenario_path, builtin, depth,
                         numeric_dim, seed, decorations);
    if (nogo->parsed()) return cmd_nogo_2xn(ctx, nq);
    if (inequality->parsed()) return cmd_inequality(ctx, strategy_path, printed_form);
    if (integrate->parsed())
      return cmd_integrate(ctx, strategy_paths, weights, save_path);
    if (classical->parsed()) return cmd_classical(ctx, gm, gn);
    if (fixtures->parsed()) return cmd_fixtures(ctx, out_dir);
    if (index_sets->parsed()) return cmd_index_sets(ctx, arity);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
