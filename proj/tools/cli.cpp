#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "zdlab/constructors.hpp"
#include "zdlab/error.hpp"
#include "zdlab/io.hpp"
#include "zdlab/markov.hpp"
#include "zdlab/rng.hpp"
#include "zdlab/search.hpp"
#include "zdlab/sim.hpp"
#include "zdlab/zd.hpp"

#ifndef ZDLAB_VERSION
#define ZDLAB_VERSION "dev"
#endif

namespace zdlab::cli {
namespace {

namespace fs = std::filesystem;

struct Context {
  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  std::string format = "text";
  std::string out_dir;
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Json parameters = Json::object();

  bool json() const { return format == "json"; }

  fs::path output_path(const std::string& name) {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
  }

  void write_output(const std::string& name, const Json& value) {
    const fs::path path = output_path(name);
    save_json_file(path, value);
    outputs.push_back(path.string());
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Rational arg_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    fail(ErrorKind::kInvalidInput, "--" + flag + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// Re-raises errors from one input file with the path prefixed.
template <typename F>
auto with_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw Error(e.kind(), path + ": " + msg);
  }
}

struct Setting {
  Game game;
  MonitoringStructure monitoring;
};

Setting load_setting(Context& ctx, const std::string& game_path, const std::string& monitoring_path) {
  ctx.inputs.push_back(game_path);
  const Json gj = load_json_file(game_path);
  Game game = with_file(game_path, [&] { return game_from_json(gj); });
  if (!monitoring_path.empty()) {
    ctx.inputs.push_back(monitoring_path);
    const Json mj = load_json_file(monitoring_path);
    auto m = with_file(monitoring_path, [&] { return monitoring_from_json(mj, game.space()); });
    return {std::move(game), std::move(m)};
  }
  if (gj.contains("monitoring")) {
    auto m = with_file(game_path, [&] { return monitoring_from_json(gj["monitoring"], game.space()); });
    return {std::move(game), std::move(m)};
  }
  auto m = MonitoringStructure::perfect(game.space());
  return {std::move(game), std::move(m)};
}

std::vector<MemoryOneStrategy> load_strategies(Context& ctx, const std::vector<std::string>& paths,
                                               const Setting& setting) {
  std::vector<MemoryOneStrategy> out;
  std::vector<bool> seen(setting.game.num_players(), false);
  for (const auto& path : paths) {
    ctx.inputs.push_back(path);
    const Json sj = load_json_file(path);
    auto s = with_file(path, [&] {
      auto st = strategy_from_json(sj, setting.game.space(), setting.monitoring);
      if (sj.contains("signals") && sj["signals"] != Json(setting.monitoring.signals())) {
        fail(ErrorKind::kInvalidInput, "strategy.signals: do not match the monitoring structure");
      }
      return st;
    });
    if (seen[s.player()]) {
      fail(ErrorKind::kInvalidInput, path + ": second strategy for player " + std::to_string(s.player() + 1));
    }
    seen[s.player()] = true;
    out.push_back(std::move(s));
  }
  return out;
}

ActionProfile parse_profile(const std::string& flag, const std::string& text, const StateSpace& space) {
  const auto parts = split(text, ',');
  if (parts.size() != space.num_players()) {
    fail(ErrorKind::kInvalidInput, "--" + flag + ": expected one action per player");
  }
  ActionProfile profile;
  for (std::size_t n = 0; n < parts.size(); ++n) {
    std::size_t a = 0;
    try {
      a = std::stoul(parts[n]);
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidInput, "--" + flag + ": '" + parts[n] + "' is not an action");
    }
    if (a < 1 || a > space.action_count(n)) {
      fail(ErrorKind::kInvalidInput, "--" + flag + ": action " + parts[n] + " out of range for player " +
                                         std::to_string(n + 1));
    }
    profile.push_back(a - 1);
  }
  return profile;
}

std::string relation_list(const ZdCertificate& cert) {
  std::string out;
  for (const auto& r : cert.relations) out += ", " + describe(r);
  if (cert.nonunique()) {
    out += " (modulo";
    for (std::size_t i = 0; i < cert.structural.size(); ++i) {
      out += (i ? ", " : " ") + describe(cert.structural[i]);
    }
    out += ")";
  }
  return out;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string game;
  std::string monitoring;
  std::vector<std::string> strategies;
  std::string initial;
};

int cmd_analyze(Context& ctx, const AnalyzeArgs& a) {
  const Setting setting = load_setting(ctx, a.game, a.monitoring);
  const auto strategies = load_strategies(ctx, a.strategies, setting);
  const StateSpace& space = setting.game.space();

  Json report;
  Json players = Json::array();
  std::vector<PressDysonMatrix> pds;
  for (const auto& s : strategies) {
    pds.push_back(press_dyson(s, setting.monitoring, space));
    const auto cert = detect_zd(pds.back(), setting.game);
    Json pj;
    pj["player"] = s.player() + 1;
    pj["zd"] = cert.has_value();
    pj["dimension"] = cert ? cert->dimension : 0;
    if (cert) {
      pj["certificate"] = to_json(*cert);
      if (!ctx.out_dir.empty()) {
        ctx.write_output("certificate_" + std::to_string(s.player() + 1) + ".json", to_json(*cert));
      }
    }
    if (!ctx.json()) {
      ctx.out << "player " << s.player() + 1 << ": ";
      if (cert) {
        ctx.out << "ZD, dim " << cert->dimension << relation_list(*cert) << "\n";
      } else {
        ctx.out << "not ZD\n";
      }
    }
    players.push_back(pj);
  }
  report["players"] = players;

  if (strategies.size() == setting.game.num_players()) {
    const RationalMatrix t = assemble_transition(strategies, setting.monitoring, space);
    RationalVector initial;
    if (a.initial.empty()) {
      initial.assign(space.size(), Rational(1, space.size()));
    } else {
      initial = point_mass(space.size(), space.index(parse_profile("initial", a.initial, space)));
    }
    const StationaryResult st = stationary_distribution(t, initial);
    report["stationary"] = to_json(st);
    Json payoffs = Json::array();
    Json residuals = Json::array();
    if (st.rho_exact) {
      const auto e = expected_payoffs(*st.rho_exact, setting.game);
      for (std::size_t n = 1; n < e.size(); ++n) payoffs.push_back(to_string(e[n]));
      for (std::size_t i = 0; i < pds.size(); ++i) {
        Json rj;
        rj["player"] = strategies[i].player() + 1;
        rj["residuals"] = to_json(akin_residuals(*st.rho_exact, pds[i]));
        residuals.push_back(rj);
      }
    } else {
      const auto e = expected_payoffs(st, setting.game);
      for (std::size_t n = 1; n < e.size(); ++n) payoffs.push_back(e[n]);
      for (std::size_t i = 0; i < pds.size(); ++i) {
        Json rj;
        rj["player"] = strategies[i].player() + 1;
        rj["residuals"] = akin_residuals(st.rho, pds[i]);
        residuals.push_back(rj);
      }
    }
    report["expected_payoffs"] = payoffs;
    report["akin_residuals"] = residuals;
    if (!ctx.json()) {
      ctx.out << "stationary: " << to_string(st.method) << ", " << st.closed_classes
              << " closed class" << (st.closed_classes == 1 ? "" : "es") << "\n";
      ctx.out << "expected payoffs:";
      const auto approx = expected_payoffs(st, setting.game);
      for (std::size_t n = 0; n + 1 < approx.size(); ++n) {
        ctx.out << (n ? ", " : " ") << "e" << n + 1 << " = ";
        if (st.rho_exact) {
          ctx.out << payoffs[n].get<std::string>() << " (" << fmt(approx[n + 1]) << ")";
        } else {
          ctx.out << fmt(approx[n + 1]);
        }
      }
      ctx.out << "\n";
      for (const auto& rj : residuals) {
        double worst = 0.0;
        for (const auto& v : rj["residuals"]) {
          const double x = v.is_string() ? to_double(parse_rational(v.get<std::string>())) : v.get<double>();
          worst = std::max(worst, std::abs(x));
        }
        ctx.out << "akin residual, player " << rj["player"].get<std::size_t>() << ": max |r| = " << fmt(worst)
                << "\n";
      }
    }
  }
  if (!ctx.out_dir.empty()) ctx.write_output("analysis.json", report);
  if (ctx.json()) ctx.out << report.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- check

int cmd_check(Context& ctx, const std::vector<std::string>& paths) {
  if (paths.empty()) fail(ErrorKind::kInvalidInput, "check needs at least one certificate");
  std::vector<ZdCertificate> certs;
  for (const auto& path : paths) {
    ctx.inputs.push_back(path);
    const Json cj = load_json_file(path);
    certs.push_back(with_file(path, [&] { return certificate_from_json(cj); }));
  }
  const std::size_t players = certs.front().relations.front().num_players();
  for (std::size_t i = 0; i < certs.size(); ++i) {
    if (certs[i].relations.front().num_players() != players) {
      fail(ErrorKind::kInvalidInput, paths[i] + ": certificates disagree on the number of players");
    }
  }
  const auto relations = collect_relations(certs);
  const ConsistencySystem system = consistency_check(relations, players);

  Json report;
  report["consistency"] = to_json(system);
  const bool have_bases = std::all_of(certs.begin(), certs.end(), [](const ZdCertificate& c) {
    return c.basis.size() == c.dimension;
  });
  std::optional<IndependenceResult> indep;
  if (have_bases) {
    indep = independence_check(certs);
    report["independence"] = to_json(*indep);
  }

  if (ctx.json()) {
    ctx.out << report.dump(2) << "\n";
  } else {
    if (system.consistent) {
      ctx.out << "consistent: E = (";
      for (std::size_t n = 0; n < system.particular->size(); ++n) {
        ctx.out << (n ? ", " : "") << to_string((*system.particular)[n]);
      }
      ctx.out << ")";
      for (std::size_t k = 0; k < system.directions.size(); ++k) {
        ctx.out << " + t" << k + 1 << " (";
        for (std::size_t n = 0; n < system.directions[k].size(); ++n) {
          ctx.out << (n ? ", " : "") << to_string(system.directions[k][n]);
        }
        ctx.out << ")";
      }
      ctx.out << (system.directions.empty() ? ", unique point\n" : "\n");
    } else {
      ctx.out << "inconsistent: E is empty\n";
    }
    if (!indep) {
      ctx.out << "independence: not evaluated (certificate without basis)\n";
    } else if (indep->independent) {
      ctx.out << "independent\n";
    } else {
      ctx.out << "dependent:";
      for (std::size_t i = 0; i < indep->players.size(); ++i) {
        ctx.out << (i ? " +" : "") << " w" << indep->players[i] + 1 << "(";
        for (std::size_t j = 0; j < indep->vectors[i].size(); ++j) {
          ctx.out << (j ? ", " : "") << to_string(indep->vectors[i][j]);
        }
        ctx.out << ")";
      }
      ctx.out << " = 0\n";
    }
  }
  if (!ctx.out_dir.empty()) ctx.write_output("check.json", report);
  return kOk;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string family;
  std::map<std::string, std::string> values;
  std::size_t player = 1;
};

int cmd_construct(Context& ctx, const ConstructArgs& a) {
  auto get = [&](const std::string& name) { return arg_rational(name, a.values.at(name)); };
  for (const auto& [k, v] : a.values) {
    if (!v.empty()) ctx.parameters[k] = v;
  }
  std::optional<Game> game;
  std::optional<Construction> c;
  if (a.family == "tft") {
    game = prisoners_dilemma(get("R"), get("S"), get("T"), get("P"));
    if (a.player < 1 || a.player > 2) fail(ErrorKind::kInvalidInput, "--player: must be 1 or 2");
    c = make_tit_for_tat(*game, a.player - 1);
  } else if (a.family == "equalizer-imperfect") {
    game = prisoners_dilemma(get("R"), get("S"), get("T"), get("P"));
    c = make_equalizer_imperfect(*game, get("w"), {get("beta"), get("gamma")});
  } else if (a.family == "controller") {
    const ControllerParams p{get("p"), get("q"), get("pp"), get("qp")};
    game = two_reward_game(get("r1"), get("r2"));
    c = make_simultaneous_controller(get("r1"), get("r2"), p);
  } else if (a.family == "controller-imperfect") {
    const ControllerParams p{get("p"), get("q"), get("pp"), get("qp")};
    game = two_reward_game(get("r1"), get("r2"));
    c = make_simultaneous_controller_imperfect(get("r1"), get("r2"), get("w"), p);
  } else {
    const ControllerParams p{get("p"), get("q"), get("pp"), get("qp")};
    game = zero_sum_reward_game(get("r"));
    c = make_zero_sum_controller(get("r"), p);
  }

  Json bundle;
  bundle["family"] = a.family;
  bundle["game"] = to_json(*game);
  bundle["monitoring"] = to_json(c->monitoring);
  bundle["strategy"] = to_json(c->strategy, c->monitoring);
  bundle["certificate"] = to_json(c->certificate);
  if (!ctx.out_dir.empty()) {
    Json g = to_json(*game);
    g["monitoring"] = to_json(c->monitoring);
    ctx.write_output("game.json", g);
    ctx.write_output("strategy.json", bundle["strategy"]);
    ctx.write_output("certificate.json", bundle["certificate"]);
  }
  if (ctx.json()) {
    ctx.out << bundle.dump(2) << "\n";
    return kOk;
  }
  const auto& st = c->strategy;
  const auto& signals = c->monitoring.signals();
  ctx.out << a.family << ": player " << st.player() + 1 << "\n";
  for (std::size_t prev = 0; prev < st.num_actions(); ++prev) {
    for (std::size_t tau = 0; tau < st.num_signals(); ++tau) {
      if (c->monitoring.is_perfect() && game->space().action_of(tau, st.player()) != prev) continue;
      ctx.out << "  T^(.|" << prev + 1 << "," << signals[tau] << ") =";
      for (const auto& x : st.distribution(prev, tau)) ctx.out << " " << to_string(x);
      ctx.out << "\n";
    }
  }
  ctx.out << "enforces" << relation_list(c->certificate).substr(1) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string game;
  std::string monitoring;
  std::vector<std::string> strategies;
  std::uint64_t steps = 100'000;
  std::uint64_t seed = 0;
  std::uint64_t runs = 1;
  std::uint64_t record_every = 1000;
  std::string initial;
  bool initial_uniform = false;
  std::string csv;
};

int cmd_simulate(Context& ctx, const SimulateArgs& a) {
  const Setting setting = load_setting(ctx, a.game, a.monitoring);
  const auto strategies = load_strategies(ctx, a.strategies, setting);
  const StateSpace& space = setting.game.space();
  if (a.steps < 1) fail(ErrorKind::kInvalidInput, "--steps: must be >= 1");
  if (a.runs < 1) fail(ErrorKind::kInvalidInput, "--runs: must be >= 1");
  if (a.record_every < 1) fail(ErrorKind::kInvalidInput, "--record-every: must be >= 1");

  InitialCondition initial;
  Json initial_echo;
  if (a.initial_uniform) {
    ProductDistribution d;
    for (std::size_t n = 0; n < space.num_players(); ++n) {
      d.marginals.emplace_back(space.action_count(n), Rational(1, space.action_count(n)));
    }
    initial = d;
    initial_echo = "uniform";
  } else {
    initial = a.initial.empty() ? ActionProfile(space.num_players(), 0)
                                : parse_profile("initial", a.initial, space);
    Json p = Json::array();
    for (auto x : std::get<ActionProfile>(initial)) p.push_back(x + 1);
    initial_echo = p;
  }
  std::vector<EpisodeConfig> configs;
  for (std::uint64_t r = 0; r < a.runs; ++r) {
    configs.push_back({a.steps, a.seed + r, initial, a.record_every});
  }
  const BatchResult batch = run_batch(setting.game, strategies, setting.monitoring, configs);

  std::string csv_path = a.csv;
  if (csv_path.empty() && !ctx.out_dir.empty()) csv_path = ctx.output_path("trajectory.csv").string();
  Json meta;
  meta["rng"] = Xoshiro256::kId;
  meta["seed"] = a.seed;
  meta["runs"] = a.runs;
  meta["steps"] = a.steps;
  meta["record_every"] = a.record_every;
  meta["initial"] = initial_echo;
  meta["final_averages"] = batch.trajectories.front().final_averages();
  if (a.runs > 1) {
    meta["summary"] = {{"mean", batch.summary.mean}, {"stddev", batch.summary.stddev}};
  }
  if (!csv_path.empty()) {
    if (fs::path(csv_path).has_parent_path()) fs::create_directories(fs::path(csv_path).parent_path());
    std::ofstream f(csv_path);
    if (!f) throw std::runtime_error(csv_path + ": cannot write");
    write_csv(f, batch.trajectories.front(), setting.game.num_players());
    f.close();
    ctx.outputs.push_back(csv_path);
    const std::string meta_path = csv_path + ".meta.json";
    meta["csv"] = csv_path;
    save_json_file(meta_path, meta);
    ctx.outputs.push_back(meta_path);
  }
  if (ctx.json()) {
    ctx.out << meta.dump(2) << "\n";
  } else {
    ctx.out << "final averages (seed " << a.seed << ", " << a.steps << " steps):";
    for (double v : batch.trajectories.front().final_averages()) ctx.out << " " << fmt(v);
    ctx.out << "\n";
    if (a.runs > 1) {
      ctx.out << "batch of " << a.runs << ": mean";
      for (double v : batch.summary.mean) ctx.out << " " << fmt(v);
      ctx.out << ", stddev";
      for (double v : batch.summary.stddev) ctx.out << " " << fmt(v);
      ctx.out << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::string game;
  std::string monitoring;
  std::size_t player = 1;
  std::string family = "grid";
  int grid = 2;
  int direction_grid = 0;
  std::vector<std::string> alphas;
  std::size_t max_candidates = 200'000;
};

int cmd_search(Context& ctx, const SearchArgs& a) {
  const Setting setting = load_setting(ctx, a.game, a.monitoring);
  if (a.player < 1 || a.player > setting.game.num_players()) {
    fail(ErrorKind::kInvalidInput, "--player: out of range");
  }
  AlphaFamily family;
  family.kind = parse_alpha_family(a.family);
  family.grid = a.grid;
  for (const auto& text : a.alphas) {
    RationalVector alpha;
    for (const auto& part : split(text, ',')) alpha.push_back(arg_rational("alpha", part));
    family.alphas.push_back(std::move(alpha));
  }
  if (family.kind == AlphaFamilyKind::kExplicit && family.alphas.empty()) {
    fail(ErrorKind::kInvalidInput, "--alpha: the explicit family needs at least one relation");
  }
  SearchOptions options;
  options.direction_grid = a.direction_grid;
  options.max_candidates = a.max_candidates;
  const SearchResult r = existence_search(setting.game, setting.monitoring, a.player - 1, family, options);
  const Json report = to_json(r, setting.monitoring);
  if (!ctx.out_dir.empty()) ctx.write_output("search.json", report);
  if (ctx.json()) {
    ctx.out << report.dump(2) << "\n";
    return kOk;
  }
  ctx.out << to_string(r.status) << " (" << r.candidates << " candidates)\n";
  if (r.status == SearchStatus::kFound) {
    ctx.out << "candidate " << *r.found_index << ": " << describe(LinearRelation{*r.alpha}) << "\n";
    ctx.out << "certificate: dim " << r.certificate->dimension << relation_list(*r.certificate) << "\n";
  }
  for (const auto& p : r.pruned) {
    ctx.out << "pruned " << describe(LinearRelation{p.alpha}) << ":";
    if (p.sign.failed_pairs.empty()) ctx.out << " no pair of distinct actions";
    for (const auto& pair : p.sign.failed_pairs) {
      ctx.out << " (" << pair.max_action + 1 << "," << pair.min_action + 1 << ")";
      if (!pair.violations.empty()) {
        const auto& v = pair.violations.front();
        ctx.out << "[" << setting.game.space().label(v.state) << "]";
      }
    }
    ctx.out << "\n";
  }
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kPrecondition: return kValidation;
    case ErrorKind::kInfeasibleParameters: return kInfeasible;
    case ErrorKind::kResourceLimit: return kResourceLimit;
    case ErrorKind::kNonConvergence: return kFailure;
  }
  return kFailure;
}

void emit_manifest(Context& ctx, int code, const std::string& error) {
  Json m;
  m["command"] = ctx.command;
  m["inputs"] = ctx.inputs;
  m["parameters"] = ctx.parameters;
  m["tool_version"] = ZDLAB_VERSION;
  m["outputs"] = ctx.outputs;
  m["exit_code"] = code;
  if (!error.empty()) m["error"] = error;
  if (!ctx.out_dir.empty()) {
    try {
      save_json_file(ctx.output_path("manifest.json"), m);
      return;
    } catch (const std::exception&) {
    }
  }
  ctx.err << m.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx(out, err);
  ctx.parameters["argv"] = args;

  CLI::App app{"Zero-determinant strategy analysis for repeated games under public monitoring", "zdlab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", ctx.out_dir, "Directory for output files and the run manifest");
  app.add_flag_callback("--version", [&] { throw CLI::CallForVersion(ZDLAB_VERSION, 0); });

  std::function<int()> action;

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "ZD status, certificates and stationary payoffs");
  an->add_option("--game", analyze.game, "Game JSON")->required();
  an->add_option("--monitoring", analyze.monitoring, "Monitoring JSON (default: embedded or perfect)");
  an->add_option("--strategy", analyze.strategies, "Strategy JSON, one per player")->required();
  an->add_option("--initial", analyze.initial, "Initial joint state, e.g. 1,2 (default: uniform)");
  an->callback([&] { action = [&] { return cmd_analyze(ctx, analyze); }; });

  std::vector<std::string> check_paths;
  auto* ch = app.add_subcommand("check", "Consistency and independence of certificates");
  ch->add_option("certificates", check_paths, "Certificate JSON files")->required();
  ch->callback([&] { action = [&] { return cmd_check(ctx, check_paths); }; });

  ConstructArgs construct;
  auto* co = app.add_subcommand("construct", "Closed-form ZD strategies");
  co->require_subcommand(1);
  auto add_family = [&](const std::string& name, const std::string& help,
                        const std::vector<std::string>& params) {
    auto* sub = co->add_subcommand(name, help);
    for (const auto& p : params) {
      sub->add_option("--" + p, construct.values[p], "rational")->required();
    }
    if (name == "tft") sub->add_option("--player", construct.player, "1 or 2");
    sub->callback([&, name] {
      construct.family = name;
      action = [&] { return cmd_construct(ctx, construct); };
    });
  };
  add_family("tft", "Tit-for-tat in the (R,S,T,P) prisoner's dilemma", {"R", "S", "T", "P"});
  add_family("equalizer-imperfect", "Equalizer under two-signal monitoring",
             {"R", "S", "T", "P", "w", "beta", "gamma"});
  add_family("controller", "3x3 simultaneous controller, perfect monitoring",
             {"r1", "r2", "p", "q", "pp", "qp"});
  add_family("controller-imperfect", "3x3 simultaneous controller under y/n monitoring",
             {"r1", "r2", "w", "p", "q", "pp", "qp"});
  add_family("zero-sum-controller", "3x3 zero-sum controller", {"r", "p", "q", "pp", "qp"});

  SimulateArgs simulate;
  auto* si = app.add_subcommand("simulate", "Monte Carlo time-averaged payoffs");
  si->add_option("--game", simulate.game, "Game JSON")->required();
  si->add_option("--monitoring", simulate.monitoring, "Monitoring JSON");
  si->add_option("--strategy", simulate.strategies, "Strategy JSON, one per player")->required();
  si->add_option("--steps", simulate.steps, "Steps per run");
  si->add_option("--seed", simulate.seed, "Seed of the first run");
  si->add_option("--runs", simulate.runs, "Number of runs with seeds seed, seed+1, ...");
  si->add_option("--record-every", simulate.record_every, "CSV row stride");
  auto* init_opt = si->add_option("--initial", simulate.initial, "Initial joint state, e.g. 1,1");
  si->add_flag("--initial-uniform", simulate.initial_uniform, "Uniform product initial distribution")
      ->excludes(init_opt);
  si->add_option("--csv", simulate.csv, "Trajectory CSV path (metadata goes to PATH.meta.json)");
  si->callback([&] { action = [&] { return cmd_simulate(ctx, simulate); }; });

  SearchArgs search;
  auto* se = app.add_subcommand("search", "Search for a ZD strategy over a family of relations");
  se->add_option("--game", search.game, "Game JSON")->required();
  se->add_option("--monitoring", search.monitoring, "Monitoring JSON");
  se->add_option("--player", search.player, "Player, 1-based");
  se->add_option("--family", search.family, "grid | homogeneous | equalizer | explicit");
  se->add_option("--grid", search.grid, "Coefficient bound of the relation grid");
  se->add_option("--direction-grid", search.direction_grid, "Extra coefficient directions bound");
  se->add_option("--alpha", search.alphas, "Explicit relation a0,a1,...,aN");
  se->add_option("--max-candidates", search.max_candidates, "Resource limit");
  se->callback([&] { action = [&] { return cmd_search(ctx, search); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << ZDLAB_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) ctx.command = sub->get_name();
    emit_manifest(ctx, kValidation, e.what());
    return kValidation;
  }

  for (const auto* sub : app.get_subcommands()) {
    ctx.command = sub->get_name();
    for (const auto* inner : sub->get_subcommands()) ctx.command += " " + inner->get_name();
  }
  int code = kFailure;
  std::string error;
  try {
    code = action();
  } catch (const Error& e) {
    error = e.what();
    code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    error = e.what();
    code = kFailure;
  }
  if (!error.empty()) err << "error: " << error << "\n";
  emit_manifest(ctx, code, error);
  return code;
}

}  // namespace zdlab::cli
