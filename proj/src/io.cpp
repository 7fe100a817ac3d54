#include "zdlab/io.hpp"

#include <fstream>

#include "zdlab/error.hpp"

namespace zdlab {
namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::kInvalidInput, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t index_from_json(const Json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    bad(where, "expected a nonnegative integer");
  }
  return value.get<std::size_t>();
}

std::size_t player_from_json(const Json& obj, const std::string& where) {
  const std::size_t p = index_from_json(field(obj, "player", where), where + ".player");
  if (p == 0) bad(where + ".player", "players are numbered from 1");
  return p - 1;
}

const Json& array_of(const Json& value, std::size_t size, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array");
  if (value.size() != size) {
    bad(where, "expected " + std::to_string(size) + " entries, got " + std::to_string(value.size()));
  }
  return value;
}

Json vectors_to_json(const std::vector<RationalVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json relations_to_json(const std::vector<LinearRelation>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(to_json(r.alpha));
  return out;
}

std::vector<RationalVector> vectors_from_json(const Json& value, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array");
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(rational_vector_from_json(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void require_distribution(const RationalVector& v, const std::string& where) {
  Rational sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_probability(v[i])) bad(where + "[" + std::to_string(i) + "]", "probability outside [0, 1]");
    sum += v[i];
  }
  if (sum != 1) bad(where, "probabilities sum to " + to_string(sum));
}

}  // namespace

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kInvalidInput, path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kInvalidInput, path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << value.dump(2) << '\n';
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

Rational rational_from_json(const Json& value, const std::string& where) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) {
      return value.is_number_unsigned() ? Rational(mpz_class(std::to_string(value.get<unsigned long long>())))
                                        : Rational(mpz_class(std::to_string(value.get<long long>())));
    }
    if (value.is_number_float()) return rational_from_double(value.get<double>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
  bad(where, "expected a rational");
}

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const RationalVector& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

RationalVector rational_vector_from_json(const Json& value, const std::string& where) {
  if (!value.is_array()) bad(where, "expected an array");
  RationalVector out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(rational_from_json(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Game game_from_json(const Json& value) {
  const Json& actions = field(value, "actions", "game");
  if (!actions.is_array() || actions.empty()) bad("actions", "expected a nonempty array");
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    counts.push_back(index_from_json(actions[i], "actions[" + std::to_string(i) + "]"));
  }
  StateSpace space(counts);
  const Json& payoffs = array_of(field(value, "payoffs", "game"), counts.size(), "payoffs");
  std::vector<RationalVector> s;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    const std::string where = "payoffs[" + std::to_string(n) + "]";
    array_of(payoffs[n], space.size(), where);
    s.push_back(rational_vector_from_json(payoffs[n], where));
  }
  return Game(std::move(space), std::move(s));
}

Json to_json(const Game& game) {
  Json out;
  out["actions"] = game.space().action_counts();
  out["payoffs"] = vectors_to_json(game.payoffs());
  return out;
}

MonitoringStructure monitoring_from_json(const Json& value, const StateSpace& space) {
  if (!value.is_object()) bad("monitoring", "expected an object");
  if (value.contains("perfect")) {
    if (!value["perfect"].is_boolean() || !value["perfect"].get<bool>()) {
      bad("monitoring.perfect", "must be true when present");
    }
    return MonitoringStructure::perfect(space);
  }
  const Json& signals = field(value, "signals", "monitoring");
  if (!signals.is_array() || signals.empty()) bad("monitoring.signals", "expected a nonempty array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (!signals[i].is_string()) bad("monitoring.signals[" + std::to_string(i) + "]", "expected a string");
    names.push_back(signals[i].get<std::string>());
  }
  const Json& law = array_of(field(value, "law", "monitoring"), space.size(), "monitoring.law");
  std::vector<RationalVector> rows;
  for (std::size_t s = 0; s < space.size(); ++s) {
    const std::string where = "monitoring.law[" + std::to_string(s) + "]";
    array_of(law[s], names.size(), where);
    rows.push_back(rational_vector_from_json(law[s], where));
    require_distribution(rows.back(), where);
  }
  try {
    return MonitoringStructure(std::move(names), RationalMatrix::from_rows(rows, signals.size()));
  } catch (const Error& e) {
    bad("monitoring", e.what());
  }
}

Json to_json(const MonitoringStructure& monitoring) {
  Json out;
  if (monitoring.is_perfect()) {
    out["perfect"] = true;
    return out;
  }
  out["signals"] = monitoring.signals();
  const RationalMatrix law = monitoring.law();
  Json rows = Json::array();
  for (std::size_t s = 0; s < law.rows(); ++s) rows.push_back(to_json(law.row(s)));
  out["law"] = rows;
  return out;
}

MemoryOneStrategy strategy_from_json(const Json& value, const StateSpace& space,
                                     const MonitoringStructure& monitoring) {
  const std::size_t player = player_from_json(value, "strategy");
  if (player >= space.num_players()) bad("strategy.player", "not a player of the game");
  const std::size_t actions = space.action_count(player);
  const std::size_t signals = monitoring.num_signals();
  try {
    if (value.contains("repeat")) {
      if (!value["repeat"].is_boolean() || !value["repeat"].get<bool>()) {
        bad("strategy.repeat", "must be true when present");
      }
      return MemoryOneStrategy::repeat(player, actions, signals);
    }
    if (value.contains("marginal")) {
      if (!monitoring.is_perfect()) bad("strategy.marginal", "requires perfect monitoring");
      const Json& m = array_of(value["marginal"], space.size(), "strategy.marginal");
      std::vector<RationalVector> rows;
      for (std::size_t s = 0; s < space.size(); ++s) {
        const std::string where = "strategy.marginal[" + std::to_string(s) + "]";
        array_of(m[s], actions, where);
        rows.push_back(rational_vector_from_json(m[s], where));
        require_distribution(rows.back(), where);
      }
      return MemoryOneStrategy::from_state_rows(player, space, rows);
    }
    const Json& t = array_of(field(value, "table", "strategy"), actions, "strategy.table");
    std::vector<Rational> table;
    for (std::size_t prev = 0; prev < actions; ++prev) {
      const std::string wp = "strategy.table[" + std::to_string(prev) + "]";
      array_of(t[prev], signals, wp);
      for (std::size_t tau = 0; tau < signals; ++tau) {
        const std::string where = wp + "[" + std::to_string(tau) + "]";
        array_of(t[prev][tau], actions, where);
        const auto dist = rational_vector_from_json(t[prev][tau], where);
        require_distribution(dist, where);
        table.insert(table.end(), dist.begin(), dist.end());
      }
    }
    return MemoryOneStrategy(player, actions, signals, std::move(table));
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.rfind("strategy", 0) == 0) throw;
    bad("strategy", msg);
  }
}

Json to_json(const MemoryOneStrategy& strategy, const MonitoringStructure& monitoring) {
  Json out;
  out["player"] = strategy.player() + 1;
  Json table = Json::array();
  for (std::size_t prev = 0; prev < strategy.num_actions(); ++prev) {
    Json per_signal = Json::array();
    for (std::size_t tau = 0; tau < strategy.num_signals(); ++tau) {
      const auto d = strategy.distribution(prev, tau);
      per_signal.push_back(to_json(RationalVector(d.begin(), d.end())));
    }
    table.push_back(per_signal);
  }
  out["signals"] = monitoring.signals();
  out["table"] = table;
  return out;
}

Json to_json(const LinearRelation& relation) {
  Json out;
  out["alpha"] = to_json(relation.alpha);
  out["text"] = describe(relation);
  return out;
}

Json to_json(const ZdCertificate& c) {
  Json out;
  out["player"] = c.player + 1;
  out["dimension"] = c.dimension;
  out["relations"] = relations_to_json(c.relations);
  Json text = Json::array();
  for (const auto& r : c.relations) text.push_back(describe(r));
  out["relations_text"] = text;
  out["basis"] = vectors_to_json(c.basis);
  out["witnesses"] = vectors_to_json(c.witnesses);
  out["structural"] = relations_to_json(c.structural);
  out["nonunique"] = c.nonunique();
  return out;
}

ZdCertificate certificate_from_json(const Json& value) {
  ZdCertificate c;
  c.player = player_from_json(value, "certificate");
  const auto rel = vectors_from_json(field(value, "relations", "certificate"), "certificate.relations");
  if (rel.empty()) bad("certificate.relations", "expected at least one relation");
  for (const auto& a : rel) {
    if (a.size() != rel.front().size() || a.size() < 2) {
      bad("certificate.relations", "relations must share a length of N+1 >= 2");
    }
    c.relations.push_back({a});
  }
  c.dimension = c.relations.size();
  if (value.contains("dimension") &&
      index_from_json(value["dimension"], "certificate.dimension") != c.dimension) {
    bad("certificate.dimension", "does not match the number of relations");
  }
  if (value.contains("basis")) c.basis = vectors_from_json(value["basis"], "certificate.basis");
  if (value.contains("witnesses")) {
    c.witnesses = vectors_from_json(value["witnesses"], "certificate.witnesses");
  }
  if (value.contains("structural")) {
    for (auto& a : vectors_from_json(value["structural"], "certificate.structural")) {
      if (a.size() != rel.front().size()) bad("certificate.structural", "wrong relation length");
      c.structural.push_back({std::move(a)});
    }
  }
  if (!c.basis.empty() && c.basis.size() != c.dimension) {
    bad("certificate.basis", "expected one vector per relation");
  }
  return c;
}

Json to_json(const ConsistencySystem& s) {
  Json out;
  out["status"] = s.consistent ? "consistent" : "empty";
  out["rank_a"] = s.rank_a;
  out["rank_augmented"] = s.rank_a_bar;
  if (s.particular) out["particular"] = to_json(*s.particular);
  out["directions"] = vectors_to_json(s.directions);
  return out;
}

Json to_json(const IndependenceResult& r) {
  Json out;
  out["status"] = r.independent ? "independent" : "dependent";
  if (!r.independent) {
    Json w = Json::array();
    for (std::size_t i = 0; i < r.players.size(); ++i) {
      Json item;
      item["player"] = r.players[i] + 1;
      item["coefficients"] = to_json(r.coefficients[i]);
      item["vector"] = to_json(r.vectors[i]);
      w.push_back(item);
    }
    out["witness"] = w;
  }
  return out;
}

Json to_json(const SearchResult& r, const MonitoringStructure& monitoring) {
  Json out;
  out["status"] = to_string(r.status);
  out["candidates"] = r.candidates;
  if (r.status == SearchStatus::kFound) {
    out["candidate_index"] = *r.found_index;
    out["alpha"] = to_json(*r.alpha);
    out["direction"] = to_json(*r.direction);
    out["strategy"] = to_json(*r.strategy, monitoring);
    out["certificate"] = to_json(*r.certificate);
  }
  Json pruned = Json::array();
  for (const auto& p : r.pruned) {
    Json item;
    item["alpha"] = to_json(p.alpha);
    Json pairs = Json::array();
    for (const auto& pair : p.sign.failed_pairs) {
      Json pj;
      pj["max_action"] = pair.max_action + 1;
      pj["min_action"] = pair.min_action + 1;
      Json vs = Json::array();
      for (const auto& v : pair.violations) {
        Json vj;
        vj["state"] = v.state;
        vj["value"] = to_string(v.value);
        vj["required"] = v.required_nonpositive ? "<= 0" : ">= 0";
        vs.push_back(vj);
      }
      pj["violations"] = vs;
      pairs.push_back(pj);
    }
    item["failed_pairs"] = pairs;
    pruned.push_back(item);
  }
  out["pruned"] = pruned;
  return out;
}

Json to_json(const StationaryResult& r) {
  Json out;
  out["method"] = to_string(r.method);
  out["rho"] = r.rho;
  if (r.rho_exact) out["rho_exact"] = to_json(*r.rho_exact);
  out["closed_classes"] = r.closed_classes;
  out["iterations"] = r.iterations;
  out["residual"] = r.residual;
  return out;
}

}  // namespace zdlab
