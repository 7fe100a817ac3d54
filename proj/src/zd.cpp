#include "zdlab/zd.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "zdlab/error.hpp"

namespace zdlab {
namespace {

// Payoff coefficients first, then the constant term.
std::vector<std::size_t> payoff_first_order(std::size_t players) {
  std::vector<std::size_t> order;
  for (std::size_t n = 1; n <= players; ++n) order.push_back(n);
  order.push_back(0);
  return order;
}

RationalVector permute(std::span<const Rational> v, std::span<const std::size_t> order) {
  RationalVector out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = v[order[i]];
  return out;
}

RationalVector unpermute(std::span<const Rational> v, std::span<const std::size_t> order) {
  RationalVector out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = v[i];
  return out;
}

// ker S rows with one pivot each, chosen as late as possible in payoff-first
// order, so that reducing by them keeps the leading payoff coefficients.
struct KernelReducer {
  std::vector<RationalVector> rows;
  std::vector<std::size_t> pivots;

  KernelReducer(const Game& game) {
    const auto ker = nullspace(game.payoff_matrix());
    if (ker.empty()) return;
    auto order = payoff_first_order(game.num_players());
    std::reverse(order.begin(), order.end());
    std::vector<RationalVector> permuted;
    for (const auto& k : ker) permuted.push_back(permute(k, order));
    const EchelonForm ef = reduced_row_echelon(RationalMatrix::from_rows(permuted, order.size()));
    for (std::size_t r = 0; r < ef.pivot_columns.size(); ++r) {
      rows.push_back(unpermute(ef.reduced.row(r), order));
      pivots.push_back(order[ef.pivot_columns[r]]);
    }
  }

  void reduce(RationalVector& alpha) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational f = alpha[pivots[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < alpha.size(); ++j) alpha[j] -= f * rows[i][j];
    }
  }
};

std::string format_term(const Rational& coeff, std::size_t player, bool first) {
  std::string out;
  Rational mag = abs(coeff);
  if (first) {
    if (coeff < 0) out += "-";
  } else {
    out += coeff < 0 ? " - " : " + ";
  }
  if (mag != 1) out += to_string(mag) + " ";
  out += "e" + std::to_string(player);
  return out;
}

}  // namespace

std::string describe(const LinearRelation& relation) {
  const auto& a = relation.alpha;
  std::size_t lead = 0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    if (a[n] != 0) {
      lead = n;
      break;
    }
  }
  if (lead == 0) return a.empty() || a[0] == 0 ? "0 = 0" : "1 = 0";
  const Rational scale = 1 / a[lead];
  std::string out;
  bool first = true;
  for (std::size_t n = 1; n < a.size(); ++n) {
    if (a[n] == 0) continue;
    out += format_term(a[n] * scale, n, first);
    first = false;
  }
  Rational rhs = -a[0] * scale;
  out += " = " + to_string(rhs);
  return out;
}

std::vector<LinearRelation> canonical_relations(std::span<const RationalVector> alphas,
                                                const Game& game) {
  const std::size_t width = game.num_players() + 1;
  const KernelReducer reducer(game);
  const auto order = payoff_first_order(game.num_players());
  std::vector<RationalVector> rows;
  for (RationalVector a : alphas) {
    if (a.size() != width) fail(ErrorKind::kInvalidInput, "relation length does not match the game");
    reducer.reduce(a);
    rows.push_back(permute(a, order));
  }
  std::vector<LinearRelation> out;
  for (const auto& r : row_basis(rows, width)) out.push_back({unpermute(r, order)});
  return out;
}

std::vector<LinearRelation> structural_relations(const Game& game) {
  const auto ker = nullspace(game.payoff_matrix());
  const auto order = payoff_first_order(game.num_players());
  std::vector<RationalVector> rows;
  for (const auto& k : ker) rows.push_back(permute(k, order));
  std::vector<LinearRelation> out;
  for (const auto& r : row_basis(rows, order.size())) out.push_back({unpermute(r, order)});
  return out;
}

ZdCertificate certificate_from_pairs(const PressDysonMatrix& pd, const Game& game,
                                     std::span<const std::pair<RationalVector, RationalVector>> pairs) {
  const RationalMatrix& s = game.payoff_matrix();
  const std::size_t width = game.num_players() + 1;
  const std::size_t actions = pd.num_actions();
  if (pd.matrix.rows() != game.num_states()) {
    fail(ErrorKind::kInvalidInput, "Press-Dyson matrix does not match the game");
  }
  const KernelReducer reducer(game);
  const auto order = payoff_first_order(game.num_players());

  // Rows (alpha in payoff-first order | c). ker T_n rows canonicalise c.
  std::vector<RationalVector> rows;
  for (const auto& [alpha, c] : pairs) {
    if (alpha.size() != width || c.size() != actions) {
      fail(ErrorKind::kInvalidInput, "certificate pair has wrong dimensions");
    }
    if (pd.matrix * c != s * alpha) {
      fail(ErrorKind::kInvalidInput, "witness does not satisfy T_n c = S alpha");
    }
    RationalVector reduced = alpha;
    reducer.reduce(reduced);
    RationalVector row = permute(reduced, order);
    row.insert(row.end(), c.begin(), c.end());
    rows.push_back(std::move(row));
  }
  for (const auto& k : nullspace(pd.matrix)) {
    RationalVector row(width);
    row.insert(row.end(), k.begin(), k.end());
    rows.push_back(std::move(row));
  }

  ZdCertificate cert;
  cert.player = pd.player;
  cert.structural = structural_relations(game);
  if (rows.empty()) return cert;
  const EchelonForm ef = reduced_row_echelon(RationalMatrix::from_rows(rows, width + actions));
  for (std::size_t r = 0; r < ef.pivot_columns.size(); ++r) {
    if (ef.pivot_columns[r] >= width) break;
    const RationalVector row = ef.reduced.row(r);
    RationalVector alpha =
        unpermute(std::span<const Rational>(row.data(), width), order);
    RationalVector c(row.begin() + static_cast<std::ptrdiff_t>(width), row.end());
    RationalVector u = s * alpha;
    if (pd.matrix * c != u) fail(ErrorKind::kInvalidInput, "certificate verification failed");
    cert.relations.push_back({std::move(alpha)});
    cert.basis.push_back(std::move(u));
    cert.witnesses.push_back(std::move(c));
  }
  cert.dimension = cert.relations.size();
  return cert;
}

std::optional<ZdCertificate> detect_zd(const PressDysonMatrix& pd, const Game& game) {
  const RationalMatrix& s = game.payoff_matrix();
  if (pd.matrix.rows() != s.rows()) {
    fail(ErrorKind::kInvalidInput, "Press-Dyson matrix does not match the game");
  }
  const std::size_t actions = pd.num_actions();
  const std::size_t width = s.cols();
  // [T_n | -S] (c; alpha) = 0
  RationalMatrix joint(s.rows(), actions + width);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    for (std::size_t a = 0; a < actions; ++a) joint(r, a) = pd.matrix(r, a);
    for (std::size_t k = 0; k < width; ++k) joint(r, actions + k) = -s(r, k);
  }
  std::vector<std::pair<RationalVector, RationalVector>> pairs;
  for (const auto& v : nullspace(joint)) {
    RationalVector c(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(actions));
    RationalVector alpha(v.begin() + static_cast<std::ptrdiff_t>(actions), v.end());
    pairs.emplace_back(std::move(alpha), std::move(c));
  }
  ZdCertificate cert = certificate_from_pairs(pd, game, pairs);
  if (cert.dimension == 0) return std::nullopt;
  return cert;
}

ConsistencySystem consistency_check(std::span<const LinearRelation> relations,
                                    std::size_t num_players) {
  const std::size_t k = relations.size();
  ConsistencySystem sys;
  sys.a = RationalMatrix(num_players + 1, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& alpha = relations[j].alpha;
    if (alpha.size() != num_players + 1) {
      fail(ErrorKind::kInvalidInput, "relation length does not match player count");
    }
    if (is_zero(alpha)) fail(ErrorKind::kInvalidInput, "zero relation");
    for (std::size_t i = 0; i <= num_players; ++i) sys.a(i, j) = alpha[i];
  }
  // e-bar^T A-bar + b^T = 0  <=>  A-bar^T e-bar = -b
  RationalMatrix a_bar_t(k, num_players);
  RationalVector rhs(k);
  for (std::size_t j = 0; j < k; ++j) {
    rhs[j] = -sys.a(0, j);
    for (std::size_t i = 0; i < num_players; ++i) a_bar_t(j, i) = sys.a(i + 1, j);
  }
  sys.rank_a = rank(sys.a);
  sys.rank_a_bar = rank(a_bar_t);
  sys.consistent = sys.rank_a == sys.rank_a_bar;
  if (sys.consistent) {
    sys.particular = solve_any(a_bar_t, rhs);
    if (!sys.particular) fail(ErrorKind::kInvalidInput, "rank test and solver disagree");
    sys.directions = nullspace(a_bar_t);
  }
  return sys;
}

std::vector<LinearRelation> collect_relations(std::span<const ZdCertificate> certs) {
  std::vector<LinearRelation> out;
  auto add = [&](const LinearRelation& r) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  for (const auto& c : certs) {
    for (const auto& r : c.relations) add(r);
    for (const auto& r : c.structural) add(r);
  }
  return out;
}

IndependenceResult independence_check(std::span<const ZdCertificate> certs) {
  IndependenceResult result;
  if (certs.empty()) return result;
  std::set<std::size_t> seen;
  std::size_t m = 0;
  std::vector<RationalVector> columns;
  std::vector<std::size_t> offsets;
  for (const auto& c : certs) {
    if (!seen.insert(c.player).second) {
      fail(ErrorKind::kInvalidInput, "two certificates for player " + std::to_string(c.player + 1));
    }
    if (c.dimension == 0 || c.basis.size() != c.dimension) {
      fail(ErrorKind::kInvalidInput, "certificate of player " + std::to_string(c.player + 1) +
                                         " has no basis");
    }
    offsets.push_back(columns.size());
    for (const auto& u : c.basis) {
      if (m == 0) m = u.size();
      if (u.size() != m) fail(ErrorKind::kInvalidInput, "certificates come from different games");
      columns.push_back(u);
    }
  }
  offsets.push_back(columns.size());
  const auto null = nullspace(RationalMatrix::from_columns(columns, m));
  if (null.empty()) return result;

  result.independent = false;
  const RationalVector& x = null.front();
  for (std::size_t i = 0; i < certs.size(); ++i) {
    RationalVector coeff(x.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                         x.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
    if (is_zero(coeff)) continue;
    RationalVector w(m);
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      for (std::size_t r = 0; r < m; ++r) w[r] += coeff[j] * certs[i].basis[j][r];
    }
    result.players.push_back(certs[i].player);
    result.coefficients.push_back(std::move(coeff));
    result.vectors.push_back(std::move(w));
  }
  return result;
}

bool check_nonzero_pd(const PressDysonMatrix& pd) {
  for (std::size_t r = 0; r < pd.matrix.rows(); ++r) {
    for (std::size_t c = 0; c < pd.matrix.cols(); ++c) {
      if (pd.matrix(r, c) == 0) return false;
    }
  }
  return pd.matrix.rows() > 0 && pd.matrix.cols() > 0;
}

SignFeasibility sign_feasibility(std::span<const Rational> target, std::size_t player,
                                 const StateSpace& space) {
  if (target.size() != space.size()) fail(ErrorKind::kInvalidInput, "target length mismatch");
  if (player >= space.num_players()) fail(ErrorKind::kInvalidInput, "player out of range");
  SignFeasibility out;
  if (std::all_of(target.begin(), target.end(), [](const Rational& x) { return x == 0; })) {
    out.feasible = true;
    return out;
  }
  const std::size_t actions = space.action_count(player);
  for (std::size_t hi = 0; hi < actions; ++hi) {
    for (std::size_t lo = 0; lo < actions; ++lo) {
      if (hi == lo) continue;
      SignPairCheck check{hi, lo, {}};
      for (std::size_t s = 0; s < space.size(); ++s) {
        const std::size_t own = space.action_of(s, player);
        if (own == hi && target[s] > 0) check.violations.push_back({s, target[s], true});
        if (own == lo && target[s] < 0) check.violations.push_back({s, target[s], false});
      }
      if (check.violations.empty()) {
        out.feasible = true;
        out.witness = std::make_pair(hi, lo);
        out.failed_pairs.clear();
        return out;
      }
      out.failed_pairs.push_back(std::move(check));
    }
  }
  return out;
}

DimensionCheck check_dimension_n_impossibility(const Game& game, const PressDysonMatrix& pd) {
  if (!is_weakly_symmetric(game).weakly_symmetric) {
    fail(ErrorKind::kPrecondition, "game is not weakly symmetric");
  }
  DimensionCheck out;
  out.num_players = game.num_players();
  out.nonzero_pd = check_nonzero_pd(pd);
  out.distinct_payoffs = true;
  for (const auto& s : game.payoffs()) {
    std::set<Rational> values(s.begin(), s.end());
    if (values.size() != s.size()) out.distinct_payoffs = false;
  }
  const auto cert = detect_zd(pd, game);
  out.dimension = cert ? cert->dimension : 0;
  out.violation = (out.nonzero_pd || out.distinct_payoffs) && out.dimension >= out.num_players;
  return out;
}

}  // namespace zdlab
