#include "zdlab/markov.hpp"

#include <algorithm>
#include <cmath>

#include "zdlab/error.hpp"

namespace zdlab {
namespace {

void require_column_stochastic(const RationalMatrix& t) {
  if (t.rows() != t.cols() || t.rows() == 0) {
    fail(ErrorKind::kInvalidInput, "transition matrix must be square and nonempty");
  }
  for (std::size_t c = 0; c < t.cols(); ++c) {
    Rational sum = 0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t(r, c) < 0) fail(ErrorKind::kInvalidInput, "negative transition probability");
      sum += t(r, c);
    }
    if (sum != 1) {
      fail(ErrorKind::kInvalidInput, "column " + std::to_string(c) + " sums to " + to_string(sum));
    }
  }
}

// Iterative Tarjan on edges prev -> next wherever T(next | prev) > 0.
ChainStructure strongly_connected(const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  ChainStructure out;
  out.component.assign(n, kUnset);
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  std::vector<Frame> call;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_edge < succ[f.node].size()) {
        const std::size_t w = succ[f.node][f.next_edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.num_components;
        } while (w != v);
        ++out.num_components;
      }
    }
  }

  std::vector<bool> leaves(out.num_components, false);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : succ[v]) {
      if (out.component[w] != out.component[v]) leaves[out.component[v]] = true;
    }
  }
  std::vector<std::vector<std::size_t>> members(out.num_components);
  for (std::size_t v = 0; v < n; ++v) members[out.component[v]].push_back(v);
  for (std::size_t c = 0; c < out.num_components; ++c) {
    if (!leaves[c]) out.closed.push_back(std::move(members[c]));
  }
  return out;
}

// Unique stationary law supported on one closed class.
RationalVector solve_on_class(const RationalMatrix& t, const std::vector<std::size_t>& cls) {
  const std::size_t k = cls.size();
  RationalMatrix a(k, k);
  RationalVector b(k);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a(i, j) = t(cls[i], cls[j]);
    a(i, i) -= 1;
  }
  for (std::size_t j = 0; j < k; ++j) a(k - 1, j) = 1;
  b[k - 1] = 1;
  const RationalVector local = solve_square(a, b);
  RationalVector rho(t.rows());
  for (std::size_t i = 0; i < k; ++i) rho[cls[i]] = local[i];
  return rho;
}

double residual_inf(const SparseRows& t, std::span<const double> rho) {
  double worst = 0.0;
  for (std::size_t r = 0; r < t.size(); ++r) {
    double acc = 0.0;
    for (std::size_t k = t.offsets[r]; k < t.offsets[r + 1]; ++k) acc += t.values[k] * rho[t.columns[k]];
    worst = std::max(worst, std::abs(acc - rho[r]));
  }
  return worst;
}

}  // namespace

const char* to_string(StationaryMethod method) {
  return method == StationaryMethod::kExactSolve ? "exact-solve" : "cesaro-iteration";
}

ChainStructure analyze_chain(const RationalMatrix& transition) {
  std::vector<std::vector<std::size_t>> succ(transition.cols());
  for (std::size_t prev = 0; prev < transition.cols(); ++prev) {
    for (std::size_t next = 0; next < transition.rows(); ++next) {
      if (transition(next, prev) != 0) succ[prev].push_back(next);
    }
  }
  return strongly_connected(succ);
}

RationalVector point_mass(std::size_t size, std::size_t state) {
  RationalVector v(size);
  v.at(state) = 1;
  return v;
}

SparseRows to_sparse_rows(const RationalMatrix& transition) {
  SparseRows out;
  out.offsets.push_back(0);
  for (std::size_t r = 0; r < transition.rows(); ++r) {
    for (std::size_t c = 0; c < transition.cols(); ++c) {
      if (transition(r, c) != 0) {
        out.columns.push_back(c);
        out.values.push_back(transition(r, c).get_d());
      }
    }
    out.offsets.push_back(out.columns.size());
  }
  return out;
}

double lazy_step(const SparseRows& t, std::span<const double> p, std::span<double> next) {
  const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(t.size());
  double delta = 0.0;
#pragma omp parallel for reduction(max : delta) schedule(static) if (m >= 4096)
  for (std::ptrdiff_t r = 0; r < m; ++r) {
    double acc = 0.0;
    for (std::size_t k = t.offsets[r]; k < t.offsets[r + 1]; ++k) acc += t.values[k] * p[t.columns[k]];
    next[r] = 0.5 * (p[r] + acc);
    delta = std::max(delta, std::abs(next[r] - p[r]));
  }
  return delta;
}

double lazy_step_serial(const SparseRows& t, std::span<const double> p, std::span<double> next) {
  double delta = 0.0;
  for (std::size_t r = 0; r < t.size(); ++r) {
    double acc = 0.0;
    for (std::size_t k = t.offsets[r]; k < t.offsets[r + 1]; ++k) acc += t.values[k] * p[t.columns[k]];
    next[r] = 0.5 * (p[r] + acc);
    delta = std::max(delta, std::abs(next[r] - p[r]));
  }
  return delta;
}

StationaryResult stationary_distribution(const RationalMatrix& transition,
                                         std::span<const Rational> initial,
                                         const StationaryOptions& options) {
  require_column_stochastic(transition);
  const std::size_t m = transition.rows();
  if (initial.size() != m) fail(ErrorKind::kInvalidInput, "initial distribution has wrong length");
  {
    Rational sum = 0;
    for (const auto& p : initial) {
      if (!is_probability(p)) fail(ErrorKind::kInvalidInput, "initial distribution entry outside [0,1]");
      sum += p;
    }
    if (sum != 1) fail(ErrorKind::kInvalidInput, "initial distribution does not sum to 1");
  }

  StationaryResult result;
  result.initial_distribution.reserve(m);
  for (const auto& p : initial) result.initial_distribution.push_back(p.get_d());

  const ChainStructure chain = analyze_chain(transition);
  result.closed_classes = chain.closed.size();

  if (options.prefer_exact && chain.closed.size() == 1) {
    const auto& cls = chain.closed.front();
    if (cls.size() > options.max_exact_states) {
      fail(ErrorKind::kResourceLimit, "recurrent class of " + std::to_string(cls.size()) +
                                          " states exceeds the exact-solve bound");
    }
    RationalVector rho = solve_on_class(transition, cls);
    const RationalVector image = transition * rho;
    if (image != rho) fail(ErrorKind::kInvalidInput, "exact stationary solve failed verification");
    result.method = StationaryMethod::kExactSolve;
    result.rho = to_doubles(rho);
    result.rho_exact = std::move(rho);
    result.residual = 0.0;
    return result;
  }

  const SparseRows sparse = to_sparse_rows(transition);
  std::vector<double> p = result.initial_distribution;
  std::vector<double> next(m);
  double delta = 0.0;
  std::uint64_t step = 0;
  for (;;) {
    delta = lazy_step(sparse, p, next);
    p.swap(next);
    ++step;
    if (delta <= options.tolerance) break;
    if (step >= options.max_steps) {
      throw NonConvergenceError("Cesaro iteration did not converge within " +
                                    std::to_string(options.max_steps) + " steps",
                                delta);
    }
  }
  result.method = StationaryMethod::kCesaroIteration;
  result.iterations = step;
  result.rho = std::move(p);
  result.residual = residual_inf(sparse, result.rho);
  return result;
}

RationalVector expected_payoffs(std::span<const Rational> rho, const Game& game) {
  if (rho.size() != game.num_states()) fail(ErrorKind::kInvalidInput, "distribution length mismatch");
  RationalVector e(game.num_players() + 1);
  for (std::size_t s = 0; s < rho.size(); ++s) {
    if (rho[s] == 0) continue;
    e[0] += rho[s];
    for (std::size_t n = 0; n < game.num_players(); ++n) e[n + 1] += rho[s] * game.payoff(n)[s];
  }
  return e;
}

std::vector<double> expected_payoffs(std::span<const double> rho, const Game& game) {
  if (rho.size() != game.num_states()) fail(ErrorKind::kInvalidInput, "distribution length mismatch");
  std::vector<double> e(game.num_players() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t n = 0; n < game.num_players(); ++n) {
    const auto& s = game.payoff(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) acc += rho[i] * s[i].get_d();
    e[n + 1] = acc;
  }
  return e;
}

std::vector<double> expected_payoffs(const StationaryResult& result, const Game& game) {
  if (result.rho_exact) return to_doubles(expected_payoffs(*result.rho_exact, game));
  return expected_payoffs(result.rho, game);
}

RationalVector akin_residuals(std::span<const Rational> rho, const PressDysonMatrix& pd) {
  if (rho.size() != pd.matrix.rows()) fail(ErrorKind::kInvalidInput, "distribution length mismatch");
  RationalVector out(pd.matrix.cols());
  for (std::size_t s = 0; s < rho.size(); ++s) {
    if (rho[s] == 0) continue;
    for (std::size_t a = 0; a < pd.matrix.cols(); ++a) {
      if (pd.matrix(s, a) != 0) out[a] += rho[s] * pd.matrix(s, a);
    }
  }
  return out;
}

std::vector<double> akin_residuals(std::span<const double> rho, const PressDysonMatrix& pd) {
  if (rho.size() != pd.matrix.rows()) fail(ErrorKind::kInvalidInput, "distribution length mismatch");
  std::vector<double> out(pd.matrix.cols(), 0.0);
  for (std::size_t s = 0; s < rho.size(); ++s) {
    for (std::size_t a = 0; a < pd.matrix.cols(); ++a) out[a] += rho[s] * pd.matrix(s, a).get_d();
  }
  return out;
}

}  // namespace zdlab
