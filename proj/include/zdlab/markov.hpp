#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/linalg.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

enum class StationaryMethod { kExactSolve, kCesaroIteration };

const char* to_string(StationaryMethod method);

struct StationaryOptions {
  std::uint64_t max_steps = 10'000'000;
  double tolerance = 1e-14;
  std::size_t max_exact_states = 10'000;
  bool prefer_exact = true;  // false: always iterate
};

struct StationaryResult {
  std::vector<double> rho;
  std::optional<RationalVector> rho_exact;  // set for kExactSolve
  std::vector<double> initial_distribution;
  StationaryMethod method = StationaryMethod::kExactSolve;
  std::size_t closed_classes = 0;
  std::uint64_t iterations = 0;
  double residual = 0.0;  // ||T rho - rho||_inf
};

// Support-graph structure of a column-stochastic matrix.
struct ChainStructure {
  std::vector<std::size_t> component;           // SCC id per state
  std::vector<std::vector<std::size_t>> closed;  // closed SCCs (recurrent classes)
  std::size_t num_components = 0;
  bool irreducible() const noexcept { return num_components == 1; }
};

ChainStructure analyze_chain(const RationalMatrix& transition);

// Stationary distribution reached from `initial`. With a single recurrent
// class the answer is unique and solved exactly on that class; otherwise the
// Cesaro limit from `initial` is computed by iterating (I + T) / 2.
StationaryResult stationary_distribution(const RationalMatrix& transition,
                                         std::span<const Rational> initial,
                                         const StationaryOptions& options = {});

// Point mass on `state`.
RationalVector point_mass(std::size_t size, std::size_t state);

// (1, e_1, ..., e_N) = S^T rho.
RationalVector expected_payoffs(std::span<const Rational> rho, const Game& game);
std::vector<double> expected_payoffs(std::span<const double> rho, const Game& game);
std::vector<double> expected_payoffs(const StationaryResult& result, const Game& game);

// rho^T T~_n(a) for every action a.
RationalVector akin_residuals(std::span<const Rational> rho, const PressDysonMatrix& pd);
std::vector<double> akin_residuals(std::span<const double> rho, const PressDysonMatrix& pd);

// One lazy step p <- (p + T p) / 2 on a sparse row-major copy of T. Exposed
// with a serial twin for testing and benchmarking.
struct SparseRows {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> columns;
  std::vector<double> values;
  std::size_t size() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
};

SparseRows to_sparse_rows(const RationalMatrix& transition);
// Returns ||next - p||_inf.
double lazy_step(const SparseRows& t, std::span<const double> p, std::span<double> next);
double lazy_step_serial(const SparseRows& t, std::span<const double> p, std::span<double> next);

}  // namespace zdlab
