#include "zdlab/lp.hpp"

#include "zdlab/error.hpp"

namespace zdlab {

std::optional<RationalVector> find_nonnegative_solution(const RationalMatrix& a,
                                                        std::span<const Rational> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) fail(ErrorKind::kInvalidInput, "lp: rhs size mismatch");
  if (m == 0) return RationalVector(n);

  // Tableau columns: n structural, m artificial, then rhs. Row m is the
  // phase-one objective (reduced costs of "minimise sum of artificials").
  const std::size_t width = n + m + 1;
  const std::size_t rhs = n + m;
  RationalMatrix t(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const bool flip = b[r] < 0;
    for (std::size_t c = 0; c < n; ++c) t(r, c) = flip ? Rational(-a(r, c)) : a(r, c);
    t(r, n + r) = 1;
    t(r, rhs) = flip ? Rational(-b[r]) : Rational(b[r]);
    basis[r] = n + r;
  }
  for (std::size_t c = 0; c < width; ++c) {
    if (c >= n && c < rhs) continue;
    Rational sum = 0;
    for (std::size_t r = 0; r < m; ++r) sum += t(r, c);
    t(m, c) = -sum;
  }

  auto pivot_on = [&](std::size_t prow, std::size_t pcol) {
    const Rational inv = 1 / t(prow, pcol);
    for (std::size_t c = 0; c < width; ++c) {
      if (t(prow, c) != 0) t(prow, c) *= inv;
    }
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == prow || t(r, pcol) == 0) continue;
      const Rational factor = t(r, pcol);
      for (std::size_t c = 0; c < width; ++c) {
        if (t(prow, c) != 0) t(r, c) -= factor * t(prow, c);
      }
    }
    basis[prow] = pcol;
  };

  for (;;) {
    // Bland: lowest-index column with negative reduced cost.
    std::size_t entering = width;
    for (std::size_t c = 0; c < rhs; ++c) {
      if (t(m, c) < 0) {
        entering = c;
        break;
      }
    }
    if (entering == width) break;

    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t r = 0; r < m; ++r) {
      if (t(r, entering) <= 0) continue;
      Rational ratio = t(r, rhs) / t(r, entering);
      if (leaving == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so some row always qualifies.
    if (leaving == m) fail(ErrorKind::kInvalidInput, "lp: unbounded phase one");
    pivot_on(leaving, entering);
  }

  if (t(m, rhs) != 0) return std::nullopt;

  RationalVector x(n);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) x[basis[r]] = t(r, rhs);
  }
  return x;
}

}  // namespace zdlab
