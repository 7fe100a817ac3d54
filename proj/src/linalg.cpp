#include "zdlab/linalg.hpp"

#include <utility>

#include "zdlab/error.hpp"

namespace zdlab {

RationalMatrix RationalMatrix::from_columns(std::span<const RationalVector> columns,
                                            std::size_t rows) {
  RationalMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      fail(ErrorKind::kInvalidInput, "column length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(std::span<const RationalVector> rows,
                                         std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::kInvalidInput, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RationalVector RationalMatrix::operator*(std::span<const Rational> x) const {
  if (x.size() != cols_) fail(ErrorKind::kInvalidInput, "matrix-vector size mismatch");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (x[c] != 0 && (*this)(r, c) != 0) acc += (*this)(r, c) * x[c];
    }
    out[r] = acc;
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorKind::kInvalidInput, "matrix product size mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& right) const {
  if (right.rows_ != rows_) fail(ErrorKind::kInvalidInput, "hstack row mismatch");
  RationalMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
  }
  return out;
}

RationalMatrix RationalMatrix::select_columns(std::span<const std::size_t> columns) const {
  RationalMatrix out(rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < columns.size(); ++j) out(r, j) = (*this)(r, columns[j]);
  }
  return out;
}

EchelonForm reduced_row_echelon(RationalMatrix m) {
  EchelonForm result;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pivot = lead;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(pivot, k), m(lead, k));
    }
    const Rational inv = 1 / m(lead, c);
    for (std::size_t k = c; k < cols; ++k) {
      if (m(lead, k) != 0) m(lead, k) *= inv;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (m(lead, k) != 0) m(r, k) -= factor * m(lead, k);
      }
    }
    result.pivot_columns.push_back(c);
    ++lead;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const RationalMatrix& m) {
  return reduced_row_echelon(m).pivot_columns.size();
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const EchelonForm ef = reduced_row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : ef.pivot_columns) is_pivot[p] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < ef.pivot_columns.size(); ++r) {
      v[ef.pivot_columns[r]] = -ef.reduced(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve_any(const RationalMatrix& a,
                                        std::span<const Rational> b) {
  if (b.size() != a.rows()) fail(ErrorKind::kInvalidInput, "rhs size mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const EchelonForm ef = reduced_row_echelon(std::move(aug));
  if (!ef.pivot_columns.empty() && ef.pivot_columns.back() == a.cols()) {
    return std::nullopt;
  }
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < ef.pivot_columns.size(); ++r) {
    x[ef.pivot_columns[r]] = ef.reduced(r, a.cols());
  }
  return x;
}

RationalVector solve_square(const RationalMatrix& a, std::span<const Rational> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) {
    fail(ErrorKind::kInvalidInput, "solve_square expects a square system");
  }
  // Scale each row of [a | b] to integers.
  std::vector<mpz_class> work(n * (n + 1));
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return work[r * (n + 1) + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class lcm = 1;
    for (std::size_t c = 0; c <= n; ++c) {
      const Rational& x = c < n ? a(r, c) : b[r];
      if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    for (std::size_t c = 0; c <= n; ++c) {
      const Rational& x = c < n ? a(r, c) : b[r];
      at(r, c) = x.get_num() * (lcm / x.get_den());
    }
  }

  mpz_class previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && at(pivot, k) == 0) ++pivot;
    if (pivot == n) fail(ErrorKind::kInvalidInput, "singular linear system");
    if (pivot != k) {
      for (std::size_t c = 0; c <= n; ++c) std::swap(at(pivot, c), at(k, c));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        at(i, j) = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), previous.get_mpz_t());
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }

  RationalVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc(at(ii, n));
    for (std::size_t j = ii + 1; j < n; ++j) {
      if (at(ii, j) != 0) acc -= Rational(at(ii, j)) * x[j];
    }
    x[ii] = acc / Rational(at(ii, ii));
  }
  return x;
}

std::vector<RationalVector> row_basis(std::span<const RationalVector> vectors,
                                      std::size_t dim) {
  if (vectors.empty()) return {};
  const EchelonForm ef = reduced_row_echelon(RationalMatrix::from_rows(vectors, dim));
  std::vector<RationalVector> out;
  for (std::size_t r = 0; r < ef.pivot_columns.size(); ++r) out.push_back(ef.reduced.row(r));
  return out;
}

}  // namespace zdlab
