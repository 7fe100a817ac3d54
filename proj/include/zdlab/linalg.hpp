#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zdlab/rational.hpp"

namespace zdlab {

// Dense row-major matrix over exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_columns(std::span<const RationalVector> columns,
                                     std::size_t rows);
  static RationalMatrix from_rows(std::span<const RationalVector> rows,
                                  std::size_t cols);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RationalVector row(std::size_t r) const;
  RationalVector column(std::size_t c) const;

  RationalVector operator*(std::span<const Rational> x) const;
  RationalMatrix operator*(const RationalMatrix& other) const;

  RationalMatrix transpose() const;
  RationalMatrix hstack(const RationalMatrix& right) const;
  RationalMatrix select_columns(std::span<const std::size_t> columns) const;

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_columns;  // one per nonzero row, increasing
};

// Reduced row echelon form; pivots are taken at the lowest available column.
EchelonForm reduced_row_echelon(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

// Basis of {x : m x = 0}, one vector per free column of the echelon form.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

// Some solution of a x = b, or nullopt when the system is inconsistent.
std::optional<RationalVector> solve_any(const RationalMatrix& a,
                                        std::span<const Rational> b);

// Unique solution of a square nonsingular system by fraction-free (Bareiss)
// elimination over the integers. Throws Error(kInvalidInput) if singular.
RationalVector solve_square(const RationalMatrix& a, std::span<const Rational> b);

// Rows of `vectors` reduced to echelon form; zero rows dropped.
std::vector<RationalVector> row_basis(std::span<const RationalVector> vectors,
                                      std::size_t dim);

}  // namespace zdlab
