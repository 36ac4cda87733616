#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgl {

using Integer = mpz_class;
// mpq_class keeps itself canonical (reduced, positive denominator) after
// every arithmetic operation, so equality is structural.
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Dense row-major integer matrix with arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  /// Columns reordered so that column p of the result is column perm[p] of this.
  IntMatrix permute_columns(const std::vector<std::size_t>& perm) const;

  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Dense rational matrix, used internally for elimination.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit RatMatrix(const IntMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; pivots are the first nonzero entry
/// scanning columns left to right. Returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(const IntMatrix& a);
std::size_t rank(RatMatrix m);

/// Basis of {v : A v = 0}, one vector per non-pivot column (that entry 1,
/// the other free entries 0). Empty when the kernel is trivial.
std::vector<RatVector> nullspace_basis(const IntMatrix& a);
std::vector<RatVector> nullspace_basis(const RatMatrix& a);

/// Exact test of A v = 0. Throws DimensionError on length mismatch.
bool in_nullspace(const IntMatrix& a, const RatVector& v);

RatVector multiply(const IntMatrix& a, const RatVector& v);
IntVector multiply(const IntMatrix& a, const IntVector& v);

/// Some solution of M u = rhs (free variables set to zero), or nullopt.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs);

/// Primitive integer representative of the line through v: gcd 1, first
/// nonzero entry positive. Throws std::invalid_argument for the zero vector.
IntVector integerize(const RatVector& v);

RatVector to_rational(const IntVector& v);
bool is_zero(const RatVector& v);
/// max_i |v_i|; zero for the empty vector.
Rational max_norm(const RatVector& v);
/// Smallest integer >= q.
Integer ceil(const Rational& q);

/// "num/den" with den >= 1 always written.
std::string to_fraction_string(const Rational& q);
/// Accepts "num/den" or a bare integer. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);

/// Text format: "<rows> <cols>" then one line of integers per row.
IntMatrix parse_matrix(std::istream& in);
IntMatrix parse_matrix(const std::string& text);
IntMatrix load_matrix(const std::string& path);
std::string format_matrix(const IntMatrix& a);

}  // namespace rgl
