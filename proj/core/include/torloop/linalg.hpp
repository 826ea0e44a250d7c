#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torloop/scalar.hpp"

namespace torloop {

using Vector = std::vector<CycloScalar>;

Vector zero_vector(std::size_t n);
bool is_zero(const Vector& v);
Vector& axpy(Vector& y, const CycloScalar& a, const Vector& x);  // y += a x

/// Dense matrix over Q(zeta_M), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CycloScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycloScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);
  Vector row(std::size_t r) const;

  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const CycloScalar& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const CycloScalar& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycloScalar> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix matrix_power(const Matrix& a, std::int64_t e);

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);
std::vector<Vector> nullspace(const Matrix& m);
/// Echelon basis (leading coefficient 1) of the span of the columns.
std::vector<Vector> column_space_basis(const Matrix& m);
std::optional<Vector> solve(const Matrix& a, const Vector& b);
Matrix inverse(const Matrix& m);

/// Incrementally maintained echelon basis of a subspace of F^n.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Adds v; returns true if it enlarged the span.
  bool add(const Vector& v);
  bool contains(const Vector& v) const;
  /// v minus its reduction against the basis (zero iff v is in the span).
  Vector reduce(Vector v) const;
  const std::vector<Vector>& vectors() const { return rows_; }

 private:
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace torloop
