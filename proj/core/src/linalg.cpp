#include "torloop/linalg.hpp"

namespace torloop {

Vector zero_vector(std::size_t n) { return Vector(n); }

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vector& axpy(Vector& y, const CycloScalar& a, const Vector& x) {
  if (a.is_zero()) return y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!x[i].is_zero()) y[i] += a * x[i];
  }
  return y;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloScalar(1);
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const Vector& v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const CycloScalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw AlgebraError("matrix product shape mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const auto& bkj = b(k, j);
        if (!bkj.is_zero()) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw AlgebraError("matrix-vector shape mismatch");
  Vector out(a.rows_);
  for (std::size_t k = 0; k < a.cols_; ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const auto& aik = a(i, k);
      if (!aik.is_zero()) out[i] += aik * v[k];
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix matrix_power(const Matrix& a, std::int64_t e) {
  if (e < 0) return matrix_power(inverse(a), -e);
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Rref rref(Matrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    CycloScalar inv = m(row, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) {
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      CycloScalar f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(r, j) -= f * m(row, j);
      }
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = CycloScalar(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> column_space_basis(const Matrix& m) {
  Rref r = rref(m.transpose());
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < r.pivots.size(); ++i) basis.push_back(r.reduced.row(i));
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  Rref rr = rref(std::move(aug));
  if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.reduced(i, a.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw AlgebraError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = CycloScalar(1);
  }
  Rref rr = rref(std::move(aug));
  if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw AlgebraError("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = rr.reduced(r, n + c);
  return inv;
}

Vector EchelonBasis::reduce(Vector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& c = v[pivots_[i]];
    if (c.is_zero()) continue;
    CycloScalar f = -c;
    axpy(v, f, rows_[i]);
  }
  return v;
}

bool EchelonBasis::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool EchelonBasis::add(const Vector& v) {
  if (v.size() != ambient_) throw AlgebraError("EchelonBasis: vector length mismatch");
  Vector r = reduce(v);
  std::size_t piv = 0;
  while (piv < r.size() && r[piv].is_zero()) ++piv;
  if (piv == r.size()) return false;
  CycloScalar inv = r[piv].inverse();
  for (auto& x : r) {
    if (!x.is_zero()) x *= inv;
  }
  // Keep existing rows reduced at the new pivot so reduce() stays one pass.
  for (auto& row : rows_) {
    if (!row[piv].is_zero()) {
      CycloScalar f = -row[piv];
      axpy(row, f, r);
    }
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

}  // namespace torloop
