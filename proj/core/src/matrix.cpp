#include "berezin/matrix.hpp"

#include <cmath>
#include <string>

#include "berezin/error.hpp"

namespace berezin {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::BadMatrix, "matrix dimensions must be positive, got " +
                                          std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  require_positive(rows, cols);
  entries_.assign(rows * cols, Complex{});
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_positive(rows, cols);
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::BadMatrix, "expected " + std::to_string(rows * cols) + " entries, got " +
                                          std::to_string(entries_.size()));
  }
  if (!all_finite(*this)) throw Error(ErrorKind::BadMatrix, "non-finite entry");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  require_positive(rows_, cols_);
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::BadMatrix, "ragged initializer list");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (!all_finite(*this)) throw Error(ErrorKind::BadMatrix, "non-finite entry");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Complex scalar, Matrix m) { return m *= scalar; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator*: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                    std::to_string(rhs.rows()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vector operator*(const Matrix& m, const Vector& x) {
  if (m.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector: " + std::to_string(m.cols()) +
                                                  " columns vs vector of " +
                                                  std::to_string(x.size()));
  }
  Vector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix adjoint(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

Matrix hermitian_part(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "hermitian_part of non-square");
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return out;
}

double frobenius_norm(const Matrix& m) {
  double acc = 0.0;
  for (const auto& e : m.entries()) acc += std::norm(e);
  return std::sqrt(acc);
}

double max_abs_entry(const Matrix& m) {
  double best = 0.0;
  for (const auto& e : m.entries()) best = std::max(best, std::abs(e));
  return best;
}

bool all_finite(const Matrix& m) {
  for (const auto& e : m.entries())
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

Complex inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "inner: length mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

double norm(const Vector& x) {
  double acc = 0.0;
  for (const auto& e : x) acc += std::norm(e);
  return std::sqrt(acc);
}

Complex quadratic_form(const Matrix& m, const Vector& x) { return inner(m * x, x); }

Vector column(const Matrix& m, std::size_t j) {
  Vector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

}  // namespace berezin
