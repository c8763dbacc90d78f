#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace berezin {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense complex matrix, row-major. Dimensions are always positive and all
/// entries finite; both are enforced on construction from external data.
class Matrix {
 public:
  /// Zero matrix.
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> values);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scalar);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Complex scalar, Matrix m);
Vector operator*(const Matrix& m, const Vector& x);

/// Conjugate transpose.
Matrix adjoint(const Matrix& m);
/// (M + M*) / 2.
Matrix hermitian_part(const Matrix& m);
double frobenius_norm(const Matrix& m);
double max_abs_entry(const Matrix& m);
bool all_finite(const Matrix& m);

/// Inner product linear in the first argument: sum_i x_i conj(y_i).
Complex inner(const Vector& x, const Vector& y);
double norm(const Vector& x);
/// <M x, x>.
Complex quadratic_form(const Matrix& m, const Vector& x);

/// Copy of column j as a vector.
Vector column(const Matrix& m, std::size_t j);

}  // namespace berezin
