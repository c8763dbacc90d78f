#pragma once

#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "berezin/error.hpp"
#include "berezin/matrix.hpp"

#define EXPECT_ERROR_KIND(stmt, expected)                                   \
  do {                                                                      \
    try {                                                                   \
      (void)(stmt);                                                         \
      ADD_FAILURE() << "no exception from " #stmt;                          \
    } catch (const ::berezin::Error& e_) {                                  \
      EXPECT_EQ(e_.kind(), (expected)) << e_.what();                        \
    }                                                                       \
  } while (0)

namespace berezin::testing {

inline Matrix gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> g(0.0, sigma);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = g(rng);
      m(i, j) = Complex(re, g(rng));
    }
  }
  return m;
}

inline Matrix hermitian(std::size_t n, std::mt19937_64& rng) {
  const Matrix g = gaussian(n, n, rng);
  return hermitian_part(g);
}

inline Matrix psd(std::size_t n, std::mt19937_64& rng, std::size_t rank = 0) {
  const Matrix g = gaussian(rank == 0 ? n : rank, n, rng);
  return hermitian_part(adjoint(g) * g);
}

inline Vector unit_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(n);
  double s = 0.0;
  for (auto& e : v) {
    const double re = g(rng);
    e = Complex(re, g(rng));
    s += std::norm(e);
  }
  for (auto& e : v) e /= std::sqrt(s);
  return v;
}

inline Complex random_disk_point(double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  return std::polar(r, 2.0 * 3.14159265358979323846 * u(rng));
}

inline double max_entry_diff(const Matrix& a, const Matrix& b) { return max_abs_entry(a - b); }

}  // namespace berezin::testing
