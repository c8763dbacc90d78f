#include "berezin/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "berezin/error.hpp"
#include "berezin/linalg.hpp"

namespace berezin {

namespace {

constexpr std::array<std::pair<OperatorKind, std::string_view>, 9> kNames{{
    {OperatorKind::General, "general"},
    {OperatorKind::Hermitian, "hermitian"},
    {OperatorKind::Positive, "positive"},
    {OperatorKind::Contraction, "contraction"},
    {OperatorKind::Unitary, "unitary"},
    {OperatorKind::NilpotentShift, "nilpotent-shift"},
    {OperatorKind::Diagonal, "diagonal"},
    {OperatorKind::UnitVector, "unit-vector"},
    {OperatorKind::ScalarBox, "scalar-box"},
}};

Matrix scaled_to(Matrix m, double target) {
  const double n = spectral_norm(m);
  if (n == 0.0) return m;
  m *= Complex(target / n);
  return m;
}

Matrix gram_schmidt(const Matrix& raw) {
  const std::size_t n = raw.rows();
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector v = column(raw, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const Vector qk = column(q, k);
        const Complex c = inner(v, qk);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * qk[i];
      }
    }
    double len = norm(v);
    if (len < 1e-8) {
      // degenerate draw: fall back to a basis vector outside the span so far
      for (std::size_t e = 0; e < n && len < 1e-8; ++e) {
        v.assign(n, Complex{});
        v[e] = 1.0;
        for (std::size_t k = 0; k < j; ++k) {
          const Vector qk = column(q, k);
          const Complex c = inner(v, qk);
          for (std::size_t i = 0; i < n; ++i) v[i] -= c * qk[i];
        }
        len = norm(v);
      }
    }
    for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / len;
  }
  return q;
}

}  // namespace

std::string_view to_string(OperatorKind kind) noexcept {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return "?";
}

OperatorKind operator_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw Error(ErrorKind::BadConfig, "unknown operator kind '" + std::string(name) + "'");
}

OperatorDraw draw_raw(const OperatorRecipe& recipe, std::mt19937_64& rng) {
  if (recipe.rows == 0 || !(recipe.scale_min > 0.0) || recipe.scale_max < recipe.scale_min) {
    throw Error(ErrorKind::BadConfig, "invalid operator recipe");
  }
  const std::size_t cols = recipe.columns();
  std::vector<Complex> entries(recipe.rows * cols);
  if (recipe.kind == OperatorKind::ScalarBox) {
    std::uniform_real_distribution<double> box(0.0, recipe.scale_max);
    for (auto& e : entries) e = Complex(box(rng), 0.0);
  } else {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& e : entries) {
      const double re = gauss(rng);
      e = Complex(re, gauss(rng));
    }
  }
  std::uniform_real_distribution<double> scale(recipe.scale_min, recipe.scale_max);
  const double s = scale(rng);
  return {Matrix(recipe.rows, cols, std::move(entries)), s};
}

Matrix realize(const OperatorRecipe& recipe, const OperatorDraw& draw) {
  const Matrix& raw = draw.raw;
  const double s = draw.scale;
  const bool square = raw.rows() == raw.cols();
  auto need_square = [&] {
    if (!square) throw Error(ErrorKind::DimensionMismatch, std::string(to_string(recipe.kind)) + " needs a square draw");
  };
  switch (recipe.kind) {
    case OperatorKind::General:
      return scaled_to(raw, s);
    case OperatorKind::Hermitian:
      need_square();
      return scaled_to(hermitian_part(raw), s);
    case OperatorKind::Positive: {
      need_square();
      Matrix p = adjoint(raw) * raw;
      p = scaled_to(p, s);
      // exact Hermitian symmetry
      return hermitian_part(p);
    }
    case OperatorKind::Contraction:
      return scaled_to(raw, s / recipe.scale_max);
    case OperatorKind::Unitary:
      need_square();
      return gram_schmidt(raw);
    case OperatorKind::NilpotentShift: {
      need_square();
      Matrix m(raw.rows(), raw.cols());
      for (std::size_t i = 1; i < raw.rows(); ++i) m(i, i - 1) = raw(i, i - 1);
      return scaled_to(m, s);
    }
    case OperatorKind::Diagonal: {
      need_square();
      Matrix m(raw.rows(), raw.cols());
      for (std::size_t i = 0; i < raw.rows(); ++i) m(i, i) = raw(i, i);
      return scaled_to(m, s);
    }
    case OperatorKind::UnitVector: {
      // each column separately
      Matrix v = raw;
      for (std::size_t j = 0; j < v.cols(); ++j) {
        double n = 0.0;
        for (std::size_t i = 0; i < v.rows(); ++i) n += std::norm(v(i, j));
        n = std::sqrt(n);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = n == 0.0 ? Complex(i == 0 ? 1.0 : 0.0) : v(i, j) / n;
      }
      return v;
    }
    case OperatorKind::ScalarBox: {
      std::vector<Complex> e(raw.entries().begin(), raw.entries().end());
      for (auto& x : e) x = Complex(std::clamp(x.real(), 0.0, recipe.scale_max), 0.0);
      return Matrix(raw.rows(), raw.cols(), std::move(e));
    }
  }
  return raw;
}

Matrix gen_operator(const OperatorRecipe& recipe, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return realize(recipe, draw_raw(recipe, rng));
}

}  // namespace berezin
