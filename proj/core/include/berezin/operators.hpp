#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "berezin/matrix.hpp"

namespace berezin {

/// The last two kinds are not operators: columns of unit vectors and boxes
/// of nonnegative reals in [0, scale_max] (real parts only).
enum class OperatorKind {
  General,
  Hermitian,
  Positive,
  Contraction,
  Unitary,
  NilpotentShift,
  Diagonal,
  UnitVector,
  ScalarBox,
};

std::string_view to_string(OperatorKind kind) noexcept;
OperatorKind operator_kind_from_string(std::string_view name);

struct OperatorRecipe {
  OperatorKind kind = OperatorKind::General;
  std::size_t rows = 2;
  /// 0 means square.
  std::size_t cols = 0;
  double scale_min = 0.5;
  double scale_max = 2.0;

  std::size_t columns() const noexcept { return cols == 0 ? rows : cols; }
};

/// Unprocessed randomness behind one generated operator. Sharpness search
/// perturbs `raw` and realizes it again.
struct OperatorDraw {
  Matrix raw;
  double scale = 1.0;
};

OperatorDraw draw_raw(const OperatorRecipe& recipe, std::mt19937_64& rng);

/// Maps a draw to an operator of the recipe's kind:
///   general      raw scaled to ||.|| = s
///   hermitian    (raw + raw*)/2 scaled to ||.|| = s
///   positive     raw* raw scaled to ||.|| = s
///   contraction  raw scaled to ||.|| = s / scale_max <= 1
///   unitary      Gram-Schmidt on the columns of raw
///   nilpotent    subdiagonal of raw, scaled to ||.|| = s
///   diagonal     diagonal of raw, scaled to ||.|| = s
Matrix realize(const OperatorRecipe& recipe, const OperatorDraw& draw);

Matrix gen_operator(const OperatorRecipe& recipe, std::uint64_t seed);

}  // namespace berezin
