#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/check.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/matrix.hpp"

namespace berezin {

/// H_1(Omega_1) (+) H_2(Omega_2) with kernels indexed by Omega_1 x Omega_2.
class DirectSumSpace {
 public:
  DirectSumSpace(KernelSpace first, KernelSpace second);

  const KernelSpace& first() const noexcept { return first_; }
  const KernelSpace& second() const noexcept { return second_; }
  std::size_t first_dim() const noexcept { return first_.dim(); }
  std::size_t second_dim() const noexcept { return second_.dim(); }
  std::size_t dim() const noexcept { return first_.dim() + second_.dim(); }

 private:
  KernelSpace first_;
  KernelSpace second_;
};

/// [[A, B], [C, D]] with A: n1 x n1, B: n1 x n2, C: n2 x n1, D: n2 x n2.
struct BlockOperator {
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;

  static BlockOperator diagonal(Matrix a, Matrix d);
  static BlockOperator off_diagonal(Matrix b, Matrix c);

  std::size_t first_dim() const noexcept { return a.rows(); }
  std::size_t second_dim() const noexcept { return d.rows(); }
};

Matrix assemble(const BlockOperator& blk);
BlockOperator split(const Matrix& m, std::size_t first_dim);

/// Normalized [k_{lambda_1}; k_{lambda_2}] together with the mass
/// t = ||k_1||^2 / (||k_1||^2 + ||k_2||^2) carried by the first component.
struct DirectSumKernel {
  Vector unit;
  double mass_first;
};

DirectSumKernel direct_sum_kernel(const DirectSumSpace& space, const Point& first, const Point& second);

struct ProductPlan {
  SamplePlan first;
  SamplePlan second;
  std::size_t max_pairs = 4096;
  std::uint64_t seed = 0;
};

ProductPlan default_product_plan(const DirectSumSpace& space, std::size_t count, std::uint64_t seed = 0);

/// Component sample sets plus the pairs drawn from them. Pairs index into
/// the component sets, so every coordinate of a pair is also a member of
/// the set used for the component Berezin estimates.
struct ProductSample {
  std::vector<Point> first;
  std::vector<Point> second;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  ProductPoint pair_point(std::size_t k) const {
    return {first[pairs[k].first], second[pairs[k].second]};
  }
};

/// Full cross product when |S_1| * |S_2| <= max_pairs, otherwise max_pairs
/// pairs drawn uniformly with the plan's seed.
ProductSample sample_product_domain(const DirectSumSpace& space, const ProductPlan& plan);

/// Symbols of block operators at every pair of a product sample, computed
/// from the component kernels:
///   <T k^, k^> = t A~(l1) + sqrt(t(1-t)) (<B u2, u1> + <C u1, u2>) + (1-t) D~(l2)
/// with u_i the normalized component kernels.
class ProductEvaluator {
 public:
  ProductEvaluator(const DirectSumSpace& space, const ProductSample& sample);

  std::size_t pair_count() const noexcept { return pairs_.size(); }
  double mass(std::size_t k) const { return mass_[k]; }
  ProductPoint pair_point(std::size_t k) const;

  const KernelTable& first_table() const noexcept { return first_; }
  const KernelTable& second_table() const noexcept { return second_; }

  std::vector<Complex> symbols(const BlockOperator& blk) const;
  /// Symbols of diag(P, Q) from component symbol tables.
  std::vector<Complex> diagonal_symbols(const Matrix& p, const Matrix& q) const;

 private:
  KernelTable first_;
  KernelTable second_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<double> mass_;
};

/// ber(diag(A, D)) <= max(ber(A), ber(D)).
InequalityCheck check_block_diag_bound(const DirectSumSpace& space, const Matrix& a, const Matrix& d,
                                       const ProductPlan& plan, const CheckParams& params = {});

/// ber([[0, B], [C, 0]]) <= (||B|| + ||C||) / 2.
InequalityCheck check_block_offdiag_bound(const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                                          const ProductPlan& plan, const CheckParams& params = {});

}  // namespace berezin
