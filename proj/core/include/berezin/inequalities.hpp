#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/blocks.hpp"
#include "berezin/check.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/linalg.hpp"
#include "berezin/matrix.hpp"

namespace berezin {

/// Throws BadParams unless `params` satisfies the hypotheses of the named
/// check (UnknownChecker for an unknown id).
void validate_params(std::string_view check_id, const CheckParams& params);

/// CheckParams with q = p / (p - 1).
CheckParams with_conjugate(CheckParams params, double p);

/// Throws FGProductMismatch unless |f(t) g(t) - t| <= 1e-10 max(1, t) on
/// every t of `spectrum`.
void require_fg_product(const ScalarFunction& f, const ScalarFunction& g, std::span<const double> spectrum);

// ---- single space -------------------------------------------------------

/// ber(A) <= w(A) <= ||A||.
InequalityCheck check_chain_111(const KernelSpace& space, const Matrix& a, const SamplePlan& plan,
                                const CheckParams& params = {}, const RefineConfig& refine = {});

/// ber(A*XB) <= 1/2 ber(B*|X|B + A*|X*|A).
InequalityCheck check_prior_product(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                    const SamplePlan& plan, const CheckParams& params = {},
                                    const RefineConfig& refine = {});

/// ber(AX + sign XA) <= ber^{1/2}(A*A + AA*) ber^{1/2}(X*X + XX*).
InequalityCheck check_prior_commutator(const KernelSpace& space, const Matrix& a, const Matrix& x, int sign,
                                       const SamplePlan& plan, const CheckParams& params = {},
                                       const RefineConfig& refine = {});

/// ber(A*XB + B*YA) <= 2 sqrt(||X|| ||Y||) ber^{1/2}(B*B) ber^{1/2}(AA*).
InequalityCheck check_prior_sandwich(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                     const Matrix& y, const SamplePlan& plan, const CheckParams& params = {},
                                     const RefineConfig& refine = {});

/// ber^r(A*XB) <= ||X||^r ber(1/p (A*A)^{pr/2} + 1/q (B*B)^{qr/2}).
InequalityCheck check_thm_product_young(const KernelSpace& space, const Matrix& a, const Matrix& b,
                                        const Matrix& x, const SamplePlan& plan, const CheckParams& params,
                                        const RefineConfig& refine = {});

/// ber(A*XB) <= 1/2 ber(B*|X|^{2a}B + A*|X*|^{2(1-a)}A).
InequalityCheck check_thm_product_alpha(const KernelSpace& space, const Matrix& a, const Matrix& b,
                                        const Matrix& x, const SamplePlan& plan, const CheckParams& params,
                                        const RefineConfig& refine = {});

/// ber(A*XB + B*YA) <= 1/2 ber(B*|X|^{2a}B + A*|X*|^{2(1-a)}A + A*|Y|^{2a}A + B*|Y*|^{2(1-a)}B).
InequalityCheck check_thm_sym(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                              const Matrix& y, const SamplePlan& plan, const CheckParams& params,
                              const RefineConfig& refine = {});

/// a = 1/2 split: ber(A*XB + B*YA) <= 1/2 ber(B*|X|B + A*|X*|A) + 1/2 ber(A*|Y|A + B*|Y*|B).
InequalityCheck check_sym_split(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                const Matrix& y, const SamplePlan& plan, const CheckParams& params = {},
                                const RefineConfig& refine = {});

/// ber(AB + B*A) <= 1/2 ber(|A| + |A*|) + 1/2 ber(B*(|A| + |A*|)B).
InequalityCheck check_sym_abs(const KernelSpace& space, const Matrix& a, const Matrix& b, const SamplePlan& plan,
                              const CheckParams& params = {}, const RefineConfig& refine = {});

/// A, B >= 0, r >= 2:
/// ber^r(A^a X B^{1-a}) <= ||X||^r (ber(aA^r + (1-a)B^r) - inf eta),
/// eta = r0 (<A^r k,k>^{1/2} - <B^r k,k>^{1/2})^2, r0 = min(a, 1-a).
InequalityCheck check_thm_alpha_power(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                      const SamplePlan& plan, const CheckParams& params,
                                      const RefineConfig& refine = {});

/// A, B >= 0, r >= 2, H = (A^a X B^{1-a} + A^{1-a} X B^a) / 2:
/// ber^r(H) <= ||X||^r/2 ber(A^r + B^r)
///          <= ||X||^r/2 (ber(aA^r + (1-a)B^r) + ber((1-a)A^r + aB^r)).
InequalityCheck check_thm_heinz(const KernelSpace& space, const Matrix& a, const Matrix& b, const Matrix& x,
                                const SamplePlan& plan, const CheckParams& params, const RefineConfig& refine = {});

// ---- scalar and vector layer -------------------------------------------

/// a^a b^{1-a} <= aa + (1-a)b <= (aa^r + (1-a)b^r)^{1/r} and
/// ab <= a^p/p + b^q/q <= (a^{pr}/p + b^{qr}/q)^{1/r}, for every sample.
InequalityCheck check_young_scalar(std::span<const std::pair<double, double>> samples, const CheckParams& params);

/// a^a b^{1-a} <= aa + (1-a)b - r0 (sqrt a - sqrt b)^2.
InequalityCheck check_refined_young(std::span<const std::pair<double, double>> samples, const CheckParams& params);

/// |<Tx,y>|^2 <= <|T|^{2a}x,x><|T*|^{2(1-a)}y,y> and |<Tx,y>| <= ||f(|T|)x|| ||g(|T*|)y||.
InequalityCheck check_mixed_schwarz(const Matrix& t, std::span<const std::pair<Vector, Vector>> samples,
                                    const CheckParams& params, const ScalarFunction& f, const ScalarFunction& g);

/// T >= 0, unit x: <Tx,x>^r <= <T^r x,x> for r >= 1, reversed for 0 < r <= 1.
InequalityCheck check_mccarthy(const Matrix& t, std::span<const Vector> samples, const CheckParams& params);

// ---- direct sums ----------------------------------------------------------

/// T = [[0, B], [C, 0]], f g = id:
/// ber^r(T) <= max{ber(1/p f^{pr}(|C|) + 1/q g^{qr}(|B*|)), ber(1/p f^{pr}(|B|) + 1/q g^{qr}(|C*|))}.
InequalityCheck check_offdiag_fg(const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                                 const ScalarFunction& f, const ScalarFunction& g, const ProductPlan& plan,
                                 const CheckParams& params);

/// f = t^a, g = t^{1-a}, p = q = 2:
/// ber^r(T) <= 1/2 max{ber(|C|^{2ra} + |B*|^{2r(1-a)}), ber(|B|^{2ra} + |C*|^{2r(1-a)})}.
InequalityCheck check_offdiag_power(const DirectSumSpace& space, const Matrix& b, const Matrix& c,
                                    const ProductPlan& plan, const CheckParams& params);

/// ber_p^p(T_1..T_n) <= max{ber(sum a|C_i|^p + (1-a)|B_i*|^p), ber(sum a|B_i|^p + (1-a)|C_i*|^p)}.
InequalityCheck check_tuple_berp(const DirectSumSpace& space, std::span<const std::pair<Matrix, Matrix>> pairs,
                                 const ProductPlan& plan, const CheckParams& params);

/// ber^r(diag(A, D)) <= 1/2 max{ber(|A|^r + |A*|^r), ber(|D|^r + |D*|^r)}.
InequalityCheck check_diag_prop(const DirectSumSpace& space, const Matrix& a, const Matrix& d,
                                const ProductPlan& plan, const CheckParams& params);

/// ber([[A, B], [C, D]]) <= 1/2 max{ber(|C| + |B*|), ber(|B| + |C*|)}
///                        + 1/2 max{ber(|A| + |A*|), ber(|D| + |D*|)};
/// for C = B, D = A on H (+) H also <= 1/2 (ber(|A| + |A*|) + ber(|B| + |B*|)).
InequalityCheck check_full_matrix_cor(const DirectSumSpace& space, const BlockOperator& t, const ProductPlan& plan,
                                      const CheckParams& params = {});

}  // namespace berezin
