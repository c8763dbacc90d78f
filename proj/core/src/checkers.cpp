#include <algorithm>
#include <random>
#include <string>

#include "berezin/error.hpp"
#include "berezin/harness.hpp"
#include "berezin/inequalities.hpp"

namespace berezin {

namespace {

using R = Robustness;
using D = CheckDomain;

const std::vector<CheckerInfo> kCatalog = {
    {"eq111", "ber(A) <= w(A) <= ||A||", "A square", R::PointwiseRobust, D::Single},
    {"eq1", "ber(A*XB) <= 1/2 ber(B*|X|B + A*|X*|A)", "A, B, X square", R::PointwiseRobust, D::Single},
    {"commutator", "ber(AX +- XA) <= ber^1/2(A*A + AA*) ber^1/2(X*X + XX*)", "A, X square", R::SupEstimated,
     D::Single},
    {"eq4", "ber(A*XB + B*YA) <= 2 sqrt(||X|| ||Y||) ber^1/2(B*B) ber^1/2(AA*)", "A, B, X, Y square",
     R::SupEstimated, D::Single},
    {"thm2i", "ber^r(A*XB) <= ||X||^r ber(1/p (A*A)^(pr/2) + 1/q (B*B)^(qr/2))",
     "1/p + 1/q = 1, pr >= 2, qr >= 2", R::PointwiseRobust, D::Single, false, true, true},
    {"thm2ii", "ber(A*XB) <= 1/2 ber(B*|X|^(2a)B + A*|X*|^(2(1-a))A)", "0 <= a <= 1", R::PointwiseRobust,
     D::Single, true},
    {"eq5", "ber(A*XB + B*YA) <= 1/2 ber(B*|X|^(2a)B + A*|X*|^(2(1-a))A + A*|Y|^(2a)A + B*|Y*|^(2(1-a))B)",
     "0 <= a <= 1", R::PointwiseRobust, D::Single, true},
    {"remark1", "ber(A*XB + B*YA) <= 1/2 ber(B*|X|B + A*|X*|A) + 1/2 ber(A*|Y|A + B*|Y*|B)",
     "A, B, X, Y square", R::PointwiseRobust, D::Single},
    {"remark2", "ber(AB + B*A) <= 1/2 ber(|A| + |A*|) + 1/2 ber(B*(|A| + |A*|)B)", "A, B square",
     R::PointwiseRobust, D::Single},
    {"eq10", "ber^r(A^a X B^(1-a)) <= ||X||^r (ber(aA^r + (1-a)B^r) - inf eta)",
     "A, B >= 0, r >= 2, 0 <= a <= 1", R::PointwiseRobust, D::Single, true, true},
    {"heinz", "ber^r(H_a) <= ||X||^r/2 ber(A^r + B^r) <= ||X||^r/2 (ber(aA^r + (1-a)B^r) + ber((1-a)A^r + aB^r))",
     "A, B >= 0, r >= 2, 0 <= a <= 1", R::PointwiseRobust, D::Single, true, true},
    {"eq7", "ber^r([[0,B],[C,0]]) <= max{ber(1/p f^pr(|C|) + 1/q g^qr(|B*|)), ber(1/p f^pr(|B|) + 1/q g^qr(|C*|))}",
     "f g = id, r >= 1, p >= q > 1, pr >= 2, qr >= 2", R::PointwiseRobust, D::Product, true, true, true},
    {"eq7cor", "ber^r([[0,B],[C,0]]) <= 1/2 max{ber(|C|^(2ra) + |B*|^(2r(1-a))), ber(|B|^(2ra) + |C*|^(2r(1-a)))}",
     "r >= 1, 0 <= a <= 1", R::PointwiseRobust, D::Product, true, true},
    {"tuple_berp", "ber_p^p(T_1..T_n) <= max{ber(sum a|C_i|^p + (1-a)|B_i*|^p), ber(sum a|B_i|^p + (1-a)|C_i*|^p)}",
     "p >= 2, 0 <= a <= 1", R::PointwiseRobust, D::Product, true, false, true},
    {"eq14", "ber^r(diag(A,D)) <= 1/2 max{ber(|A|^r + |A*|^r), ber(|D|^r + |D*|^r)}", "r >= 1",
     R::PointwiseRobust, D::Product, false, true},
    {"full_cor",
     "ber([[A,B],[C,D]]) <= 1/2 max{ber(|C| + |B*|), ber(|B| + |C*|)} + 1/2 max{ber(|A| + |A*|), ber(|D| + |D*|)}",
     "block dimensions consistent", R::SupEstimated, D::Product},
    {"young", "a^a b^(1-a) <= aa + (1-a)b <= (aa^r + (1-a)b^r)^(1/r); ab <= a^p/p + b^q/q <= (a^pr/p + b^qr/q)^(1/r)",
     "a, b >= 0, r >= 1, 1/p + 1/q = 1", R::PointwiseRobust, D::Scalar, true, true, true},
    {"refined_young", "a^a b^(1-a) <= aa + (1-a)b - min(a, 1-a)(sqrt a - sqrt b)^2", "a, b >= 0, 0 <= a <= 1",
     R::PointwiseRobust, D::Scalar, true},
    {"mixed_schwarz", "|<Tx,y>|^2 <= <|T|^(2a)x,x><|T*|^(2(1-a))y,y>; |<Tx,y>| <= ||f(|T|)x|| ||g(|T*|)y||",
     "0 <= a <= 1, f g = id", R::PointwiseRobust, D::Scalar, true},
    {"mccarthy", "<Tx,x>^r <= <T^r x,x> (r >= 1), reversed for 0 < r <= 1", "T >= 0, ||x|| = 1, r in [0.1, 4]",
     R::PointwiseRobust, D::Scalar},
    {"lemma9a", "ber(diag(A,D)) <= max{ber(A), ber(D)}", "block dimensions consistent", R::PointwiseRobust,
     D::Product},
    {"lemma9b", "ber([[0,B],[C,0]]) <= (||B|| + ||C||)/2", "block dimensions consistent", R::PointwiseRobust,
     D::Product},
};

constexpr std::size_t kTupleSize = 3;
constexpr std::size_t kVectorSamples = 8;
constexpr std::size_t kScalarSamples = 20;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::size_t companion_dim(std::size_t dim) { return std::max<std::size_t>(2, dim - 1); }

KernelSpace random_discrete(std::size_t dim, std::mt19937_64& rng) {
  const std::size_t m = 2 * dim;
  std::normal_distribution<double> gauss;
  Matrix g(dim, m);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double re = gauss(rng);
      g(i, j) = Complex(re, gauss(rng));
    }
  }
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < m; ++j) labels.push_back("p" + std::to_string(j));
  return KernelSpace::discrete(std::move(labels), hermitian_part(adjoint(g) * g));
}

KernelSpace orthonormal(std::size_t dim) {
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < dim; ++j) labels.push_back("e" + std::to_string(j));
  return KernelSpace::discrete(std::move(labels), Matrix::identity(dim));
}

KernelSpace make_space(SpaceFamily family, std::size_t dim, double radius, std::mt19937_64& rng) {
  switch (family) {
    case SpaceFamily::Hardy: return KernelSpace::hardy(dim, radius);
    case SpaceFamily::Bergman: return KernelSpace::bergman(dim, radius);
    case SpaceFamily::Discrete: return random_discrete(dim, rng);
    case SpaceFamily::Orthonormal: return orthonormal(dim);
  }
  throw Error(ErrorKind::BadConfig, "unknown space family");
}

SpaceFamily companion_family(SpaceFamily family) {
  switch (family) {
    case SpaceFamily::Hardy: return SpaceFamily::Bergman;
    case SpaceFamily::Bergman: return SpaceFamily::Hardy;
    default: return family;
  }
}

OperatorRecipe recipe(OperatorKind kind, std::size_t rows, std::size_t cols, const TrialConfig& config) {
  OperatorRecipe r;
  r.kind = kind;
  if (kind == OperatorKind::General && config.kind_override && cols == rows) r.kind = *config.kind_override;
  r.rows = rows;
  r.cols = cols;
  return r;
}

std::vector<OperatorRecipe> recipes_for(std::string_view id, const TrialConfig& config, std::size_t n,
                                        std::size_t n2, int variant) {
  using K = OperatorKind;
  auto sq = [&](K k, std::size_t d) { return recipe(k, d, d, config); };
  auto rect = [&](std::size_t rows, std::size_t cols) { return recipe(K::General, rows, cols, config); };
  if (id == "eq111") return {sq(K::General, n)};
  if (id == "eq1" || id == "thm2i" || id == "thm2ii") return {sq(K::General, n), sq(K::General, n), sq(K::General, n)};
  if (id == "commutator" || id == "remark2") return {sq(K::General, n), sq(K::General, n)};
  if (id == "eq4" || id == "eq5" || id == "remark1") {
    return {sq(K::General, n), sq(K::General, n), sq(K::General, n), sq(K::General, n)};
  }
  if (id == "eq10" || id == "heinz") return {sq(K::Positive, n), sq(K::Positive, n), sq(K::General, n)};
  if (id == "eq7" || id == "eq7cor" || id == "lemma9b") return {rect(n, n2), rect(n2, n)};
  if (id == "tuple_berp") {
    std::vector<OperatorRecipe> out;
    for (std::size_t i = 0; i < kTupleSize; ++i) {
      out.push_back(rect(n, n2));
      out.push_back(rect(n2, n));
    }
    return out;
  }
  if (id == "eq14") return {sq(K::General, n), sq(K::General, n2)};
  if (id == "lemma9a") return {sq(K::Hermitian, n), sq(K::Hermitian, n2)};
  if (id == "full_cor") {
    if (variant == 1) return {sq(K::General, n), sq(K::General, n)};
    return {sq(K::General, n), rect(n, n2), rect(n2, n), sq(K::General, n2)};
  }
  if (id == "young" || id == "refined_young") {
    return {OperatorRecipe{K::ScalarBox, kScalarSamples, 2, 10.0, 10.0}};
  }
  if (id == "mixed_schwarz") {
    return {sq(K::General, n), OperatorRecipe{K::UnitVector, n, kVectorSamples}, OperatorRecipe{K::UnitVector, n, kVectorSamples}};
  }
  if (id == "mccarthy") return {sq(K::Positive, n), OperatorRecipe{K::UnitVector, n, kVectorSamples}};
  throw Error(ErrorKind::UnknownChecker, std::string(id));
}

std::vector<Vector> columns_of(const Matrix& m) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(column(m, j));
  return out;
}

}  // namespace

const std::vector<CheckerInfo>& checker_catalog() { return kCatalog; }

const CheckerInfo& checker_info(std::string_view id) {
  for (const auto& info : kCatalog)
    if (info.id == id) return info;
  throw Error(ErrorKind::UnknownChecker, "unknown check '" + std::string(id) + "'");
}

std::vector<std::string> all_check_ids() {
  std::vector<std::string> ids;
  for (const auto& info : kCatalog) ids.push_back(info.id);
  return ids;
}

std::vector<CheckParams> parameter_grid(std::string_view id, const TrialConfig& config) {
  const CheckerInfo& info = checker_info(id);
  const std::vector<double> alphas = info.uses_alpha ? config.grid.alphas : std::vector<double>{0.5};
  const std::vector<double> rs = info.uses_r ? config.grid.rs : std::vector<double>{1.0};
  const std::vector<double> ps = info.uses_p ? config.grid.ps : std::vector<double>{2.0};
  std::vector<CheckParams> out;
  for (double a : alphas) {
    for (double r : rs) {
      for (double p : ps) {
        CheckParams params = with_conjugate(CheckParams{}, p);
        params.alpha = a;
        params.r = r;
        params.tolerance = config.tolerance;
        try {
          validate_params(id, params);
          out.push_back(params);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::BadParams) throw;
        }
      }
    }
  }
  if (out.empty()) throw Error(ErrorKind::BadConfig, "no grid point satisfies the hypotheses of " + std::string(id));
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view id, SpaceFamily family, std::size_t dim,
                         std::size_t index) {
  std::uint64_t h = splitmix(master);
  h = splitmix(h ^ fnv1a(id));
  h = splitmix(h ^ static_cast<std::uint64_t>(family));
  h = splitmix(h ^ dim);
  return splitmix(h ^ index);
}

Instance make_instance(std::string_view id, const TrialConfig& config, SpaceFamily family, std::size_t dim,
                       std::size_t index) {
  const CheckerInfo& info = checker_info(id);
  Instance inst;
  inst.check_id = info.id;
  inst.family = family;
  inst.dim = dim;
  inst.index = index;
  inst.seed = trial_seed(config.seed, id, family, dim, index);

  const auto grid = parameter_grid(id, config);
  inst.params = grid[index % grid.size()];

  std::mt19937_64 space_rng(splitmix(inst.seed ^ 1));
  std::mt19937_64 op_rng(splitmix(inst.seed ^ 2));
  const std::uint64_t plan_seed = splitmix(inst.seed ^ 3);

  if (id == "commutator") inst.variant = index % 2 == 0 ? 1 : -1;
  if (id == "full_cor") inst.variant = index % 2 == 1 ? 1 : 0;
  if (id == "mccarthy") {
    std::uniform_real_distribution<double> r(0.1, 4.0);
    inst.params.r = r(op_rng);
  }

  std::size_t n2 = companion_dim(dim);
  if (info.domain == CheckDomain::Single) {
    inst.space = make_space(family, dim, config.radius, space_rng);
    inst.plan = default_plan(*inst.space, config.samples, plan_seed);
  } else if (info.domain == CheckDomain::Product) {
    KernelSpace first = make_space(family, dim, config.radius, space_rng);
    if (id == "full_cor" && inst.variant == 1) {
      n2 = dim;
      inst.pair_space.emplace(first, first);
    } else {
      KernelSpace second = make_space(companion_family(family), n2, config.radius, space_rng);
      inst.pair_space.emplace(std::move(first), std::move(second));
    }
    inst.product_plan = default_product_plan(*inst.pair_space, config.samples, plan_seed);
    inst.product_plan.max_pairs = config.max_pairs;
    if (id == "full_cor" && inst.variant == 1) inst.product_plan.second = inst.product_plan.first;
  }

  inst.recipes = recipes_for(id, config, dim, n2, inst.variant);
  for (const auto& r : inst.recipes) inst.draws.push_back(draw_raw(r, op_rng));
  return inst;
}

std::vector<Matrix> realize_all(const Instance& inst) {
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < inst.recipes.size(); ++i) ops.push_back(realize(inst.recipes[i], inst.draws[i]));
  return ops;
}

InequalityCheck evaluate(const Instance& inst, const TrialConfig& config) {
  const std::string& id = inst.check_id;
  const auto ops = realize_all(inst);
  const CheckParams& p = inst.params;
  const RefineConfig& rf = config.refine;

  if (id == "young" || id == "refined_young") {
    std::vector<std::pair<double, double>> samples;
    const Matrix& box = ops[0];
    for (std::size_t i = 0; i < box.rows(); ++i) samples.emplace_back(box(i, 0).real(), box(i, 1).real());
    return id == "young" ? check_young_scalar(samples, p) : check_refined_young(samples, p);
  }
  if (id == "mixed_schwarz") {
    const auto xs = columns_of(ops[1]);
    const auto ys = columns_of(ops[2]);
    std::vector<std::pair<Vector, Vector>> samples;
    for (std::size_t i = 0; i < xs.size(); ++i) samples.emplace_back(xs[i], ys[i]);
    return check_mixed_schwarz(ops[0], samples, p, ScalarFunction::power(p.alpha),
                               ScalarFunction::power(1.0 - p.alpha));
  }
  if (id == "mccarthy") return check_mccarthy(ops[0], columns_of(ops[1]), p);

  if (inst.space) {
    const KernelSpace& s = *inst.space;
    const SamplePlan& plan = inst.plan;
    if (id == "eq111") return check_chain_111(s, ops[0], plan, p, rf);
    if (id == "eq1") return check_prior_product(s, ops[0], ops[1], ops[2], plan, p, rf);
    if (id == "commutator") return check_prior_commutator(s, ops[0], ops[1], inst.variant, plan, p, rf);
    if (id == "eq4") return check_prior_sandwich(s, ops[0], ops[1], ops[2], ops[3], plan, p, rf);
    if (id == "thm2i") return check_thm_product_young(s, ops[0], ops[1], ops[2], plan, p, rf);
    if (id == "thm2ii") return check_thm_product_alpha(s, ops[0], ops[1], ops[2], plan, p, rf);
    if (id == "eq5") return check_thm_sym(s, ops[0], ops[1], ops[2], ops[3], plan, p, rf);
    if (id == "remark1") return check_sym_split(s, ops[0], ops[1], ops[2], ops[3], plan, p, rf);
    if (id == "remark2") return check_sym_abs(s, ops[0], ops[1], plan, p, rf);
    if (id == "eq10") return check_thm_alpha_power(s, ops[0], ops[1], ops[2], plan, p, rf);
    if (id == "heinz") return check_thm_heinz(s, ops[0], ops[1], ops[2], plan, p, rf);
  }
  if (inst.pair_space) {
    const DirectSumSpace& s = *inst.pair_space;
    const ProductPlan& plan = inst.product_plan;
    if (id == "eq7") {
      return check_offdiag_fg(s, ops[0], ops[1], ScalarFunction::power(p.alpha), ScalarFunction::power(1.0 - p.alpha),
                              plan, p);
    }
    if (id == "eq7cor") return check_offdiag_power(s, ops[0], ops[1], plan, p);
    if (id == "tuple_berp") {
      std::vector<std::pair<Matrix, Matrix>> pairs;
      for (std::size_t i = 0; i + 1 < ops.size(); i += 2) pairs.emplace_back(ops[i], ops[i + 1]);
      return check_tuple_berp(s, pairs, plan, p);
    }
    if (id == "eq14") return check_diag_prop(s, ops[0], ops[1], plan, p);
    if (id == "full_cor") {
      const BlockOperator t = inst.variant == 1 ? BlockOperator{ops[0], ops[1], ops[1], ops[0]}
                                                : BlockOperator{ops[0], ops[1], ops[2], ops[3]};
      return check_full_matrix_cor(s, t, plan, p);
    }
    if (id == "lemma9a") return check_block_diag_bound(s, ops[0], ops[1], plan, p);
    if (id == "lemma9b") return check_block_offdiag_bound(s, ops[0], ops[1], plan, p);
  }
  throw Error(ErrorKind::UnknownChecker, "no evaluator for '" + id + "'");
}

}  // namespace berezin
