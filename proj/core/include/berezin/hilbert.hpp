#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "berezin/matrix.hpp"

namespace berezin {

/// Closed disk of radius rho < 1 centred at the origin.
struct Disk {
  double radius = 0.95;
};

/// A finite parameter set; points are addressed by index.
struct FinitePoints {
  std::vector<std::string> labels;
};

using DomainSpec = std::variant<Disk, FinitePoints>;

/// A complex number for disk domains, an index for finite ones.
using Point = std::variant<Complex, std::size_t>;

/// A point of a product domain Omega_1 x Omega_2.
struct ProductPoint {
  Point first;
  Point second;
};

enum class SampleStrategy { PolarGrid, UniformRandom, Exhaustive };

struct SamplePlan {
  SampleStrategy strategy = SampleStrategy::PolarGrid;
  std::size_t count = 400;
  std::uint64_t seed = 0;
};

enum class SpaceKind { TruncatedHardy, TruncatedBergman, Discrete };

inline constexpr double kDefaultDiskRadius = 0.95;
inline constexpr double kDefaultKernelEps = 1e-14;
inline constexpr double kGramRankCutoff = 1e-12;

/// Finite-dimensional model of a functional Hilbert space H(Omega): a
/// parameter domain and a deterministic map lambda -> k_lambda in C^n.
///
/// Coefficients are taken in an orthonormal basis {e_j}, so k_lambda has
/// components conj(e_j(lambda)):
///   TruncatedHardy    e_j(z) = z^j                 (j < n)
///   TruncatedBergman  e_j(z) = sqrt(j + 1) z^j     (j < n)
///   Discrete          k_{lambda_i} = column i of G with G*G = K
class KernelSpace {
 public:
  static KernelSpace hardy(std::size_t dim, double radius = kDefaultDiskRadius);
  static KernelSpace bergman(std::size_t dim, double radius = kDefaultDiskRadius);
  /// Gram matrix must be Hermitian PSD within `tol`. The space dimension is
  /// the numerical rank of the Gram matrix.
  static KernelSpace discrete(std::vector<std::string> labels, const Matrix& gram,
                              double tol = 1e-10);

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  const DomainSpec& domain() const noexcept { return domain_; }
  bool is_disk() const noexcept { return std::holds_alternative<Disk>(domain_); }
  /// Disk radius; zero for finite domains.
  double radius() const noexcept;
  /// Number of points of a finite domain; zero for disks.
  std::size_t point_count() const noexcept;

  bool contains(const Point& lambda) const noexcept;

  Vector kernel_at(const Point& lambda) const;
  Vector normalized_kernel_at(const Point& lambda, double eps_zero = kDefaultKernelEps) const;

  /// Short human-readable tag, e.g. "hardy(n=4,rho=0.95)".
  std::string describe() const;

 private:
  KernelSpace(SpaceKind kind, std::size_t dim, DomainSpec domain, Matrix embedding);

  SpaceKind kind_;
  std::size_t dim_;
  DomainSpec domain_;
  Matrix embedding_;  // dim x m for discrete spaces, unused (1x1) otherwise
};

/// Points of the space's domain according to `plan`. Polar grids use
/// ceil(sqrt(count)) equal-area radii times ceil(sqrt(count)) angles and are
/// thinned evenly to exactly `count` points; exhaustive plans return every
/// point of a finite domain once.
std::vector<Point> sample_domain(const KernelSpace& space, const SamplePlan& plan);

/// A plan suited to the space: exhaustive for finite domains, a polar grid
/// of `count` points otherwise.
SamplePlan default_plan(const KernelSpace& space, std::size_t count, std::uint64_t seed = 0);

/// G with G*G = gram, rows = numerical rank (eigenvalues below
/// kGramRankCutoff * ||gram|| are dropped). A full-rank gram gets its PSD
/// square root, so an orthonormal family maps point i to basis vector i.
Matrix gram_embed(const Matrix& gram, double tol = 1e-10);

/// Reads {"points": [...], "gram_re": [[...]], "gram_im": [[...]]}; "gram_im" may be omitted.
KernelSpace load_discrete_space(const std::filesystem::path& path);
KernelSpace parse_discrete_space(const std::string& json_text);

std::string to_string(const Point& lambda);

}  // namespace berezin
