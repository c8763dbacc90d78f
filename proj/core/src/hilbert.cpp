#include "berezin/hilbert.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "berezin/error.hpp"
#include "berezin/linalg.hpp"

namespace berezin {

namespace {

// std::polar can land one ulp outside the circle of radius rho.
Complex polar_in_disk(double r, double theta, double rho) {
  Complex z = std::polar(r, theta);
  while (std::abs(z) > rho) z *= std::nextafter(1.0, 0.0);
  return z;
}

void require_disk_radius(double radius) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw Error(ErrorKind::BadParams, "disk radius must lie in (0, 1)");
  }
}

void require_dim(std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::BadParams, "space dimension must be positive");
}

}  // namespace

KernelSpace::KernelSpace(SpaceKind kind, std::size_t dim, DomainSpec domain, Matrix embedding)
    : kind_(kind), dim_(dim), domain_(std::move(domain)), embedding_(std::move(embedding)) {}

KernelSpace KernelSpace::hardy(std::size_t dim, double radius) {
  require_dim(dim);
  require_disk_radius(radius);
  return KernelSpace(SpaceKind::TruncatedHardy, dim, Disk{radius}, Matrix(1, 1));
}

KernelSpace KernelSpace::bergman(std::size_t dim, double radius) {
  require_dim(dim);
  require_disk_radius(radius);
  return KernelSpace(SpaceKind::TruncatedBergman, dim, Disk{radius}, Matrix(1, 1));
}

KernelSpace KernelSpace::discrete(std::vector<std::string> labels, const Matrix& gram, double tol) {
  if (!gram.is_square() || gram.rows() != labels.size()) {
    throw Error(ErrorKind::DimensionMismatch, "gram must be m x m for m point labels");
  }
  Matrix g = gram_embed(gram, tol);
  const std::size_t dim = g.rows();
  return KernelSpace(SpaceKind::Discrete, dim, FinitePoints{std::move(labels)}, std::move(g));
}

double KernelSpace::radius() const noexcept {
  if (const auto* disk = std::get_if<Disk>(&domain_)) return disk->radius;
  return 0.0;
}

std::size_t KernelSpace::point_count() const noexcept {
  if (const auto* pts = std::get_if<FinitePoints>(&domain_)) return pts->labels.size();
  return 0;
}

bool KernelSpace::contains(const Point& lambda) const noexcept {
  if (const auto* disk = std::get_if<Disk>(&domain_)) {
    const auto* z = std::get_if<Complex>(&lambda);
    return z != nullptr && std::isfinite(z->real()) && std::isfinite(z->imag()) &&
           std::abs(*z) <= disk->radius + 1e-12;
  }
  const auto* index = std::get_if<std::size_t>(&lambda);
  return index != nullptr && *index < point_count();
}

Vector KernelSpace::kernel_at(const Point& lambda) const {
  if (!contains(lambda)) throw Error(ErrorKind::OutOfDomain, to_string(lambda) + " not in " + describe());

  if (kind_ == SpaceKind::Discrete) return column(embedding_, std::get<std::size_t>(lambda));

  const Complex zbar = std::conj(std::get<Complex>(lambda));
  Vector k(dim_);
  Complex power = 1.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    k[j] = kind_ == SpaceKind::TruncatedBergman ? std::sqrt(static_cast<double>(j + 1)) * power : power;
    power *= zbar;
  }
  return k;
}

Vector KernelSpace::normalized_kernel_at(const Point& lambda, double eps_zero) const {
  Vector k = kernel_at(lambda);
  const double n = norm(k);
  if (!(n > eps_zero)) {
    throw Error(ErrorKind::DegenerateKernel, "kernel norm vanishes at " + to_string(lambda));
  }
  for (auto& e : k) e /= n;
  return k;
}

std::string KernelSpace::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::TruncatedHardy: os << "hardy(n=" << dim_ << ",rho=" << radius() << ")"; break;
    case SpaceKind::TruncatedBergman: os << "bergman(n=" << dim_ << ",rho=" << radius() << ")"; break;
    case SpaceKind::Discrete: os << "discrete(n=" << dim_ << ",m=" << point_count() << ")"; break;
  }
  return os.str();
}

std::vector<Point> sample_domain(const KernelSpace& space, const SamplePlan& plan) {
  if (plan.count == 0) throw Error(ErrorKind::InvalidPlan, "sample count must be >= 1");
  std::vector<Point> points;

  if (!space.is_disk()) {
    const std::size_t m = space.point_count();
    switch (plan.strategy) {
      case SampleStrategy::Exhaustive:
        points.reserve(m);
        for (std::size_t i = 0; i < m; ++i) points.emplace_back(i);
        return points;
      case SampleStrategy::UniformRandom: {
        std::mt19937_64 rng(plan.seed);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        points.reserve(plan.count);
        for (std::size_t i = 0; i < plan.count; ++i) points.emplace_back(pick(rng));
        return points;
      }
      case SampleStrategy::PolarGrid:
        throw Error(ErrorKind::InvalidPlan, "polar grid needs a disk domain");
    }
  }

  const double rho = space.radius();
  switch (plan.strategy) {
    case SampleStrategy::Exhaustive:
      throw Error(ErrorKind::InvalidPlan, "exhaustive sampling needs a finite domain");
    case SampleStrategy::UniformRandom: {
      std::mt19937_64 rng(plan.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      points.reserve(plan.count);
      for (std::size_t i = 0; i < plan.count; ++i) {
        const double r = rho * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        points.emplace_back(polar_in_disk(r, theta, rho));
      }
      return points;
    }
    case SampleStrategy::PolarGrid: {
      const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(plan.count))));
      std::vector<Complex> grid;
      grid.reserve(side * side);
      for (std::size_t i = 0; i < side; ++i) {
        const double r = rho * std::sqrt(static_cast<double>(i + 1) / static_cast<double>(side));
        const double offset = (i % 2 == 0) ? 0.0 : 0.5;
        for (std::size_t j = 0; j < side; ++j) {
          const double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + offset) /
                               static_cast<double>(side);
          grid.push_back(polar_in_disk(r, theta, rho));
        }
      }
      points.reserve(plan.count);
      for (std::size_t k = 0; k < plan.count; ++k) points.emplace_back(grid[k * grid.size() / plan.count]);
      return points;
    }
  }
  return points;
}

SamplePlan default_plan(const KernelSpace& space, std::size_t count, std::uint64_t seed) {
  if (space.is_disk()) return SamplePlan{SampleStrategy::PolarGrid, count, seed};
  return SamplePlan{SampleStrategy::Exhaustive, std::max<std::size_t>(space.point_count(), 1), seed};
}

Matrix gram_embed(const Matrix& gram, double tol) {
  const HermitianEigen eig = hermitian_eigen(gram, tol);
  double scale = 0.0;
  for (double w : eig.eigenvalues) scale = std::max(scale, std::abs(w));
  for (double w : eig.eigenvalues) {
    if (w < -tol * scale) throw Error(ErrorKind::NotPSD, "gram matrix has a negative eigenvalue");
  }

  std::vector<std::size_t> kept;
  for (std::size_t k = eig.eigenvalues.size(); k-- > 0;) {
    if (eig.eigenvalues[k] > kGramRankCutoff * scale) kept.push_back(k);
  }
  if (kept.empty()) throw Error(ErrorKind::DegenerateKernel, "gram matrix is numerically zero");

  const std::size_t m = gram.rows();
  Matrix g(kept.size(), m);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const double s = std::sqrt(eig.eigenvalues[kept[r]]);
    for (std::size_t j = 0; j < m; ++j) g(r, j) = s * std::conj(eig.eigenvectors(j, kept[r]));
  }
  if (kept.size() < m) return g;

  // full rank: rotate to the PSD square root so K = I gives G = I and point
  // i keeps basis vector i
  Matrix w(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < m; ++r) w(i, r) = eig.eigenvectors(i, kept[r]);
  return w * g;
}

KernelSpace parse_discrete_space(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoFailure, std::string("invalid JSON: ") + e.what());
  }
  try {
    std::vector<std::string> labels;
    for (const auto& p : doc.at("points")) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    const auto& re = doc.at("gram_re");
    const std::size_t m = labels.size();
    const std::vector<std::vector<double>> zeros(m, std::vector<double>(m, 0.0));
    const nlohmann::json im = doc.contains("gram_im") ? doc.at("gram_im") : nlohmann::json(zeros);
    if (m == 0 || re.size() != m || im.size() != m) {
      throw Error(ErrorKind::DimensionMismatch, "gram_re/gram_im must be m x m for m points");
    }
    std::vector<Complex> entries;
    entries.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      if (re[i].size() != m || im[i].size() != m) {
        throw Error(ErrorKind::DimensionMismatch, "gram row " + std::to_string(i) + " has wrong length");
      }
      for (std::size_t j = 0; j < m; ++j) entries.emplace_back(re[i][j].get<double>(), im[i][j].get<double>());
    }
    return KernelSpace::discrete(std::move(labels), Matrix(m, m, std::move(entries)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoFailure, std::string("malformed discrete space: ") + e.what());
  }
}

KernelSpace load_discrete_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_discrete_space(buffer.str());
}

std::string to_string(const Point& lambda) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* z = std::get_if<Complex>(&lambda)) {
    os << "(" << z->real() << "," << z->imag() << ")";
  } else {
    os << "#" << std::get<std::size_t>(lambda);
  }
  return os.str();
}

}  // namespace berezin
