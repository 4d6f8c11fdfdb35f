#include "curlspec/grad_shafranov.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace curlspec::gs {

namespace {

// Nodes closer than this fraction of h to an analytic boundary are treated
// as boundary nodes.
constexpr double kBoundarySnap = 1e-6;
constexpr std::size_t kMinInteriorNodes = 100;
constexpr double kIterationTolerance = 1e-12;
constexpr int kMaxIterations = 2000;

enum Direction : std::size_t { kPlusR = 0, kMinusR = 1, kPlusZ = 2, kMinusZ = 3 };

struct Node {
  double r = 0.0;
  double z = 0.0;
  std::array<int, 4> neighbour{-1, -1, -1, -1};  // -1: Dirichlet boundary
  std::array<double, 4> distance{};
};

struct Lattice {
  double h = 0.0;
  std::vector<Node> nodes;
};

// Distance from (x, y) to the boundary along `dir`, for a node strictly inside.
using CrossingFn = std::function<double(double, double, Direction)>;
using InsideFn = std::function<bool(double, double)>;

Lattice build_analytic(double h, double x0, double y0, int i_lo, int i_hi, int j_lo, int j_hi, const InsideFn& inside,
                       const CrossingFn& crossing) {
  const int nx = i_hi - i_lo + 1;
  const int ny = j_hi - j_lo + 1;
  std::vector<int> index(static_cast<std::size_t>(nx) * ny, -1);
  auto slot = [&](int i, int j) -> int& { return index[static_cast<std::size_t>(j - j_lo) * nx + (i - i_lo)]; };
  auto in_range = [&](int i, int j) { return i >= i_lo && i <= i_hi && j >= j_lo && j <= j_hi; };
  auto is_unknown = [&](int i, int j) {
    const double x = x0 + i * h;
    const double y = y0 + j * h;
    if (!inside(x, y)) return false;
    const std::array<std::pair<int, int>, 4> step{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (std::size_t d = 0; d < 4; ++d) {
      const double xn = x + step[d].first * h;
      const double yn = y + step[d].second * h;
      if (!inside(xn, yn) && crossing(x, y, static_cast<Direction>(d)) < kBoundarySnap * h) return false;
    }
    return true;
  };

  Lattice lat;
  lat.h = h;
  for (int j = j_lo; j <= j_hi; ++j) {
    for (int i = i_lo; i <= i_hi; ++i) {
      if (!is_unknown(i, j)) continue;
      slot(i, j) = static_cast<int>(lat.nodes.size());
      lat.nodes.push_back(Node{x0 + i * h, y0 + j * h, {}, {}});
    }
  }
  for (int j = j_lo; j <= j_hi; ++j) {
    for (int i = i_lo; i <= i_hi; ++i) {
      const int k = slot(i, j);
      if (k < 0) continue;
      Node& node = lat.nodes[static_cast<std::size_t>(k)];
      const std::array<std::pair<int, int>, 4> step{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
      for (std::size_t d = 0; d < 4; ++d) {
        const int ni = i + step[d].first;
        const int nj = j + step[d].second;
        const int nk = in_range(ni, nj) ? slot(ni, nj) : -1;
        node.neighbour[d] = nk;
        node.distance[d] = nk >= 0 ? h : std::min(h, crossing(node.r, node.z, static_cast<Direction>(d)));
      }
    }
  }
  return lat;
}

Lattice build_lattice(const CrossSection& section, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid_h must be positive and finite");
  return std::visit(
      [&](const auto& s) -> Lattice {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          const double a = s.radius;
          const double rc = s.center_r;
          const int n = static_cast<int>(std::ceil(a / h)) + 1;
          auto inside = [=](double r, double z) { return (r - rc) * (r - rc) + z * z < a * a; };
          auto crossing = [=](double r, double z, Direction d) {
            const double x = r - rc;
            switch (d) {
              case kPlusR: return std::sqrt(std::max(0.0, a * a - z * z)) - x;
              case kMinusR: return x + std::sqrt(std::max(0.0, a * a - z * z));
              case kPlusZ: return std::sqrt(std::max(0.0, a * a - x * x)) - z;
              case kMinusZ: return z + std::sqrt(std::max(0.0, a * a - x * x));
            }
            return 0.0;
          };
          return build_analytic(h, rc, 0.0, -n, n, -n, n, inside, crossing);
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          const int ni = static_cast<int>(std::ceil((s.r_hi - s.r_lo) / h)) + 1;
          const int nj = static_cast<int>(std::ceil((s.z_hi - s.z_lo) / h)) + 1;
          auto inside = [=](double r, double z) { return r > s.r_lo && r < s.r_hi && z > s.z_lo && z < s.z_hi; };
          auto crossing = [=](double r, double z, Direction d) {
            switch (d) {
              case kPlusR: return s.r_hi - r;
              case kMinusR: return r - s.r_lo;
              case kPlusZ: return s.z_hi - z;
              case kMinusZ: return z - s.z_lo;
            }
            return 0.0;
          };
          return build_analytic(h, s.r_lo, s.z_lo, 0, ni, 0, nj, inside, crossing);
        } else {
          if (std::abs(h - s.h) > 1e-12 * s.h) {
            throw std::invalid_argument("grid_h " + std::to_string(h) + " differs from the mask spacing " +
                                        std::to_string(s.h) + "; mask resolution is fixed");
          }
          Lattice lat;
          lat.h = s.h;
          std::vector<int> index(static_cast<std::size_t>(s.nr) * s.nz, -1);
          for (int j = 0; j < s.nz; ++j) {
            for (int i = 0; i < s.nr; ++i) {
              if (!s.at(i, j)) continue;
              index[static_cast<std::size_t>(j) * s.nr + i] = static_cast<int>(lat.nodes.size());
              lat.nodes.push_back(Node{s.r0 + i * s.h, s.z0 + j * s.h, {}, {}});
            }
          }
          for (int j = 0; j < s.nz; ++j) {
            for (int i = 0; i < s.nr; ++i) {
              const int k = s.at(i, j) ? index[static_cast<std::size_t>(j) * s.nr + i] : -1;
              if (k < 0) continue;
              Node& node = lat.nodes[static_cast<std::size_t>(k)];
              const std::array<std::pair<int, int>, 4> step{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
              for (std::size_t d = 0; d < 4; ++d) {
                const int ni = i + step[d].first;
                const int nj = j + step[d].second;
                node.neighbour[d] = s.at(ni, nj) ? index[static_cast<std::size_t>(nj) * s.nr + ni] : -1;
                node.distance[d] = s.h;
              }
            }
          }
          return lat;
        }
      },
      section.shape());
}

void check_size(const Lattice& lat) {
  if (lat.nodes.empty()) throw std::domain_error("degenerate cross-section: no interior lattice nodes");
  if (lat.nodes.size() < kMinInteriorNodes) {
    throw std::invalid_argument("grid too coarse: " + std::to_string(lat.nodes.size()) +
                                " interior nodes (need at least 100)");
  }
}

double potential(double r) { return 0.75 / (r * r); }

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// -Laplacian (Shortley-Weller) plus optional 3/(4r^2).
SparseMatrix assemble(const Lattice& lat, bool with_potential) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(lat.nodes.size() * 5);
  for (std::size_t k = 0; k < lat.nodes.size(); ++k) {
    const Node& node = lat.nodes[k];
    double diag = with_potential ? potential(node.r) : 0.0;
    for (std::size_t axis = 0; axis < 2; ++axis) {
      const double dp = node.distance[2 * axis];
      const double dm = node.distance[2 * axis + 1];
      for (std::size_t side = 0; side < 2; ++side) {
        const double d = node.distance[2 * axis + side];
        const double c = 2.0 / (d * (dp + dm));
        diag += c;
        const int nb = node.neighbour[2 * axis + side];
        if (nb >= 0) triplets.emplace_back(static_cast<int>(k), nb, -c);
      }
    }
    triplets.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
  }
  const auto n = static_cast<Eigen::Index>(lat.nodes.size());
  SparseMatrix a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

class Factorization {
 public:
  explicit Factorization(const SparseMatrix& a) {
    lu_.analyzePattern(a);
    lu_.factorize(a);
    if (lu_.info() != Eigen::Success) throw std::runtime_error("sparse LU factorization failed");
  }
  Vector solve(const Vector& b) const { return lu_.solve(b); }

 private:
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

struct IterationResult {
  double value = 0.0;
  Vector vec;
  int iterations = 0;
};

// Inverse iteration for the smallest eigenvalue of B^{-1} A where B is the
// (possibly projected) identity applied by `apply_b`.
IterationResult inverse_iteration(const Factorization& lu, std::size_t n,
                                  const std::function<Vector(const Vector&)>& apply_b, const Vector& start) {
  Vector x = start.size() == static_cast<Eigen::Index>(n) ? start : Vector::Ones(static_cast<Eigen::Index>(n));
  x.normalize();
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= kMaxIterations; ++it) {
    const Vector y = lu.solve(apply_b(x));
    const double estimate = x.squaredNorm() / x.dot(y);
    x = y / y.norm();
    if (it >= 3 && std::abs(estimate - previous) <= kIterationTolerance * std::abs(estimate)) {
      return {estimate, x, it};
    }
    previous = estimate;
  }
  throw std::runtime_error("inverse iteration did not converge");
}

double laplacian_bracket_low(const CrossSection& section) {
  const double w = section.r_max() - section.r_min();
  const double hgt = section.z_max() - section.z_min();
  return std::numbers::pi * std::numbers::pi * (1.0 / (w * w) + 1.0 / (hgt * hgt));
}

double laplacian_bracket_high(const CrossSection& section) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          // Inscribed square of side a*sqrt(2).
          return std::numbers::pi * std::numbers::pi / (s.radius * s.radius);
        } else if constexpr (std::is_same_v<T, Rectangle>) {
          return laplacian_bracket_low(section);
        } else {
          return std::numeric_limits<double>::infinity();
        }
      },
      section.shape());
}

GridField make_field(const Lattice& lat, const Vector& values) {
  GridField f;
  f.h = lat.h;
  f.r.reserve(lat.nodes.size());
  f.z.reserve(lat.nodes.size());
  for (const Node& node : lat.nodes) {
    f.r.push_back(node.r);
    f.z.push_back(node.z);
  }
  f.values.assign(values.data(), values.data() + values.size());
  return f;
}

IterationResult dirichlet_solve(const Lattice& lat, bool with_potential) {
  const Factorization lu(assemble(lat, with_potential));
  return inverse_iteration(lu, lat.nodes.size(), [](const Vector& x) { return x; }, Vector());
}

}  // namespace

std::size_t interior_node_count(const CrossSection& section, double grid_h) {
  return build_lattice(section, grid_h).nodes.size();
}

EigenEstimate laplacian_dirichlet_lambda1(const CrossSection& section, double grid_h) {
  const Lattice lat = build_lattice(section, grid_h);
  check_size(lat);
  const IterationResult res = dirichlet_solve(lat, false);
  return {res.value, lat.h, laplacian_bracket_low(section), laplacian_bracket_high(section), res.iterations};
}

GradShafranovSolution solve_grad_shafranov(const CrossSection& section, double grid_h) {
  const Lattice lat = build_lattice(section, grid_h);
  check_size(lat);
  const IterationResult lap = dirichlet_solve(lat, false);
  const IterationResult res = dirichlet_solve(lat, true);

  Vector v = res.vec;
  if (v.sum() < 0.0) v = -v;
  // Unit norm in h^2 sum v^2, i.e. (u, u)_{L2,r} = 1.
  v /= lat.h * v.norm();
  Vector u(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) u[k] = std::sqrt(lat.nodes[static_cast<std::size_t>(k)].r) * v[k];

  GradShafranovSolution out;
  out.laplacian_value = lap.value;
  out.estimate.value = res.value;
  out.estimate.grid_h = lat.h;
  out.estimate.bracket_low = lap.value + potential(section.r_max());
  out.estimate.bracket_high = lap.value + potential(section.r_min());
  out.estimate.iterations = res.iterations;
  out.u = make_field(lat, u);
  out.v = make_field(lat, v);
  return out;
}

EigenEstimate grad_shafranov_lambda1(const CrossSection& section, double grid_h) {
  return solve_grad_shafranov(section, grid_h).estimate;
}

double symmetric_amperian_lambda1(const CrossSection& section, double grid_h) {
  return std::sqrt(grad_shafranov_lambda1(section, grid_h).value);
}

FluxFreeSolution solve_flux_free(const CrossSection& section, double grid_h) {
  const Lattice lat = build_lattice(section, grid_h);
  check_size(lat);
  const auto n = static_cast<Eigen::Index>(lat.nodes.size());

  // u = u0 + c with u0 Dirichlet. In v = r^{-1/2} u variables the constant
  // c becomes c s with s = r^{-1/2}, which the Schroedinger operator
  // annihilates, and the mean constraint int u/r = 0 reads (v0 + c s, s) = 0.
  // Eliminating c leaves A v0 = lambda^2 P v0 with P = I - s s^T / (s, s).
  Vector s(n);
  for (Eigen::Index k = 0; k < n; ++k) s[k] = 1.0 / std::sqrt(lat.nodes[static_cast<std::size_t>(k)].r);
  const double ss = s.squaredNorm();
  auto project = [&](const Vector& x) -> Vector { return x - s * (s.dot(x) / ss); };

  const Factorization lu(assemble(lat, true));
  Vector start(n);
  // Sign-changing start vector (the constrained mode has no sign).
  for (Eigen::Index k = 0; k < n; ++k) {
    const Node& node = lat.nodes[static_cast<std::size_t>(k)];
    start[k] = 1.0 + (node.r - 0.5 * (section.r_min() + section.r_max())) + 0.1 * node.z;
  }
  const IterationResult res = inverse_iteration(lu, lat.nodes.size(), project, project(start));

  Vector v0 = res.vec;
  double c = -s.dot(v0) / ss;
  Vector u(n);
  double mean_num = 0.0;
  double mean_den = 0.0;
  double weighted_norm = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = lat.nodes[static_cast<std::size_t>(k)].r;
    u[k] = std::sqrt(r) * v0[k] + c;
    mean_num += u[k] / r;
    mean_den += 1.0 / r;
    weighted_norm += u[k] * u[k] / r;
  }
  // (u, u)_{L2,r} = 1.
  const double scale = 1.0 / (lat.h * std::sqrt(weighted_norm));
  u *= scale;
  c *= scale;
  mean_num *= scale;

  FluxFreeSolution out;
  out.lambda_squared = res.value;
  out.lambda = std::sqrt(res.value);
  out.boundary_value = c;
  out.weighted_mean = mean_num / mean_den;
  out.u = make_field(lat, u);
  out.iterations = res.iterations;
  return out;
}

double symmetric_fluxfree_lambda1(const CrossSection& section, double grid_h) {
  return solve_flux_free(section, grid_h).lambda;
}

double weighted_rayleigh_quotient(const CrossSection& section, const GridField& u) {
  const Lattice lat = build_lattice(section, u.h);
  if (lat.nodes.size() != u.values.size()) throw std::invalid_argument("field does not match the section lattice");
  const auto n = static_cast<Eigen::Index>(lat.nodes.size());
  Vector v(n);
  double weighted_norm = 0.0;  // sum u^2 / r
  double potential_part = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = lat.nodes[static_cast<std::size_t>(k)].r;
    const double uk = u.values[static_cast<std::size_t>(k)];
    v[k] = uk / std::sqrt(r);
    weighted_norm += uk * uk / r;
    potential_part += potential(r) * uk * uk / r;
  }
  const SparseMatrix lap = assemble(lat, false);
  const double gradient_part = v.dot(lap * v);
  return (gradient_part + potential_part) / weighted_norm;
}

RichardsonStudy richardson(const std::function<double(double)>& solve, double grid_h) {
  RichardsonStudy out;
  for (int i = 0; i < 3; ++i) {
    out.h[i] = grid_h / static_cast<double>(1 << i);
    out.values[i] = solve(out.h[i]);
  }
  const double d1 = out.values[0] - out.values[1];
  const double d2 = out.values[1] - out.values[2];
  out.order = std::log2(std::abs(d1 / d2));
  const double factor = std::pow(2.0, out.order) - 1.0;
  out.extrapolated = out.values[2] + (out.values[2] - out.values[1]) / factor;
  out.error_estimate = std::abs(out.values[2] - out.extrapolated);
  return out;
}

}  // namespace curlspec::gs
