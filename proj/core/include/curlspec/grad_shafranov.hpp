#pragma once

#include <functional>
#include <vector>

#include "curlspec/cross_section.hpp"

/// First Dirichlet eigenvalue of the Grad-Shafranov operator
///
///   L = d_rr + d_zz - (1/r) d_r
///
/// on a planar cross-section, computed through the unitary substitution
/// v = r^{-1/2} u which turns -L into the Schroedinger operator
/// -Laplacian + 3/(4 r^2) acting on v.
///
/// Discretization: five-point finite differences on a uniform (r, z) lattice.
/// Analytic shapes (disk, rectangle) use Shortley-Weller stencils with the
/// exact boundary-crossing distances, which keeps the scheme second order on
/// curved boundaries. Grid masks use the plain staircase stencil.
/// The smallest eigenvalue comes from inverse iteration on a sparse LU
/// factorization; iteration stops once successive estimates agree to 1e-12
/// relative.
namespace curlspec::gs {

/// Eigenvalue together with its analytic bracket and discretization record.
struct EigenEstimate {
  double value = 0.0;
  double grid_h = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  int iterations = 0;
};

/// Values on the interior lattice nodes (Dirichlet nodes are implicit zeros).
struct GridField {
  double h = 0.0;
  std::vector<double> r;
  std::vector<double> z;
  std::vector<double> values;
};

struct GradShafranovSolution {
  EigenEstimate estimate;
  /// Eigenfunction of L, positive, normalized to (u, u)_{L2,r} = 1.
  GridField u;
  /// v = r^{-1/2} u, normalized to unit L2 norm.
  GridField v;
  /// Laplacian eigenvalue on the same lattice (used for the bracket).
  double laplacian_value = 0.0;
};

struct FluxFreeSolution {
  double lambda = 0.0;  // first symmetric flux-free curl eigenvalue
  double lambda_squared = 0.0;
  /// Constant boundary value of u.
  double boundary_value = 0.0;
  /// (u, 1)_{L2,r} / (1, 1)_{L2,r}.
  double weighted_mean = 0.0;
  GridField u;
  int iterations = 0;
};

/// Number of interior unknowns of the lattice used for (section, grid_h).
std::size_t interior_node_count(const CrossSection& section, double grid_h);

/// First Dirichlet eigenvalue of -(d_rr + d_zz). The bracket holds the
/// eigenvalues of the bounding rectangle (below) and, for disks, of the
/// inscribed square (above); masks report +inf above.
/// Throws std::domain_error when the lattice has no interior nodes and
/// std::invalid_argument when it has fewer than 100.
EigenEstimate laplacian_dirichlet_lambda1(const CrossSection& section, double grid_h);

/// First Dirichlet eigenvalue of the Grad-Shafranov operator; the bracket is
/// [lambda_D + 3/(4 r_max^2), lambda_D + 3/(4 r_min^2)] with lambda_D the
/// Laplacian eigenvalue on the same lattice.
EigenEstimate grad_shafranov_lambda1(const CrossSection& section, double grid_h);
GradShafranovSolution solve_grad_shafranov(const CrossSection& section, double grid_h);

/// sqrt of grad_shafranov_lambda1.
double symmetric_amperian_lambda1(const CrossSection& section, double grid_h);

/// Smallest lambda > 0 with L u = -lambda^2 u, u = c (unknown constant) on the
/// boundary and zero weighted mean int u/r = 0.
FluxFreeSolution solve_flux_free(const CrossSection& section, double grid_h);
double symmetric_fluxfree_lambda1(const CrossSection& section, double grid_h);

/// B_r[u,u] / (u,u)_{L2,r} of a lattice field, with the discrete weighted
/// form B_r[u,u] = int |grad v|^2 + int (3/(4r^2)) u^2/r, v = r^{-1/2} u.
double weighted_rayleigh_quotient(const CrossSection& section, const GridField& u);

/// Three-grid Richardson study on h, h/2, h/4.
struct RichardsonStudy {
  double h[3] = {0.0, 0.0, 0.0};
  double values[3] = {0.0, 0.0, 0.0};
  double order = 0.0;
  double extrapolated = 0.0;
  /// |values[2] - extrapolated|.
  double error_estimate = 0.0;
};

RichardsonStudy richardson(const std::function<double(double)>& solve, double grid_h);

}  // namespace curlspec::gs
