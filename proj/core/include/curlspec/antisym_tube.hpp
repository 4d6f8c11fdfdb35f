#pragma once

#include <stdexcept>
#include <string>
#include <vector>

/// Antisymmetric curl modes on flat tubes (disk or annulus times a circle of
/// length L). A mode with axial wavenumber ell = 2 pi n_ell / L, azimuthal
/// index m and eigenvalue lambda (lambda^2 > ell^2, mu = sqrt(lambda^2 -
/// ell^2)) exists exactly when the boundary dispersion relation vanishes.
namespace curlspec::antisym {

struct ModeIndex {
  int n_ell = 0;
  int m = 0;
  double length = 1.0;  // tube period L > 0

  double ell() const;
};

struct DispersionPoint {
  double lambda = 0.0;
  double ell = 0.0;
  double mu = 0.0;
};

/// Builds (lambda, ell, mu); throws std::domain_error unless lambda^2 > ell^2.
DispersionPoint make_dispersion_point(double lambda, double ell);

/// Point of U = {(alpha, kappa) : kappa^2 > alpha^2}.
struct FPlanePoint {
  double alpha = 0.0;
  double kappa = 0.0;
};

struct AnnulusGeometry {
  double a = 0.0;  // inner radius
  double b = 0.0;  // outer radius
};

/// (lambda m / a) J_m(mu a) + ell mu J_m'(mu a) on the disk of radius a.
double disk_dispersion(double a, const ModeIndex& mode, double lambda);

/// F_m(alpha, kappa) = ((kappa+alpha)/(kappa-alpha)) J_{m-1}(x) + J_{m+1}(x),
/// x = sqrt(kappa^2 - alpha^2). Throws std::domain_error off U.
double dispersion_f(int m, FPlanePoint p);

/// 2x2 determinant with rows c in {a, b} and entries
/// (lambda m / c) Z_m(mu c) + ell mu Z_m'(mu c), Z in {J, Y}.
double annulus_determinant(const AnnulusGeometry& geom, const ModeIndex& mode, double lambda);

/// Same determinant after the Bessel recurrences: entries
/// (lambda+ell) Z_{m-1}(mu c) + (lambda-ell) Z_{m+1}(mu c). The raw
/// determinant equals (mu/2)^2 times this one.
double annulus_determinant_reduced(const AnnulusGeometry& geom, const ModeIndex& mode, double lambda);

// ---------------------------------------------------------------------------
// j* : uniform lower bound for scaled antisymmetric disk eigenvalues.

struct JStarConfig {
  double alpha_max = 10.0;
  double step = 0.005;      // lattice spacing in both alpha and kappa
  double kappa_max = 0.0;   // 0: sqrt(j_{m-1,1}^2 + alpha_max^2) + pi
  unsigned threads = 1;
};

struct ZeroCurvePoint {
  double alpha = 0.0;
  double kappa = 0.0;
};

struct JStarMEstimate {
  int m = 1;
  /// Smallest detected zero kappa (refined), or j_{m-1,1} when none found.
  double value = 0.0;
  double error_bar = 0.0;
  double alpha_at_min = 0.0;
  bool zeros_found = false;
  /// j_{m-1,1}: every zero satisfies kappa > sqrt(j_{m-1,1}^2 + alpha^2).
  double lower_limit = 0.0;
  /// sqrt(j_{m-1,1}^2 + alpha_max^2): zeros with |alpha| > alpha_max lie above.
  double truncation_bound = 0.0;
  /// First zero per lattice column (columns without a zero below kappa_max
  /// are omitted).
  std::vector<ZeroCurvePoint> first_zeros;
};

/// Numerical infimum of kappa over the zero set of F_m, m >= 1, from a
/// sign-change scan over the (alpha, kappa) lattice, column-wise bisection in
/// kappa, and a golden-section refinement in alpha around the lattice minimum.
/// Requires alpha_max >= 10 and 0 < step <= 0.01.
JStarMEstimate j_star_m(int m, const JStarConfig& config = {});

struct JStarEstimate {
  double value = 0.0;  // min(j*_1, j_{1,1})
  double error_bar = 0.0;
  double j11 = 0.0;
  JStarMEstimate j_star_1;

  /// value - error_bar, the figure used wherever a sound lower bound is needed.
  double lower_bound() const { return value - error_bar; }
};

JStarEstimate j_star(const JStarConfig& config = {});

// ---------------------------------------------------------------------------
// Mode scans.

struct ModeRoot {
  int m = 0;
  int n_ell = 0;
  double ell = 0.0;
  double lambda = 0.0;
};

struct ScanConfig {
  int m_max = 8;
  int n_ell_max = 8;
  double lambda_max = 0.0;  // 0: family default
  double step = 0.01;       // lambda step, in units of 1/(radial length)
  unsigned threads = 1;
};

/// Positive roots lambda in (|ell|, lambda_max] of the disk relation over
/// m in [-m_max, m_max], n_ell in [-n_ell_max, n_ell_max] \ {0}, sorted by
/// lambda. Default lambda_max = 12/a; the lambda step is `step`/a.
std::vector<ModeRoot> scan_disk_roots(double a, double length, const ScanConfig& config);

/// As scan_disk_roots for the annulus determinant. Default
/// lambda_max = 3 pi/(b-a); the lambda step is `step`/(b-a).
std::vector<ModeRoot> scan_annulus_roots(const AnnulusGeometry& geom, double length, const ScanConfig& config);

// ---------------------------------------------------------------------------
// The m = 1 annulus family lambda = pi/(b-a), ell = r lambda.

/// Determinant
///   | (1+r)J_0(mu a) + (1-r)J_2(mu a)   (1+r)Y_0(mu a) + (1-r)Y_2(mu a) |
///   | (1+r)J_0(mu b) + (1-r)J_2(mu b)   (1+r)Y_0(mu b) + (1-r)Y_2(mu b) |
/// with mu = sqrt(1 - r^2) pi / (b - a). Requires 0 < a < b, 0 < r < 1.
double g(double r, double b, double a);

/// lim_{a -> b-} g(r, b, a) / (b - a) = 8 r^2 sin(pi sqrt(1-r^2)) / (pi^2 sqrt(1-r^2) b).
double g_slope_limit(double r, double b);

/// sqrt(1 - (287/100)^2 / pi^2), the ratio for which g is certified to be
/// negative near a = 0.
double certified_ratio();

struct Theorem2Parameters {
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;
  double length = 0.0;  // L = 2 (b - a) / r
  double lambda = 0.0;  // pi / (b - a)
  double ell = 0.0;     // 2 pi / L = r lambda
  double g_residual = 0.0;
  /// Other sign changes of g(r, b, .) found by the scan (midpoints).
  std::vector<double> alternative_roots;
};

/// Thrown when g(r, b, .) shows no sign change on the scan.
class ScanFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest root a of g(r0, b, .) with r0 = certified_ratio(), from a scan of
/// 4000 cells on (0, b) and bisection; |g| at the root is below 1e-8.
Theorem2Parameters find_theorem2_parameters(double b);

}  // namespace curlspec::antisym
