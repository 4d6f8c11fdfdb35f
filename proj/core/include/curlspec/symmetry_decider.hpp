#pragma once

#include <string>
#include <variant>

#include "curlspec/antisym_tube.hpp"
#include "curlspec/cross_section.hpp"

/// Comparison of symmetric and antisymmetric first-eigenvalue bounds. The
/// first positive Amperian eigenvalue is the smaller of the symmetric and the
/// antisymmetric one, so certified one-sided bounds decide which side wins.
namespace curlspec::decider {

struct StandardTorus {
  double a = 0.0;  // minor radius
  double R = 0.0;  // major radius
};

/// Annulus A_{a,b} times a period n L.
struct AnnularCylinderFamily {
  double a = 0.0;
  double b = 0.0;
  double L = 0.0;
  int n = 1;
};

using TorusSpec = std::variant<StandardTorus, AnnularCylinderFamily>;

/// Meridian cross-section of the spec (a disk or the rectangle [a,b] x [-nL/2, nL/2]).
CrossSection cross_section(const TorusSpec& spec);

/// Throws std::invalid_argument for an invalid spec.
void validate(const TorusSpec& spec);

enum class Verdict { Symmetric, Asymmetric, Inconclusive };

std::string to_string(Verdict v);

struct SymmetryVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double sym_bound = 0.0;
  double antisym_bound = 0.0;
  double margin = 0.0;  // |sym_bound - antisym_bound|
};

struct Theorem1Bounds {
  double sym_upper = 0.0;
  double antisym_lower = 0.0;
};

/// sym_upper = sqrt(j01^2/a^2 + 3/(4(R+a)^2)),
/// antisym_lower = sqrt((R-a)/(R+a)) j_star_lower / a. Requires 0 < a < R.
Theorem1Bounds theorem1_bounds(double a, double R, double j_star_lower);

/// Smallest a in (0, R) with sym_upper >= antisym_lower, by bisection to
/// 1e-12 R. Throws std::runtime_error if the bounds never meet.
double crossover_radius(double R, double j_star_lower);

struct Theorem2Bounds {
  double a = 0.0;
  double b = 0.0;
  double L = 0.0;
  double sym_lower = 0.0;
  /// Least n with antisym_upper(n) <= sym_lower.
  int n_threshold = 0;

  /// (pi^2 b^2 / (n L)^2 + 1) pi / (b - a).
  double antisym_upper(int n) const;
};

/// Throws std::invalid_argument for bad geometry and std::domain_error when
/// |g(2(b-a)/L, b, a)| exceeds `g_tolerance`.
Theorem2Bounds theorem2_bounds(double a, double b, double L, double g_tolerance = 1e-8);
Theorem2Bounds theorem2_bounds(const antisym::Theorem2Parameters& params, double g_tolerance = 1e-8);

struct DeciderConfig {
  double margin_floor = 1e-6;
  double g_tolerance = 1e-8;
  /// Residual allowed for the annulus determinant at lambda = pi/(b-a)
  /// before an Asymmetric verdict is downgraded.
  double determinant_tolerance = 1e-6;
};

/// Verdict from the bounds alone. A standard torus is never declared
/// Asymmetric. A family whose (a, b, L) is not a root of g is Inconclusive.
SymmetryVerdict decide(const TorusSpec& spec, const antisym::JStarEstimate& j_star,
                       const DeciderConfig& config = {});

/// JSON object {verdict, sym_bound, antisym_bound, margin, inputs, j_star}.
std::string to_json(const SymmetryVerdict& verdict, const TorusSpec& spec,
                               const antisym::JStarEstimate& j_star);

}  // namespace curlspec::decider
