#include "curlspec/symmetry_decider.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "curlspec/bessel.hpp"

namespace curlspec::decider {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double j01() {
  static const double value = bessel::zero({0, 1});
  return value;
}

void check_torus(double a, double R) {
  if (!(a > 0.0 && a < R) || !std::isfinite(R)) throw std::invalid_argument("standard torus requires 0 < a < R");
}

void check_family(const AnnularCylinderFamily& f) {
  if (!(f.a > 0.0 && f.a < f.b) || !std::isfinite(f.b)) throw std::invalid_argument("annulus requires 0 < a < b");
  if (!(f.L > 0.0) || !std::isfinite(f.L)) throw std::invalid_argument("period L must be positive");
  if (f.n < 1) throw std::invalid_argument("period multiple n must be at least 1");
}

SymmetryVerdict compare(double sym, double antisym, Verdict if_separated, double floor) {
  SymmetryVerdict out;
  out.sym_bound = sym;
  out.antisym_bound = antisym;
  out.margin = std::abs(sym - antisym);
  const bool separated = if_separated == Verdict::Symmetric ? sym < antisym : sym > antisym;
  out.verdict = separated && out.margin > floor ? if_separated : Verdict::Inconclusive;
  return out;
}

}  // namespace

void validate(const TorusSpec& spec) {
  std::visit(Overloaded{[](const StandardTorus& t) { check_torus(t.a, t.R); },
                        [](const AnnularCylinderFamily& f) { check_family(f); }},
             spec);
}

CrossSection cross_section(const TorusSpec& spec) {
  validate(spec);
  return std::visit(Overloaded{[](const StandardTorus& t) { return CrossSection::disk(t.R, t.a); },
                               [](const AnnularCylinderFamily& f) {
                                 return CrossSection::centered_rectangle(f.a, f.b, f.n * f.L);
                               }},
                    spec);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Symmetric:
      return "Symmetric";
    case Verdict::Asymmetric:
      return "Asymmetric";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

Theorem1Bounds theorem1_bounds(double a, double R, double j_star_lower) {
  check_torus(a, R);
  if (!(j_star_lower > 0.0)) throw std::invalid_argument("j* lower bound must be positive");
  const double z = j01();
  Theorem1Bounds out;
  out.sym_upper = std::sqrt(z * z / (a * a) + 3.0 / (4.0 * (R + a) * (R + a)));
  out.antisym_lower = std::sqrt((R - a) / (R + a)) * j_star_lower / a;
  return out;
}

double crossover_radius(double R, double j_star_lower) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("major radius must be positive");
  const auto gap = [&](double a) {
    const auto b = theorem1_bounds(a, R, j_star_lower);
    return b.sym_upper - b.antisym_lower;
  };
  // gap < 0 for small a when j* > j01; antisym_lower -> 0 as a -> R.
  double lo = 1e-9 * R;
  double hi = (1.0 - 1e-12) * R;
  if (gap(lo) >= 0.0) return lo;
  if (gap(hi) < 0.0) throw std::runtime_error("theorem 1 bounds do not cross on (0, R)");
  // Smallest crossing: step up from lo before bisecting.
  constexpr int cells = 1000;
  for (int i = 1; i <= cells; ++i) {
    const double a = lo + (hi - lo) * i / cells;
    if (gap(a) >= 0.0) {
      hi = a;
      break;
    }
    lo = a;
  }
  while (hi - lo > 1e-12 * R) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double Theorem2Bounds::antisym_upper(int n) const {
  if (n < 1) throw std::invalid_argument("period multiple n must be at least 1");
  const double nl = n * L;
  return (kPi * kPi * b * b / (nl * nl) + 1.0) * kPi / (b - a);
}

Theorem2Bounds theorem2_bounds(double a, double b, double L, double g_tolerance) {
  check_family({a, b, L, 1});
  const double r = 2.0 * (b - a) / L;
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("2(b-a)/L must lie in (0, 1)");
  const double residual = antisym::g(r, b, a);
  if (!(std::abs(residual) <= g_tolerance)) {
    throw std::domain_error("(a, b, L) is not a root of g: residual " + std::to_string(residual));
  }
  Theorem2Bounds out;
  out.a = a;
  out.b = b;
  out.L = L;
  out.sym_lower = std::sqrt(kPi * kPi / ((b - a) * (b - a)) + 3.0 / (4.0 * b * b));
  // antisym_upper(n) <= sym_lower  <=>  n >= pi b / (L sqrt(sym_lower (b-a)/pi - 1)).
  const double excess = out.sym_lower * (b - a) / kPi - 1.0;
  int n = std::max(1, static_cast<int>(std::floor(kPi * b / (L * std::sqrt(excess)))));
  while (n > 1 && out.antisym_upper(n - 1) <= out.sym_lower) --n;
  while (out.antisym_upper(n) > out.sym_lower) ++n;
  out.n_threshold = n;
  return out;
}

Theorem2Bounds theorem2_bounds(const antisym::Theorem2Parameters& params, double g_tolerance) {
  return theorem2_bounds(params.a, params.b, params.length, g_tolerance);
}

SymmetryVerdict decide(const TorusSpec& spec, const antisym::JStarEstimate& j_star, const DeciderConfig& config) {
  validate(spec);
  if (const auto* t = std::get_if<StandardTorus>(&spec)) {
    const auto b = theorem1_bounds(t->a, t->R, j_star.lower_bound());
    const auto out = compare(b.sym_upper, b.antisym_lower, Verdict::Symmetric, config.margin_floor);
    if (out.verdict == Verdict::Asymmetric) throw std::logic_error("standard torus declared asymmetric");
    return out;
  }
  const auto& f = std::get<AnnularCylinderFamily>(spec);
  const double w = f.b - f.a;
  const double lambda = kPi / w;
  const double sym_lower = std::sqrt(lambda * lambda + 3.0 / (4.0 * f.b * f.b));
  const double nl = f.n * f.L;
  const double antisym_upper = (kPi * kPi * f.b * f.b / (nl * nl) + 1.0) * lambda;

  Theorem2Bounds bounds;
  try {
    bounds = theorem2_bounds(f.a, f.b, f.L, config.g_tolerance);
  } catch (const std::domain_error&) {
    return compare(sym_lower, antisym_upper, Verdict::Asymmetric, std::numeric_limits<double>::infinity());
  }
  const antisym::ModeIndex mode{f.n, 1, nl};
  const double det = antisym::annulus_determinant({f.a, f.b}, mode, lambda);
  const double floor = std::abs(det) <= config.determinant_tolerance ? config.margin_floor
                                                                    : std::numeric_limits<double>::infinity();
  return compare(bounds.sym_lower, bounds.antisym_upper(f.n), Verdict::Asymmetric, floor);
}

std::string to_json(const SymmetryVerdict& verdict, const TorusSpec& spec, const antisym::JStarEstimate& j_star) {
  nlohmann::ordered_json out;
  out["verdict"] = to_string(verdict.verdict);
  out["sym_bound"] = verdict.sym_bound;
  out["antisym_bound"] = verdict.antisym_bound;
  out["margin"] = verdict.margin;
  std::visit(Overloaded{[&](const StandardTorus& t) {
                          out["inputs"] = {{"kind", "standard_torus"}, {"a", t.a}, {"R", t.R}};
                        },
                        [&](const AnnularCylinderFamily& f) {
                          out["inputs"] = {{"kind", "annular_cylinder"}, {"a", f.a}, {"b", f.b}, {"L", f.L}, {"n", f.n}};
                        }},
             spec);
  out["j_star"] = {{"source", "sign-change scan of F_1 with bisection and golden-section refinement"},
                   {"estimate", j_star.value},
                   {"error_bar", j_star.error_bar},
                   {"lower_bound_used", j_star.lower_bound()},
                   {"j11", j_star.j11},
                   {"alpha_at_min", j_star.j_star_1.alpha_at_min}};
  return out.dump(2);
}

}  // namespace curlspec::decider
