#include "curlspec/antisym_tube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "curlspec/bessel.hpp"
#include "curlspec/parallel.hpp"

namespace curlspec::antisym {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// Bisect f on [lo, hi] given f(lo), f(hi) of opposite sign.
template <class F>
double bisect(F&& f, double lo, double hi, double flo, double abs_tol) {
  for (int it = 0; it < 200 && hi - lo > abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool opposite(double x, double y) { return (x < 0.0 && y > 0.0) || (x > 0.0 && y < 0.0); }

// (lambda + ell) J_{m-1}(mu a) + (lambda - ell) J_{m+1}(mu a); same sign as the
// disk relation for lambda > |ell|.
double disk_reduced(double a, int m, double ell, double lambda) {
  const double mu = std::sqrt((lambda - ell) * (lambda + ell));
  const double x = mu * a;
  return (lambda + ell) * bessel::j(m - 1, x) + (lambda - ell) * bessel::j(m + 1, x);
}

double reduced_entry(bool use_y, int m, double lambda, double ell, double x) {
  if (use_y) return (lambda + ell) * bessel::y(m - 1, x) + (lambda - ell) * bessel::y(m + 1, x);
  return (lambda + ell) * bessel::j(m - 1, x) + (lambda - ell) * bessel::j(m + 1, x);
}

void check_geometry(const AnnulusGeometry& g) {
  if (!(g.a > 0.0 && g.a < g.b) || !std::isfinite(g.b)) {
    throw std::invalid_argument("annulus requires 0 < a < b");
  }
}

double annulus_reduced_raw(const AnnulusGeometry& geom, int m, double ell, double lambda) {
  const double mu = std::sqrt((lambda - ell) * (lambda + ell));
  const double ja = reduced_entry(false, m, lambda, ell, mu * geom.a);
  const double ya = reduced_entry(true, m, lambda, ell, mu * geom.a);
  const double jb = reduced_entry(false, m, lambda, ell, mu * geom.b);
  const double yb = reduced_entry(true, m, lambda, ell, mu * geom.b);
  return ja * yb - ya * jb;
}

// First zero of F_m(alpha, .) above kappa0 on a lattice of spacing `step`.
std::optional<double> first_zero_in_column(int m, double alpha, double kappa0, double step, double kappa_max) {
  const auto f = [&](double kappa) { return dispersion_f(m, {alpha, kappa}); };
  double lo = kappa0;
  double flo = f(lo);
  while (lo < kappa_max) {
    const double hi = std::min(lo + step, kappa_max);
    const double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if (opposite(flo, fhi)) return bisect(f, lo, hi, flo, 1e-13);
    lo = hi;
    flo = fhi;
  }
  return std::nullopt;
}

struct PairRoots {
  int m = 0;
  int n_ell = 0;
  double ell = 0.0;
  std::vector<double> lambdas;
};

template <class F>
std::vector<double> scan_lambda(F&& f, double lambda_lo, double lambda_max, double step) {
  std::vector<double> roots;
  if (!(lambda_lo < lambda_max)) return roots;
  double lo = lambda_lo;
  double flo = f(lo);
  while (lo < lambda_max) {
    const double hi = std::min(lo + step, lambda_max);
    const double fhi = f(hi);
    if (fhi == 0.0) {
      roots.push_back(hi);
    } else if (flo != 0.0 && opposite(flo, fhi)) {
      roots.push_back(bisect(f, lo, hi, flo, 1e-13 * hi));
    }
    lo = hi;
    flo = fhi;
  }
  return roots;
}

std::vector<ModeRoot> collect(std::vector<PairRoots>& pairs) {
  std::vector<ModeRoot> out;
  for (const auto& p : pairs) {
    for (double l : p.lambdas) out.push_back({p.m, p.n_ell, p.ell, l});
  }
  std::sort(out.begin(), out.end(), [](const ModeRoot& x, const ModeRoot& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    if (x.m != y.m) return x.m < y.m;
    return x.n_ell < y.n_ell;
  });
  return out;
}

template <class Reduced>
std::vector<ModeRoot> scan_modes(double length, const ScanConfig& config, double lambda_max, double step,
                                 Reduced&& reduced) {
  require_positive(length, "tube length");
  if (config.m_max < 0 || config.n_ell_max < 0) throw std::invalid_argument("mode caps must be non-negative");
  if (config.m_max >= bessel::kMaxOrder) throw std::out_of_range("m_max exceeds supported Bessel order");
  require_positive(step, "scan step");
  std::vector<PairRoots> pairs;
  for (int m = -config.m_max; m <= config.m_max; ++m) {
    for (int n = -config.n_ell_max; n <= config.n_ell_max; ++n) {
      if (n == 0) continue;
      const double ell = ModeIndex{n, m, length}.ell();
      if (std::abs(ell) >= lambda_max) continue;
      pairs.push_back({m, n, ell, {}});
    }
  }
  parallel_for(pairs.size(), resolve_thread_count(config.threads), [&](std::size_t i) {
    auto& p = pairs[i];
    const double start = std::abs(p.ell) * (1.0 + 1e-12) + 1e-12 * step;
    p.lambdas = scan_lambda([&](double l) { return reduced(p.m, p.ell, l); }, start, lambda_max, step);
  });
  return collect(pairs);
}

}  // namespace

double ModeIndex::ell() const {
  require_positive(length, "tube length");
  return 2.0 * kPi * n_ell / length;
}

DispersionPoint make_dispersion_point(double lambda, double ell) {
  if (!(lambda * lambda > ell * ell)) throw std::domain_error("dispersion point requires lambda^2 > ell^2");
  return {lambda, ell, std::sqrt((lambda - ell) * (lambda + ell))};
}

double disk_dispersion(double a, const ModeIndex& mode, double lambda) {
  require_positive(a, "disk radius");
  const auto p = make_dispersion_point(lambda, mode.ell());
  const double x = p.mu * a;
  return (lambda * mode.m / a) * bessel::j(mode.m, x) + p.ell * p.mu * bessel::j_prime(mode.m, x);
}

double dispersion_f(int m, FPlanePoint p) {
  if (!(p.kappa * p.kappa > p.alpha * p.alpha)) throw std::domain_error("F_m is defined only for kappa^2 > alpha^2");
  const double x = std::sqrt((p.kappa - p.alpha) * (p.kappa + p.alpha));
  return (p.kappa + p.alpha) / (p.kappa - p.alpha) * bessel::j(m - 1, x) + bessel::j(m + 1, x);
}

double annulus_determinant(const AnnulusGeometry& geom, const ModeIndex& mode, double lambda) {
  check_geometry(geom);
  const auto p = make_dispersion_point(lambda, mode.ell());
  const auto entry = [&](bool use_y, double c) {
    const double x = p.mu * c;
    const double z = use_y ? bessel::y(mode.m, x) : bessel::j(mode.m, x);
    const double dz = use_y ? bessel::y_prime(mode.m, x) : bessel::j_prime(mode.m, x);
    return (lambda * mode.m / c) * z + p.ell * p.mu * dz;
  };
  return entry(false, geom.a) * entry(true, geom.b) - entry(true, geom.a) * entry(false, geom.b);
}

double annulus_determinant_reduced(const AnnulusGeometry& geom, const ModeIndex& mode, double lambda) {
  check_geometry(geom);
  const auto p = make_dispersion_point(lambda, mode.ell());
  return annulus_reduced_raw(geom, mode.m, p.ell, lambda);
}

JStarMEstimate j_star_m(int m, const JStarConfig& config) {
  if (m < 1 || m >= bessel::kMaxOrder) throw std::invalid_argument("j_star_m requires 1 <= m < 64");
  if (!(config.alpha_max >= 10.0) || !std::isfinite(config.alpha_max)) {
    throw std::invalid_argument("alpha_max must be at least 10");
  }
  if (!(config.step > 0.0 && config.step <= 0.01)) throw std::invalid_argument("step must lie in (0, 0.01]");

  JStarMEstimate est;
  est.m = m;
  const double j_low = bessel::zero({m - 1, 1});
  est.lower_limit = j_low;
  est.truncation_bound = std::hypot(j_low, config.alpha_max);
  const double kappa_max = config.kappa_max > 0.0 ? config.kappa_max : est.truncation_bound + kPi;

  const auto columns = static_cast<std::size_t>(std::llround(2.0 * config.alpha_max / config.step)) + 1;
  std::vector<std::optional<double>> first(columns);
  const auto alpha_at = [&](std::size_t i) { return -config.alpha_max + config.step * static_cast<double>(i); };
  parallel_for(columns, resolve_thread_count(config.threads), [&](std::size_t i) {
    const double alpha = alpha_at(i);
    first[i] = first_zero_in_column(m, alpha, std::hypot(j_low, alpha), config.step, kappa_max);
  });

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < columns; ++i) {
    if (!first[i]) continue;
    est.first_zeros.push_back({alpha_at(i), *first[i]});
    if (!best || *first[i] < *first[*best]) best = i;
  }
  if (!best) {
    est.value = j_low;
    return est;
  }
  est.zeros_found = true;
  const double lattice_min = *first[*best];

  // Golden-section refinement of the column minimum in alpha.
  const auto phi = [&](double alpha) {
    const auto z = first_zero_in_column(m, alpha, std::hypot(j_low, alpha), config.step, kappa_max);
    return z ? *z : std::numeric_limits<double>::infinity();
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = alpha_at(*best) - config.step;
  double hi = alpha_at(*best) + config.step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = phi(x1);
  double f2 = phi(x2);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = phi(x2);
    }
  }
  const double alpha_ref = 0.5 * (lo + hi);
  const double refined = std::min({phi(alpha_ref), lattice_min, f1, f2});
  est.value = refined;
  est.alpha_at_min = refined == lattice_min ? alpha_at(*best) : alpha_ref;
  est.error_bar = (lattice_min - refined) + 1e-12;
  return est;
}

JStarEstimate j_star(const JStarConfig& config) {
  JStarEstimate out;
  out.j_star_1 = j_star_m(1, config);
  out.j11 = bessel::zero({1, 1});
  if (out.j_star_1.zeros_found && out.j_star_1.value < out.j11) {
    out.value = out.j_star_1.value;
    out.error_bar = out.j_star_1.error_bar;
  } else {
    out.value = out.j11;
    out.error_bar = 1e-12;
  }
  return out;
}

std::vector<ModeRoot> scan_disk_roots(double a, double length, const ScanConfig& config) {
  require_positive(a, "disk radius");
  const double lambda_max = config.lambda_max > 0.0 ? config.lambda_max : 12.0 / a;
  return scan_modes(length, config, lambda_max, config.step / a,
                    [&](int m, double ell, double l) { return disk_reduced(a, m, ell, l); });
}

std::vector<ModeRoot> scan_annulus_roots(const AnnulusGeometry& geom, double length, const ScanConfig& config) {
  check_geometry(geom);
  const double w = geom.b - geom.a;
  const double lambda_max = config.lambda_max > 0.0 ? config.lambda_max : 3.0 * kPi / w;
  return scan_modes(length, config, lambda_max, config.step / w,
                    [&](int m, double ell, double l) { return annulus_reduced_raw(geom, m, ell, l); });
}

double g(double r, double b, double a) {
  if (!(a > 0.0 && a < b) || !std::isfinite(b)) throw std::invalid_argument("g requires 0 < a < b");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("g requires 0 < r < 1");
  const double mu = std::sqrt(1.0 - r * r) * kPi / (b - a);
  const auto col = [&](bool use_y, double c) {
    const double x = mu * c;
    if (use_y) return (1.0 + r) * bessel::y(0, x) + (1.0 - r) * bessel::y(2, x);
    return (1.0 + r) * bessel::j(0, x) + (1.0 - r) * bessel::j(2, x);
  };
  return col(false, a) * col(true, b) - col(true, a) * col(false, b);
}

double g_slope_limit(double r, double b) {
  require_positive(b, "outer radius");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("g requires 0 < r < 1");
  const double s = std::sqrt(1.0 - r * r);
  return 8.0 * r * r * std::sin(kPi * s) / (kPi * kPi * s * b);
}

double certified_ratio() {
  const double s = 2.87;
  return std::sqrt(1.0 - s * s / (kPi * kPi));
}

Theorem2Parameters find_theorem2_parameters(double b) {
  require_positive(b, "outer radius");
  const double r = certified_ratio();
  constexpr int cells = 4000;
  const double a_lo = 1e-4 * b;
  const double a_hi = (1.0 - 1e-4) * b;
  const auto at = [&](int i) { return a_lo + (a_hi - a_lo) * i / cells; };
  const auto f = [&](double a) { return g(r, b, a); };

  std::vector<std::pair<double, double>> brackets;
  double prev = f(at(0));
  for (int i = 1; i <= cells; ++i) {
    const double cur = f(at(i));
    if (opposite(prev, cur) || cur == 0.0) brackets.emplace_back(at(i - 1), at(i));
    prev = cur;
  }
  if (brackets.empty()) throw ScanFailure("g(r0, b, a) has no sign change on (0, b)");

  Theorem2Parameters out;
  out.r = r;
  out.b = b;
  const auto [lo, hi] = brackets.front();
  out.a = bisect(f, lo, hi, f(lo), 1e-15 * b);
  out.g_residual = f(out.a);
  if (!(std::abs(out.g_residual) < 1e-8)) throw ScanFailure("bisection on g did not converge");
  for (std::size_t k = 1; k < brackets.size(); ++k) {
    out.alternative_roots.push_back(0.5 * (brackets[k].first + brackets[k].second));
  }
  out.lambda = kPi / (b - out.a);
  out.length = 2.0 * (b - out.a) / r;
  out.ell = 2.0 * kPi / out.length;
  return out;
}

}  // namespace curlspec::antisym
