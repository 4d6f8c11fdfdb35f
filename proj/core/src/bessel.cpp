#include "curlspec/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curlspec::bessel {

namespace {

// Below this argument the ascending series is used directly; every term is
// smaller than the previous one so there is no cancellation.
constexpr double kSeriesLimit = 2.0;
// Above this argument Hankel's expansion is accurate to machine precision
// (smallest term is of order exp(-2x)).
constexpr double kAsymptoticLimit = 25.0;
constexpr double kRescale = 1e250;

void check_order(int order) {
  if (order < -kMaxOrder || order > kMaxOrder) {
    throw std::out_of_range("Bessel order " + std::to_string(order) + " outside [-" +
                            std::to_string(kMaxOrder) + ", " + std::to_string(kMaxOrder) + "]");
  }
}

double series_j(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  const double q = -half * half;
  double sum = term;
  for (int i = 1; i < 200; ++i) {
    term *= q / (static_cast<double>(i) * (i + n));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized by
// J_0 + 2 sum J_{2k} = 1. Returns J_0..J_{max_order}.
std::vector<double> miller_sequence(int max_order, double x) {
  const double top = std::max(static_cast<double>(max_order), std::ceil(x));
  int start = static_cast<int>(top) + 20 + static_cast<int>(std::ceil(std::sqrt(60.0 * (top + 1.0))));
  start += start % 2;
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[static_cast<std::size_t>(start)] = 1e-300;
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    f[ku - 1] = k * two_over_x * f[ku] - f[ku + 1];
    if (std::abs(f[ku - 1]) > kRescale) {
      for (std::size_t i = ku - 1; i <= static_cast<std::size_t>(start); ++i) f[i] /= kRescale;
    }
  }
  double norm = f[0];
  for (std::size_t k = 2; k <= static_cast<std::size_t>(start); k += 2) norm += 2.0 * f[k];
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f[k] / norm;
  return out;
}

struct Hankel {
  double j;
  double y;
};

// Hankel's asymptotic expansion for J_nu and Y_nu, truncated at its smallest
// term.
Hankel hankel(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(a) > last) break;
    last = std::abs(a);
    const int r = k % 4;
    if (r == 1) q += a;
    else if (r == 2) p -= a;
    else if (r == 3) q -= a;
    else p += a;
    if (last < 1e-18) break;
  }
  const double phase = (0.5 * nu + 0.25) * std::numbers::pi;
  const double c = std::cos(x) * std::cos(phase) + std::sin(x) * std::sin(phase);
  const double s = std::sin(x) * std::cos(phase) - std::cos(x) * std::sin(phase);
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

double j_nonneg(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= kSeriesLimit) return series_j(n, x);
  if (x > kAsymptoticLimit && n <= x) {
    double prev = hankel(0, x).j;
    if (n == 0) return prev;
    double cur = hankel(1, x).j;
    for (int k = 1; k < n; ++k) {
      const double next = (2.0 * k / x) * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  return miller_sequence(n, x)[static_cast<std::size_t>(n)];
}

// Y_0 and Y_1 from Neumann series in J_k:
//   Y_0 = (2/pi)(ln(x/2)+gamma) J_0 - (4/pi) sum_{k>=1} (-1)^k J_{2k}/k
//   Y_1 = -Y_0' = -(2/pi) J_0/x + (2/pi)(ln(x/2)+gamma) J_1
//                 + (2/pi) sum_{k>=1} (-1)^k (J_{2k-1} - J_{2k+1})/k
std::pair<double, double> y01(double x) {
  if (x > kAsymptoticLimit) return {hankel(0, x).y, hankel(1, x).y};
  const int count = static_cast<int>(std::ceil(x)) + 60;
  const std::vector<double> jk = j_sequence(count + 1, x);
  const double lg = std::log(0.5 * x) + std::numbers::egamma;
  double s0 = 0.0;
  double s1 = 0.0;
  for (int k = count / 2; k >= 1; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const auto i = static_cast<std::size_t>(2 * k);
    s0 += sign * jk[i] / k;
    s1 += sign * (jk[i - 1] - jk[i + 1]) / k;
  }
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  const double y0 = two_over_pi * (lg * jk[0] - 2.0 * s0);
  const double y1 = two_over_pi * (-jk[0] / x + lg * jk[1] + s1);
  return {y0, y1};
}

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// Any integer order, no range check.
double j_signed(int order, double x) {
  const int n = std::abs(order);
  double sign = order < 0 ? parity(n) : 1.0;
  if (x < 0.0) {
    x = -x;
    sign *= parity(n);
  }
  return sign * j_nonneg(n, x);
}

}  // namespace

std::vector<double> j_sequence(int max_order, double x) {
  if (max_order < 0) throw std::invalid_argument("j_sequence: negative order");
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("j_sequence: x must be finite and >= 0");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x <= kSeriesLimit) {
    for (int k = 0; k <= max_order; ++k) out[static_cast<std::size_t>(k)] = series_j(k, x);
    return out;
  }
  return miller_sequence(max_order, x);
}

double j(int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw std::domain_error("bessel::j: non-finite argument");
  return j_signed(order, x);
}

double y(int order, double x) {
  check_order(order);
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel::y: requires finite x > 0");
  const int n = std::abs(order);
  const double sign = order < 0 ? parity(n) : 1.0;
  auto [prev, cur] = y01(x);
  if (n == 0) return sign * prev;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k / x) * cur - prev;
    prev = cur;
    cur = next;
  }
  return sign * cur;
}

double j_prime(int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw std::domain_error("bessel::j_prime: non-finite argument");
  return 0.5 * (j_signed(order - 1, x) - j_signed(order + 1, x));
}

double y_prime(int order, double x) {
  check_order(order);
  if (std::abs(order) == kMaxOrder) {
    // Y'_m = Y_{m-1} - (m/x) Y_m avoids order kMaxOrder + 1.
    const double m = order;
    return order > 0 ? y(order - 1, x) - (m / x) * y(order, x) : (m / x) * y(order, x) - y(order + 1, x);
  }
  return 0.5 * (y(order - 1, x) - y(order + 1, x));
}

double zero(ZeroIndex index) {
  if (index.m < 0 || index.m > kMaxOrder) throw std::invalid_argument("bessel::zero: order out of range");
  if (index.k < 1) throw std::invalid_argument("bessel::zero: k must be >= 1");
  constexpr double step = 0.05;
  // J_m > 0 on (0, j_{m,1}) and j_{m,1} > m.
  double lo = index.m == 0 ? step : static_cast<double>(index.m);
  double f_lo = j(index.m, lo);
  int found = 0;
  for (;;) {
    const double hi = lo + step;
    const double f_hi = j(index.m, hi);
    if (f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0)) {
      if (++found == index.k) {
        if (f_hi == 0.0) return hi;
        double a = lo;
        double b = hi;
        double fa = f_lo;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          const double fm = j(index.m, mid);
          if (fm == 0.0) return mid;
          if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        return 0.5 * (a + b);
      }
    }
    lo = hi;
    f_lo = f_hi;
  }
}

BigRational taylor_partial_sum(const SeriesRequest& request) {
  if (request.n < 0) throw std::invalid_argument("taylor_partial_sum: n must be >= 0");
  if (request.terms < 1) throw std::invalid_argument("taylor_partial_sum: M must be >= 1");
  const BigRational half = request.x / BigRational(2);
  const BigRational half_sq = half * half;
  BigRational power = half.pow(static_cast<unsigned>(request.n));
  BigRational sum;
  for (int i = 0; i <= request.terms; ++i) {
    const BigInteger denom =
        factorial(static_cast<unsigned>(i)) * factorial(static_cast<unsigned>(i + request.n));
    BigRational term = power / BigRational(denom, 1);
    if (i % 2 == 1) term = -term;
    sum += term;
    power *= half_sq;
  }
  return sum;
}

BigRational taylor_remainder_bound(int terms) {
  if (terms < 1) throw std::invalid_argument("taylor_remainder_bound: M must be >= 1");
  const auto next = static_cast<unsigned>(terms + 1);
  return BigRational(18) * BigRational(3, 4).pow(next) / BigRational(factorial(next), 1);
}

}  // namespace curlspec::bessel
