#pragma once

#include <vector>

#include "curlspec/big_rational.hpp"

/// Bessel functions of integer order: J_m, Y_m, their derivatives, positive
/// zeros of J_m, and exact-rational Taylor partial sums of J_n with a uniform
/// remainder bound on |x| <= 3.
///
/// Everything here is pure and thread-safe.
namespace curlspec::bessel {

/// Largest supported |order|.
inline constexpr int kMaxOrder = 64;

/// J_order(x). Negative orders use J_{-m} = (-1)^m J_m and negative
/// arguments J_m(-x) = (-1)^m J_m(x). Throws std::out_of_range for
/// |order| > kMaxOrder and std::domain_error for non-finite x.
double j(int order, double x);

/// Y_order(x) for x > 0. Negative orders use Y_{-m} = (-1)^m Y_m.
/// Throws std::domain_error for x <= 0.
double y(int order, double x);

/// J'_order(x) = (J_{order-1}(x) - J_{order+1}(x)) / 2.
double j_prime(int order, double x);
/// Y'_order(x) = (Y_{order-1}(x) - Y_{order+1}(x)) / 2.
double y_prime(int order, double x);

/// J_0(x), ..., J_{max_order}(x) for x >= 0, computed together.
std::vector<double> j_sequence(int max_order, double x);

/// Identifies the k-th positive zero j_{m,k} of J_m.
struct ZeroIndex {
  int m = 0;
  int k = 1;
};

/// j_{m,k}, by sign scan (step 0.05) and bisection down to adjacent doubles.
/// Requires 0 <= m <= kMaxOrder and k >= 1 (std::invalid_argument otherwise).
double zero(ZeroIndex index);

/// Exact Taylor partial sum
///   sum_{i=0}^{terms} (-1)^i / (i! (i+n)!) (x/2)^{2i+n}
/// of J_n at a rational argument.
struct SeriesRequest {
  int n = 0;
  int terms = 1;  // truncation index M >= 1
  BigRational x;
};

BigRational taylor_partial_sum(const SeriesRequest& request);

/// 18 (3/4)^{M+1} / (M+1)!, a bound on the tail of the J_n series after
/// index M, valid for every n >= 0 and |x| <= 3. Requires M >= 1.
BigRational taylor_remainder_bound(int terms);

}  // namespace curlspec::bessel
