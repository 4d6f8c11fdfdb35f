#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "curlspec/big_rational.hpp"

/// Exact-rational certificate that
///
///   (1+r) J_0(s) + (1-r) J_2(s) < 0,   r = sqrt(1 - s^2/pi^2),
///
/// built only from Taylor partial sums, the uniform remainder bound and a
/// rational lower bound for pi. No floating point enters the verdict.
namespace curlspec::exact {

/// Rational stand-in used for pi in the r >= 2/5 check (pi > 157/50).
BigRational pi_lower_bound();

struct Hypothesis {
  std::string name;
  std::string statement;
  bool holds = false;
};

struct NegativityCertificate {
  BigRational s;
  int terms = 0;  // truncation index M
  /// 1 - s^2/(157/50)^2 - (2/5)^2; positive implies r >= 2/5.
  BigRational r_lower_check;
  BigRational sum_j0;
  BigRational sum_j2;
  /// 36 (3/4)^{M+1} / (M+1)!: twice the single-series remainder bound.
  BigRational remainder_term;
  /// 7/5 sum_j0 + 3/5 sum_j2 + remainder_term.
  BigRational combined;
  bool verdict = false;

  std::vector<Hypothesis> hypotheses() const;
};

/// Runs the exact chain for a given s in (0, 3] and M >= 1. A false verdict is
/// a valid outcome. Throws std::invalid_argument outside the domain.
NegativityCertificate certify_negativity(const BigRational& s, int terms);

/// The reference instance s = 287/100, M = 5.
NegativityCertificate reference_certificate();

/// Expected exact values of the reference instance, keyed by value name.
std::map<std::string, BigRational> reference_golden_values();

/// Value names in certificate order, paired with the values.
std::vector<std::pair<std::string, BigRational>> certificate_values(const NegativityCertificate& cert);

/// JSON: {s, M, pi_lower_bound, hypotheses: [{name, statement, holds}],
///        values: [{name, num, den}], verdict}
std::string to_json(const NegativityCertificate& cert);

/// Reads {"values": [{name, num, den}, ...]} (the same shape to_json writes).
/// Throws std::invalid_argument on malformed input.
std::map<std::string, BigRational> parse_golden_values(std::string_view json_text);

/// Names of golden entries that are missing from, or differ from, the
/// certificate. Empty means every golden value matched bit for bit.
std::vector<std::string> golden_mismatches(const NegativityCertificate& cert,
                                           const std::map<std::string, BigRational>& golden);

/// Checks m! >= (2/9) 3^m exactly for every 2 <= m <= max_m.
bool factorial_lower_bound_holds(int max_m);

}  // namespace curlspec::exact
