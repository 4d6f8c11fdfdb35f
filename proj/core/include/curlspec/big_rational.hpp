#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace curlspec {

using BigInteger = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long long value);  // NOLINT(google-explicit-constructor)
  BigRational(BigInteger numerator, BigInteger denominator);

  /// Parses "p/q", "p" or "-p/q" (decimal digits only). Throws
  /// std::invalid_argument on malformed input or a zero denominator.
  static BigRational parse(std::string_view text);

  BigInteger numerator() const;
  BigInteger denominator() const;
  std::string numerator_string() const;
  std::string denominator_string() const;
  /// "p/q", or just "p" when the denominator is one.
  std::string to_string() const;

  double to_double() const;
  int sign() const;
  BigRational abs() const;
  BigRational pow(unsigned exponent) const;

  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
  BigRational operator-() const;

  friend bool operator==(const BigRational& lhs, const BigRational& rhs);
  friend std::strong_ordering operator<=>(const BigRational& lhs, const BigRational& rhs);

 private:
  boost::multiprecision::cpp_rational value_{0};
};

BigInteger factorial(unsigned n);

}  // namespace curlspec
