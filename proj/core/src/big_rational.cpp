#include "curlspec/big_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace curlspec {

namespace {

BigInteger parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) throw std::invalid_argument("integer literal without digits");
  BigInteger value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("invalid digit in integer literal: " + std::string(text));
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInteger(-value) : value;
}

}  // namespace

BigRational::BigRational(long long value) : value_(value) {}

BigRational::BigRational(BigInteger numerator, BigInteger denominator) {
  if (denominator == 0) throw std::invalid_argument("BigRational: zero denominator");
  value_ = boost::multiprecision::cpp_rational(std::move(numerator), std::move(denominator));
}

BigRational BigRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_integer(text), 1);
  return BigRational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

BigInteger BigRational::numerator() const { return boost::multiprecision::numerator(value_); }
BigInteger BigRational::denominator() const { return boost::multiprecision::denominator(value_); }
std::string BigRational::numerator_string() const { return numerator().str(); }
std::string BigRational::denominator_string() const { return denominator().str(); }

std::string BigRational::to_string() const {
  const BigInteger den = denominator();
  if (den == 1) return numerator_string();
  return numerator_string() + "/" + den.str();
}

double BigRational::to_double() const { return value_.convert_to<double>(); }

int BigRational::sign() const { return value_.sign(); }

BigRational BigRational::abs() const { return sign() < 0 ? -*this : *this; }

BigRational BigRational::pow(unsigned exponent) const {
  BigRational result(1);
  BigRational base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("BigRational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

BigRational BigRational::operator-() const {
  BigRational out;
  out.value_ = -value_;
  return out;
}

bool operator==(const BigRational& lhs, const BigRational& rhs) { return lhs.value_ == rhs.value_; }

std::strong_ordering operator<=>(const BigRational& lhs, const BigRational& rhs) {
  if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
  if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInteger factorial(unsigned n) {
  BigInteger out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return out;
}

}  // namespace curlspec
