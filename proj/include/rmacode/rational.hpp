#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rmacode {

using BigInt = boost::multiprecision::cpp_int;

// Exact binomial coefficient; zero for k out of range.
BigInt binomial(std::int64_t n, std::int64_t k);

// Reduced rational with positive denominator. All probabilities flow through
// this type; floating point only appears at presentation time.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt numerator, BigInt denominator);

  static Rational from_count(std::uint64_t count, const BigInt& total) {
    return Rational(BigInt(count), total);
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  // "num/den", always with the denominator, e.g. "1/2", "0/1", "1/1".
  std::string to_fraction_string() const;

  // Fixed-point decimal, round half to even. to_decimal(4) of 2/5 is "0.4000".
  std::string to_decimal(int places = 4) const;

  double to_double() const;

  friend bool operator==(const Rational&, const Rational&) = default;

  std::strong_ordering operator<=>(const Rational& other) const {
    const BigInt lhs = num_ * other.den_;
    const BigInt rhs = other.num_ * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  BigInt num_;
  BigInt den_;
};

}  // namespace rmacode
