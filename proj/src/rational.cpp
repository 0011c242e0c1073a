#include "rmacode/rational.hpp"

#include <stdexcept>
#include <utility>

#include "rmacode/errors.hpp"

namespace rmacode {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw ParameterError("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::to_fraction_string() const {
  return num_.str() + "/" + den_.str();
}

std::string Rational::to_decimal(int places) const {
  if (places < 0) throw ParameterError("to_decimal: negative places");
  const bool negative = num_ < 0;
  BigInt abs_num = negative ? BigInt(-num_) : num_;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  BigInt scaled = abs_num * scale;
  BigInt q = scaled / den_;
  BigInt rem = scaled % den_;
  // round half to even
  const BigInt twice = rem * 2;
  if (twice > den_ || (twice == den_ && (q % 2) == 1)) ++q;
  BigInt whole = q / scale;
  BigInt frac = q % scale;
  std::string frac_str = frac.str();
  frac_str.insert(0, static_cast<std::size_t>(places) - frac_str.size(), '0');
  std::string out = (negative && q != 0) ? "-" : "";
  out += whole.str();
  if (places > 0) out += "." + frac_str;
  return out;
}

double Rational::to_double() const {
  return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
}

}  // namespace rmacode
