#include "bireg/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bireg/error.hpp"

namespace bireg {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

Rational binomial_ratio(std::int64_t a, std::int64_t b, std::int64_t r) {
  if (r < 0 || r > b || a < 0) {
    throw Error(ErrorCode::OutOfRange, "binomial ratio C(" + std::to_string(a) + "," +
                                           std::to_string(r) + ")/C(" + std::to_string(b) +
                                           "," + std::to_string(r) + ") undefined");
  }
  return Rational(binomial(a, r), binomial(b, r));
}

double log_binomial_ratio(std::int64_t a, std::int64_t b, std::int64_t r) {
  if (r < 0 || r > b || a < 0) {
    throw Error(ErrorCode::OutOfRange, "log binomial ratio undefined");
  }
  if (r > a) return -std::numeric_limits<double>::infinity();
  auto lchoose = [](double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
  };
  return lchoose(static_cast<double>(a), static_cast<double>(r)) -
         lchoose(static_cast<double>(b), static_cast<double>(r));
}

bool pow_greater_equal(const Rational& x, unsigned p, const Rational& y, unsigned q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  using boost::multiprecision::pow;
  // (a/b)^p >= (c/e)^q  <=>  a^p e^q >= c^q b^p  for positive b, e.
  const BigInt lhs = pow(numerator(x), p) * pow(denominator(y), q);
  const BigInt rhs = pow(numerator(y), q) * pow(denominator(x), p);
  return lhs >= rhs;
}

}  // namespace bireg
