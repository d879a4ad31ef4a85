#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bireg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& r);
double to_double(const Rational& r);

BigInt binomial(std::int64_t n, std::int64_t r);

// C(a, r) / C(b, r) in lowest terms; zero when r > a. Requires 0 <= r <= b.
Rational binomial_ratio(std::int64_t a, std::int64_t b, std::int64_t r);
// ln(C(a, r) / C(b, r)) via log-gamma; -inf when r > a.
double log_binomial_ratio(std::int64_t a, std::int64_t b, std::int64_t r);

// Exact test of x^p >= y^q for positive rationals.
bool pow_greater_equal(const Rational& x, unsigned p, const Rational& y, unsigned q);

}  // namespace bireg
