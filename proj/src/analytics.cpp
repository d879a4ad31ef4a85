#include "bireg/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bireg/error.hpp"

namespace bireg {

namespace {

bool use_exact(const GraphParams& params) {
  return std::max(params.n(), params.kn()) <= kExactLimit;
}

// C(a, r)/C(b, r), exact when requested.
ProbValue binomial_prob(std::int64_t a, std::int64_t b, std::int64_t r, bool exact) {
  ProbValue p;
  if (exact) {
    p.exact = binomial_ratio(a, b, r);
    p.value = to_double(*p.exact);
  } else {
    p.value = std::exp(log_binomial_ratio(a, b, r));
  }
  return p;
}

Rational rational_pow(const Rational& x, unsigned e) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  using boost::multiprecision::pow;
  return Rational(pow(numerator(x), e), pow(denominator(x), e));
}

}  // namespace

ThresholdValue threshold_c(const GraphParams& params) {
  const std::int64_t numerator = params.kd() * params.d();
  return {static_cast<double>(numerator) / static_cast<double>(params.n()) -
          std::log(static_cast<double>(params.kd()))};
}

PairExpectations pair_expectations(const GraphParams& params,
                                      std::optional<std::int64_t> b_size) {
  PairExpectations e;
  e.common_neighbors = params.n() == 1
                           ? Rational(0)
                           : Rational(params.kd() * (params.d() - 1), params.n() - 1);
  if (b_size) {
    if (*b_size < 0 || *b_size > params.kn()) {
      throw Error(ErrorCode::OutOfRange, "|B| = " + std::to_string(*b_size) +
                                             " outside [0, " + std::to_string(params.kn()) + "]");
    }
    e.hits_in_b = Rational(params.d() * *b_size, params.n());
  }
  return e;
}

ProbValue no_edge_exact(std::int64_t s, const GraphParams& params, Side side, bool conditioned) {
  const std::int64_t size = side == Side::In ? params.n() : params.kn();
  const std::int64_t degree = side == Side::In ? params.d() : params.kd();
  const std::int64_t limit = conditioned ? size - 1 : size;
  if (s < 0 || s > limit) {
    throw Error(ErrorCode::OutOfRange, "set size " + std::to_string(s) + " outside [0, " +
                                           std::to_string(limit) + "]");
  }
  if (conditioned) {
    return binomial_prob(size - 1 - s, size - 1, degree - 1, use_exact(params));
  }
  return binomial_prob(size - s, size, degree, use_exact(params));
}

NoEdgeBound no_edge_upper(std::int64_t s, std::int64_t t, const GraphParams& params, Side side,
                          bool conditioned) {
  const std::int64_t size = side == Side::In ? params.n() : params.kn();
  const std::int64_t degree = side == Side::In ? params.d() : params.kd();
  const std::int64_t other = side == Side::In ? params.kn() : params.n();
  if (s < 0 || s + degree > size) {
    throw Error(ErrorCode::HypothesisViolated,
                "need 0 <= s and s + " + std::to_string(degree) + " <= " +
                    std::to_string(size) + ", got s = " + std::to_string(s));
  }
  if (t < 0 || t > other) {
    throw Error(ErrorCode::HypothesisViolated,
                "t = " + std::to_string(t) + " outside [0, " + std::to_string(other) + "]");
  }
  const ProbValue single = no_edge_exact(s, params, side, conditioned);
  NoEdgeBound result;
  if (single.exact) {
    result.bound.upper_exact = rational_pow(*single.exact, static_cast<unsigned>(t));
    result.bound.upper = to_double(*result.bound.upper_exact);
  } else {
    result.bound.upper = t == 0 ? 1.0 : std::pow(single.value, static_cast<double>(t));
  }
  if (t == 1) result.bound.exact = single.exact;
  const double st = static_cast<double>(s) * static_cast<double>(t);
  result.exp_form =
      std::exp(-static_cast<double>(params.d()) * st / static_cast<double>(params.n()));
  // Conditioning leaves only degree-1 free endpoints among size-1 candidates.
  result.rigorous_form =
      conditioned
          ? (size == 1 ? 1.0 : std::exp(-static_cast<double>(degree - 1) * st / static_cast<double>(size - 1)))
          : std::exp(-static_cast<double>(degree) * st / static_cast<double>(size));
  constexpr double kTol = 1e-12;
  result.exp_form_dominates = result.bound.upper <= result.exp_form + kTol;
  return result;
}

AsymptoticValue isolated_prob_asymptotic(const GraphParams& params) {
  const double exponent =
      static_cast<double>(params.kd() * params.d()) / static_cast<double>(params.n());
  return {std::exp(-exponent),
          static_cast<double>(params.d()) <= std::pow(static_cast<double>(params.n()), 0.6)};
}

double er_matching_prob(double c) { return std::exp(-2.0 * std::exp(-c)); }

CommutativeDBounds commutative_d_bounds(const Rational& k, std::int64_t m, std::int64_t h) {
  if (k < 1 || m < 2 || h < 1) {
    throw Error(ErrorCode::InvalidArgument, "need k >= 1, m >= 2 and h >= 1");
  }
  const double kd = to_double(k);
  const double md = static_cast<double>(m);
  const double hd = static_cast<double>(h);
  const double scale = std::pow(kd, hd - 2.0) * md;
  CommutativeDBounds b;
  b.d_low = std::sqrt(scale * std::log(kd * md) / 3.0);
  b.d_high = 3.0 * std::sqrt(scale * std::log(hd * std::pow(kd, hd + 1.0) * md));
  b.d_high_exceeds_m = b.d_high > md;
  return b;
}

ProbabilityBound a_plus_bounds(const GraphParams& params) {
  const std::int64_t kn = params.kn();
  const std::int64_t kd = params.kd();
  if (2 * kd > kn) {
    throw Error(ErrorCode::OutOfRange, "lower bound needs 2kd <= kn, got kd = " +
                                           std::to_string(kd) + ", kn = " + std::to_string(kn));
  }
  ProbabilityBound b;
  // C(n-2, d-1)/C(n-1, d-1) = (n-d)/(n-1); n >= 2 follows from 2kd <= kn.
  if (use_exact(params)) {
    b.lower_exact = binomial_ratio(kn - kd, kn, kd);
    b.upper_exact = rational_pow(Rational(params.n() - params.d(), params.n() - 1),
                                 static_cast<unsigned>(kd));
    b.lower = to_double(*b.lower_exact);
    b.upper = to_double(*b.upper_exact);
  } else {
    b.lower = std::exp(log_binomial_ratio(kn - kd, kn, kd));
    b.upper = std::exp(static_cast<double>(kd) *
                       log_binomial_ratio(params.n() - 2, params.n() - 1, params.d() - 1));
  }
  return b;
}

double nonmatching_diagnostic(const GraphParams& params) {
  const double kd = static_cast<double>(params.kd());
  const double exponent =
      static_cast<double>(params.kd() * params.d()) / (2.0 * static_cast<double>(params.n()));
  return kd * kd * std::exp(-exponent);
}

ProbValue expected_a_minus(const GraphParams& params) {
  ProbValue single = no_edge_exact(params.kd() - 1, params, Side::In, true);
  ProbValue e;
  if (single.exact) {
    e.exact = *single.exact * params.kd();
    e.value = to_double(*e.exact);
  } else {
    e.value = single.value * static_cast<double>(params.kd());
  }
  return e;
}

ProbValue expected_q(const GraphParams& params) {
  const ProbValue out = no_edge_exact(params.kd(), params, Side::Out, false);
  const ProbValue in = no_edge_exact(params.kd(), params, Side::In, false);
  ProbValue e;
  if (out.exact && in.exact) {
    e.exact = (*out.exact + *in.exact) * params.kd();
    e.value = to_double(*e.exact);
  } else {
    e.value = (out.value + in.value) * static_cast<double>(params.kd());
  }
  return e;
}

}  // namespace bireg
