#pragma once

#include <cstdint>
#include <optional>

#include "bireg/params.hpp"
#include "bireg/rational.hpp"

namespace bireg {

// Closed-form probabilities and expectations for G(k, n, d). Binomial ratios
// are exact rationals while max(n, kn) <= kExactLimit and log-gamma doubles
// beyond that.
inline constexpr std::int64_t kExactLimit = 1000;

struct ThresholdValue {
  double c = 0.0;
};

// c = kd^2/n - ln(kd), with the numerator (kd)*d formed in integers.
ThresholdValue threshold_c(const GraphParams& params);

struct ProbValue {
  std::optional<Rational> exact;
  double value = 0.0;
};

struct PairExpectations {
  Rational common_neighbors;             // E|Gamma(y) & Gamma(y')| = kd(d-1)/(n-1)
  std::optional<Rational> hits_in_b;     // E|Gamma(y) & B| = d|B|/n
};

// Throws OutOfRange when b_size > kn. For n = 1 the first value is 0.
PairExpectations pair_expectations(const GraphParams& params,
                                      std::optional<std::int64_t> b_size = std::nullopt);

enum class Side {
  In,   // Pr(Gamma^-(z) misses a set S of s vertices of Y)
  Out,  // Pr(Gamma(y) misses a set T of s vertices of Z)
};

// Unconditioned: C(N-s, D)/C(N, D). Conditioned on the edge y->z (the fixed
// endpoint excluded from the set): C(N-1-s, D-1)/C(N-1, D-1). (N, D) is (n, d)
// for In and (kn, kd) for Out. Throws OutOfRange outside 0 <= s <= N (N-1).
ProbValue no_edge_exact(std::int64_t s, const GraphParams& params, Side side, bool conditioned);

struct ProbabilityBound {
  std::optional<double> lower;
  double upper = 1.0;
  std::optional<Rational> lower_exact;
  std::optional<Rational> upper_exact;
  std::optional<Rational> exact;
};

struct NoEdgeBound {
  ProbabilityBound bound;     // upper = no_edge_exact(s)^t
  double exp_form = 1.0;      // exp(-d s t / n), the asymptotic leading term
  double rigorous_form = 1.0; // finite-n exponential bound that the product never exceeds
  bool exp_form_dominates = true;
};

// Bound on Pr(no edge between a set of size s and a set of size t). For In,
// s counts Y-vertices and t counts Z-vertices, with hypothesis s + d <= n; for
// Out the roles swap and the hypothesis is s + kd <= kn. Throws
// HypothesisViolated otherwise.
NoEdgeBound no_edge_upper(std::int64_t s, std::int64_t t, const GraphParams& params, Side side,
                          bool conditioned);

struct AsymptoticValue {
  double value = 0.0;
  bool in_regime = false;  // d <= n^0.6; informational only
};

// exp(-kd^2/n).
AsymptoticValue isolated_prob_asymptotic(const GraphParams& params);

// exp(-2 e^{-c}).
double er_matching_prob(double c);

struct CommutativeDBounds {
  double d_low = 0.0;
  double d_high = 0.0;
  bool d_high_exceeds_m = false;
};

// d_low = sqrt(k^{h-2} m ln(km) / 3), d_high = 3 sqrt(k^{h-2} m ln(h k^{h+1} m)).
// Throws InvalidArgument unless k >= 1, m >= 2, h >= 1.
CommutativeDBounds commutative_d_bounds(const Rational& k, std::int64_t m, std::int64_t h);

// C(kn-kd, kd)/C(kn, kd) <= Pr(Gamma(y) & Gamma(y') empty) <= ((n-d)/(n-1))^kd.
// Throws OutOfRange unless 2 kd <= kn.
ProbabilityBound a_plus_bounds(const GraphParams& params);

// (kd)^2 exp(-kd^2 / 2n): order of the non-matching probability once
// c >= 5 ln(kd).
double nonmatching_diagnostic(const GraphParams& params);

// E(A^-) = kd * Pr(Gamma^-(z) & A = {y}) for |A| = kd, y in A, z in Gamma(y).
ProbValue expected_a_minus(const GraphParams& params);
// E(Q) = kd (Pr(Gamma(y) & B empty) + Pr(Gamma^-(z) & A empty)) for |A| = |B| = kd.
ProbValue expected_q(const GraphParams& params);

}  // namespace bireg
