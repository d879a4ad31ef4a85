#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bireg/layered.hpp"
#include "bireg/rational.hpp"
#include "bireg/rng.hpp"
#include "bireg/sampler.hpp"

namespace bireg {

// Stacks h independent samples; layer i ~ G(k, k^(i-1) m, d), so |X_i| = k^i m.
// Throws NonIntegralLayer when some k^i m is fractional and InvalidDegree
// unless 2 <= d <= m, kd integral and kd <= m. Requires k >= 1.
// The checks of build_random_layered without sampling.
void validate_layered_params(const Rational& k, std::int64_t m, std::int64_t d, unsigned h);

LayeredGraph build_random_layered(const Rational& k, std::int64_t m, std::int64_t d, unsigned h,
                                  Seed seed, const SamplerMethod& method);

enum class Condition { Upward, Downward };

// Upward for the layer-i edge u->v (i <= h-1): some matching of the layer-(i+1)
// edges between Gamma(u) and Gamma(v) covers all of Gamma(v). Downward
// (i >= 2) is the upward condition of v->u in the reversed graph. Throws
// EdgeAbsent or LayerOutOfRange.
bool check_edge_condition(const LayeredGraph& g, unsigned layer, Vertex u, Vertex v,
                          Condition condition);

struct LayerEdge {
  unsigned layer = 0;
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const LayerEdge&, const LayerEdge&) = default;
};

struct CommutativityReport {
  bool commutative = true;
  std::vector<LayerEdge> upward_violations;
  std::vector<LayerEdge> downward_violations;
  std::size_t edges_checked = 0;
  bool sampled = false;
};

struct CommutativityOptions {
  // Check this many uniformly chosen edges per condition instead of all.
  std::optional<std::size_t> sample_edges;
  Seed seed{};
  // Return as soon as one violation is found.
  bool stop_at_first_violation = false;
};

CommutativityReport check_commutative(const LayeredGraph& g,
                                      const CommutativityOptions& options = {});

struct MagnificationResult {
  unsigned i = 0;
  Rational value;
  VertexList witness;  // nonempty Z of X_0 with |Gamma^(i)(Z)| / |Z| = value
};

// Scans all nonempty Z of X_0; the witness is the lexicographically first
// minimizer. Throws TooLarge when |X_0| > 20.
MagnificationResult magnification_bruteforce(const LayeredGraph& g, unsigned i);

// Parametric minimum cut over the finite candidate set of ratios.
MagnificationResult magnification_flow(const LayeredGraph& g, unsigned i);

// True iff D_i^(1/i) >= D_(i+1)^(1/(i+1)) for every consecutive pair, compared
// exactly as D_i^(i+1) >= D_(i+1)^i. Throws NonPositiveValue.
bool plunnecke_monotone_check(std::span<const Rational> values);

}  // namespace bireg
