#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bireg/graph.hpp"
#include "bireg/rng.hpp"

namespace bireg {

// Exact uniform sampling: configuration model, resampled until simple.
struct PairingRejection {};
// Switch chain run for `steps` accepted switchings (default 20 |E|).
struct SwitchChain {
  std::optional<std::uint64_t> steps;
};
// Deterministic circulant member (integer k only).
struct Circulant {};

using SamplerMethod = std::variant<PairingRejection, SwitchChain, Circulant>;

// Throws InvalidArgument when steps == 0.
SamplerMethod switch_chain_method(std::optional<std::uint64_t> steps = std::nullopt);
// "pairing", "chain" (or "switch"), "circulant".
SamplerMethod parse_sampler_method(const std::string& name,
                                   std::optional<std::uint64_t> steps = std::nullopt);
std::string method_name(const SamplerMethod& method);

// Rejection is used only while (d-1)(kd-1) stays under this cap.
inline constexpr std::int64_t kPairingGuard = 18;
bool pairing_feasible(const GraphParams& params);
std::uint64_t default_chain_steps(const GraphParams& params);

// Throws RejectionInfeasible when the feasibility guard fails.
BipartiteDigraph sample_pairing(const GraphParams& params, Seed seed);

// Starts from a pairing sample when feasible, otherwise from the circulant
// (integer k) or wrapped block graph, then applies `steps` accepted uniform
// switchings.
BipartiteDigraph sample_switch_chain(const GraphParams& params, Seed seed, std::uint64_t steps);

BipartiteDigraph sample(const GraphParams& params, const SamplerMethod& method, Seed seed);

// Every labelled member of G(k, n, d), rows in lexicographic order. Throws
// TooLarge when kn > 8 or the family exceeds kMaxFamily members.
inline constexpr std::size_t kMaxFamily = 2'000'000;
std::vector<BipartiteDigraph> enumerate_family(const GraphParams& params);

struct ChiSquare {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t dof = 0;
};

// Pearson statistic against the uniform distribution on family_size outcomes.
// Throws InsufficientSamples when the total is below 5 * family_size.
ChiSquare uniformity_chisq(std::span<const std::uint64_t> observed_counts,
                           std::size_t family_size);

}  // namespace bireg
