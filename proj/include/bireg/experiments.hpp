#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bireg/matching.hpp"
#include "bireg/params.hpp"
#include "bireg/plunnecke.hpp"
#include "bireg/rational.hpp"
#include "bireg/rng.hpp"
#include "bireg/sampler.hpp"

namespace bireg {

enum class Mode { AB, AGamma, ER, Commutative };

std::string mode_name(Mode mode);
// "AB", "AGamma", "ER", "Commutative" (case-insensitive).
Mode parse_mode(const std::string& text);

enum class SubsetPolicy { FixedPrefix, UniformRandom };

struct TrialConfig {
  GraphParams params;
  Mode mode = Mode::AB;
  SamplerMethod sampler = SwitchChain{};
  Seed seed{};
  SubsetPolicy subset_policy = SubsetPolicy::FixedPrefix;
};

// Counts from one trial. AGamma fills a_minus and a_plus, AB fills q_plus and
// q_minus.
struct ObservableStats {
  std::optional<std::size_t> a_minus;  // z in Gamma(y) whose only in-neighbor in A is y
  std::optional<std::size_t> a_plus;   // y' in A - {y} with Gamma(y') & Gamma(y) empty
  std::optional<std::size_t> q_plus;   // a in A with no neighbor in B
  std::optional<std::size_t> q_minus;  // b in B with no in-neighbor in A

  friend bool operator==(const ObservableStats&, const ObservableStats&) = default;
};

struct TrialOutcome {
  bool matched = false;
  ObservableStats stats;
  // Parent vertex ids: s inside Y, t inside Z.
  std::optional<ProblematicPair> witness;
};

// Throws InvalidArgument for modes other than AB and AGamma and
// PreconditionViolated for AGamma with d < 2.
TrialOutcome run_matching_trial(const TrialConfig& config);

// Same trial on a graph that is already sampled; the seed only drives the
// uniform-random subset policy.
TrialOutcome matching_trial_on(const BipartiteDigraph& g, Mode mode, SubsetPolicy policy,
                               Seed seed);

struct SweepRow {
  Mode mode = Mode::AB;
  std::int64_t k_num = 1;
  std::int64_t k_den = 1;
  std::int64_t n = 0;
  std::optional<std::int64_t> d;  // absent for ER rows
  double c = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> mean_a_minus;
  std::optional<double> mean_a_plus;
  std::optional<double> mean_q;
  std::optional<double> edge_probability;  // ER rows
  std::optional<double> analytic;          // ER rows: exp(-2 e^{-c})

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct TrialRecord {
  std::size_t row = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  ObservableStats stats;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<TrialRecord> trial_records;  // filled only on request

  friend bool operator==(const SweepResult& x, const SweepResult& y) { return x.rows == y.rows; }
};

struct SweepOptions {
  SubsetPolicy subset_policy = SubsetPolicy::FixedPrefix;
  bool keep_trials = false;
  double z = 1.959963984540054;  // 95% Wilson interval
};

// Trial t of point p uses master_seed.derive(p).derive(t), with points taken
// in the output order (sorted by d, stable). Throws InvalidArgument when
// trials == 0.
SweepResult sweep_matching(std::vector<GraphParams> params_list, std::size_t trials, Mode mode,
                           const SamplerMethod& sampler, Seed master_seed,
                           const SweepOptions& options = {});

// Edge probability (ln n + c)/n. Throws InvalidP outside [0, 1].
double er_edge_probability(std::int64_t n, double c);

// One independent-edge bipartite graph B(n, p) on n + n vertices.
BipartiteAdjacency sample_er_bipartite(std::int64_t n, double p, Seed seed);

SweepResult er_baseline_sweep(std::int64_t n, const std::vector<double>& c_list,
                              std::size_t trials, Seed master_seed,
                              const SweepOptions& options = {});

// Builds one layered instance (layers from seed) and certifies it.
CommutativityReport commutative_trial(const Rational& k, std::int64_t m, std::int64_t d,
                                      unsigned h, Seed seed, const SamplerMethod& sampler,
                                      const CommutativityOptions& options = {});

// Success = commutative. c is computed from the first layer.
SweepResult commutative_sweep(const Rational& k, std::int64_t m, std::vector<std::int64_t> d_list,
                              unsigned h, std::size_t trials, const SamplerMethod& sampler,
                              Seed master_seed, const SweepOptions& options = {},
                              std::optional<std::size_t> sample_edges = std::nullopt);

struct LocalStatRow {
  std::string name;
  std::size_t samples = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double oracle_low = 0.0;  // equals oracle_high for point oracles
  double oracle_high = 0.0;
  bool pass = false;
};

struct LocalStatsOptions {
  SamplerMethod sampler = PairingRejection{};
  std::int64_t conditioned_s = 1;    // set size for the conditioned no-edge row
  std::int64_t unconditioned_s = 1;  // set size for the unconditioned row
  double z = 2.5758293035489004;     // 99%
};

// Monte Carlo means against their closed forms:
//   common_neighbors      |Gamma(0) & Gamma(1)|
//   no_edge_conditioned   Gamma^-(0) misses {1..s} given 0 -> 0
//   no_edge_unconditioned Gamma^-(0) misses {0..s-1}
//   isolated_count        isolated vertices of H on the first kd of Y and Z
//   disjoint_pair         Gamma(0) & Gamma(1) empty, against the sandwich band
// Rows whose hypotheses fail for params are omitted. Throws InvalidArgument
// when trials == 0.
std::vector<LocalStatRow> estimate_local_statistics(const GraphParams& params, std::size_t trials,
                                                    Seed master_seed,
                                                    const LocalStatsOptions& options = {});

struct FamilyAverages {
  std::size_t members = 0;
  Rational common_neighbors;  // mean |Gamma(0) & Gamma(1)|
  Rational disjoint_pair;     // fraction with Gamma(0) & Gamma(1) empty
};

// Exact averages over enumerate_family(params); requires n >= 2.
FamilyAverages exhaustive_local_statistics(const GraphParams& params);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval, clamped to [0, 1]. Throws OutOfRange unless
// 0 <= successes <= trials, trials >= 1 and z > 0.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z);

// Worker count: BIREG_THREADS when set and positive, else hardware threads.
unsigned worker_count();

// Calls fn(i) for i in [0, count) over worker_count() threads. The first
// exception thrown by any call is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace bireg
