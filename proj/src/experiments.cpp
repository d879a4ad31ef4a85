#include "bireg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "bireg/analytics.hpp"
#include "bireg/error.hpp"

namespace bireg {

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::AB:
      return "AB";
    case Mode::AGamma:
      return "AGamma";
    case Mode::ER:
      return "ER";
    case Mode::Commutative:
      return "Commutative";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "ab") return Mode::AB;
  if (lower == "agamma") return Mode::AGamma;
  if (lower == "er") return Mode::ER;
  if (lower == "commutative") return Mode::Commutative;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + text + "'");
}

unsigned worker_count() {
  if (const char* env = std::getenv("BIREG_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials || !(z > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "wilson interval needs 0 <= successes <= trials, "
                                       "trials >= 1, z > 0");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval ci{std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0)};
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

namespace {

VertexList prefix(std::size_t count) {
  VertexList v(count);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

VertexList random_subset(std::size_t universe, std::size_t count, Rng& rng) {
  VertexList all = prefix(universe);
  VertexList chosen;
  chosen.reserve(count);
  std::sample(all.begin(), all.end(), std::back_inserter(chosen), count, rng);
  return chosen;
}

void require_matching_mode(Mode mode) {
  if (mode != Mode::AB && mode != Mode::AGamma) {
    throw Error(ErrorCode::InvalidArgument,
                "matching trials run in mode AB or AGamma, not " + mode_name(mode));
  }
}

void require_trials(std::size_t trials) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
}

double mean_of(const std::vector<TrialOutcome>& outcomes, std::size_t first, std::size_t count,
               std::optional<std::size_t> ObservableStats::*field) {
  double total = 0.0;
  for (std::size_t t = 0; t < count; ++t) {
    total += static_cast<double>((outcomes[first + t].stats.*field).value_or(0));
  }
  return total / static_cast<double>(count);
}

void fill_rate(SweepRow& row, double z) {
  row.p_hat = static_cast<double>(row.successes) / static_cast<double>(row.trials);
  const Interval ci = wilson_interval(static_cast<std::int64_t>(row.successes),
                                      static_cast<std::int64_t>(row.trials), z);
  row.ci_low = ci.low;
  row.ci_high = ci.high;
}

}  // namespace

TrialOutcome matching_trial_on(const BipartiteDigraph& g, Mode mode, SubsetPolicy policy,
                               Seed seed) {
  require_matching_mode(mode);
  const auto& params = g.params();
  const auto kd = static_cast<std::size_t>(params.kd());
  const auto n = static_cast<std::size_t>(params.n());
  const auto kn = static_cast<std::size_t>(params.kn());

  VertexList a;
  Vertex y = 0;
  VertexList b;
  if (policy == SubsetPolicy::FixedPrefix) {
    a = prefix(kd);
    if (mode == Mode::AB) b = prefix(kd);
  } else {
    Rng rng = seed.rng();
    a = random_subset(n, kd, rng);
    y = a[std::uniform_int_distribution<std::size_t>(0, kd - 1)(rng)];
    if (mode == Mode::AB) b = random_subset(kn, kd, rng);
  }
  if (mode == Mode::AGamma) {
    const auto gamma = g.out(y);
    b.assign(gamma.begin(), gamma.end());
  }

  const InducedSubgraph h = induce(g, a, b);
  TrialOutcome outcome;
  ObservableStats& stats = outcome.stats;
  if (mode == Mode::AGamma) {
    std::size_t a_minus = 0;
    for (Vertex z = 0; z < h.local.right_size(); ++z) {
      if (h.local.in(z).size() == 1) ++a_minus;
    }
    std::size_t a_plus = 0;
    for (Vertex i = 0; i < h.local.left_size(); ++i) {
      if (h.a_vertices[i] != y && h.local.out(i).empty()) ++a_plus;
    }
    stats.a_minus = a_minus;
    stats.a_plus = a_plus;
  } else {
    std::size_t q_plus = 0;
    for (Vertex i = 0; i < h.local.left_size(); ++i) {
      if (h.local.out(i).empty()) ++q_plus;
    }
    std::size_t q_minus = 0;
    for (Vertex j = 0; j < h.local.right_size(); ++j) {
      if (h.local.in(j).empty()) ++q_minus;
    }
    stats.q_plus = q_plus;
    stats.q_minus = q_minus;
  }

  if (auto pair = find_problematic_pair(h.local)) {
    ProblematicPair parent;
    for (Vertex s : pair->s) parent.s.push_back(h.a_vertices[s]);
    for (Vertex t : pair->t) parent.t.push_back(h.b_vertices[t]);
    std::sort(parent.s.begin(), parent.s.end());
    std::sort(parent.t.begin(), parent.t.end());
    outcome.witness = std::move(parent);
  } else {
    outcome.matched = true;
  }
  return outcome;
}

TrialOutcome run_matching_trial(const TrialConfig& config) {
  require_matching_mode(config.mode);
  if (config.mode == Mode::AGamma && config.params.d() < 2) {
    throw Error(ErrorCode::PreconditionViolated, "mode AGamma needs d >= 2, got d = " +
                                                     std::to_string(config.params.d()));
  }
  const BipartiteDigraph g = sample(config.params, config.sampler, config.seed.derive(0));
  return matching_trial_on(g, config.mode, config.subset_policy, config.seed.derive(1));
}

SweepResult sweep_matching(std::vector<GraphParams> params_list, std::size_t trials, Mode mode,
                           const SamplerMethod& sampler, Seed master_seed,
                           const SweepOptions& options) {
  require_trials(trials);
  require_matching_mode(mode);
  std::stable_sort(params_list.begin(), params_list.end(),
                   [](const GraphParams& x, const GraphParams& y) { return x.d() < y.d(); });
  if (mode == Mode::AGamma) {
    for (const auto& p : params_list) {
      if (p.d() < 2) {
        throw Error(ErrorCode::PreconditionViolated,
                    "mode AGamma needs d >= 2, got " + p.describe());
      }
    }
  }

  std::vector<TrialOutcome> outcomes(params_list.size() * trials);
  parallel_for(outcomes.size(), [&](std::size_t index) {
    const std::size_t point = index / trials;
    const TrialConfig config{params_list[point], mode, sampler,
                             master_seed.derive(point).derive(index % trials),
                             options.subset_policy};
    outcomes[index] = run_matching_trial(config);
  });

  SweepResult result;
  for (std::size_t point = 0; point < params_list.size(); ++point) {
    const auto& params = params_list[point];
    const std::size_t first = point * trials;
    SweepRow row;
    row.mode = mode;
    row.k_num = params.k_num();
    row.k_den = params.k_den();
    row.n = params.n();
    row.d = params.d();
    row.c = threshold_c(params).c;
    row.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialOutcome& o = outcomes[first + t];
      if (o.matched) ++row.successes;
      if (options.keep_trials) {
        result.trial_records.push_back(
            {point, t, master_seed.derive(point).derive(t).master, o.matched, o.stats});
      }
    }
    fill_rate(row, options.z);
    if (mode == Mode::AGamma) {
      row.mean_a_minus = mean_of(outcomes, first, trials, &ObservableStats::a_minus);
      row.mean_a_plus = mean_of(outcomes, first, trials, &ObservableStats::a_plus);
    } else {
      row.mean_q = mean_of(outcomes, first, trials, &ObservableStats::q_plus) +
                   mean_of(outcomes, first, trials, &ObservableStats::q_minus);
    }
    result.rows.push_back(row);
  }
  return result;
}

double er_edge_probability(std::int64_t n, double c) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const double p = (std::log(static_cast<double>(n)) + c) / static_cast<double>(n);
  constexpr double kSlack = 1e-12;
  if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
    throw Error(ErrorCode::InvalidP, "p = (ln n + c)/n = " + std::to_string(p) +
                                         " outside [0, 1] for c = " + std::to_string(c));
  }
  return std::clamp(p, 0.0, 1.0);
}

BipartiteAdjacency sample_er_bipartite(std::int64_t n, double p, Seed seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidP, "p = " + std::to_string(p) + " outside [0, 1]");
  }
  const auto size = static_cast<std::uint64_t>(n);
  std::vector<VertexList> out(size);
  if (p >= 1.0) {
    for (auto& list : out) list = prefix(size);
  } else if (p > 0.0) {
    Rng rng = seed.rng();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_miss = std::log1p(-p);
    const std::uint64_t cells = size * size;
    std::uint64_t cell = 0;
    while (true) {
      // Geometric gap to the next present edge.
      const double gap = std::floor(std::log(1.0 - unit(rng)) / log_miss);
      if (gap >= static_cast<double>(cells - cell)) break;
      cell += static_cast<std::uint64_t>(gap);
      out[cell / size].push_back(static_cast<Vertex>(cell % size));
      if (++cell >= cells) break;
    }
  }
  return BipartiteAdjacency(size, size, std::move(out));
}

SweepResult er_baseline_sweep(std::int64_t n, const std::vector<double>& c_list,
                              std::size_t trials, Seed master_seed, const SweepOptions& options) {
  require_trials(trials);
  std::vector<double> probabilities;
  for (double c : c_list) probabilities.push_back(er_edge_probability(n, c));

  std::vector<char> matched(c_list.size() * trials, 0);
  parallel_for(matched.size(), [&](std::size_t index) {
    const std::size_t point = index / trials;
    const auto h = sample_er_bipartite(n, probabilities[point],
                                       master_seed.derive(point).derive(index % trials));
    matched[index] = has_perfect_matching(h) ? 1 : 0;
  });

  SweepResult result;
  for (std::size_t point = 0; point < c_list.size(); ++point) {
    SweepRow row;
    row.mode = Mode::ER;
    row.n = n;
    row.c = c_list[point];
    row.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const bool ok = matched[point * trials + t] != 0;
      if (ok) ++row.successes;
      if (options.keep_trials) {
        result.trial_records.push_back(
            {point, t, master_seed.derive(point).derive(t).master, ok, {}});
      }
    }
    fill_rate(row, options.z);
    row.edge_probability = probabilities[point];
    row.analytic = er_matching_prob(row.c);
    result.rows.push_back(row);
  }
  return result;
}

CommutativityReport commutative_trial(const Rational& k, std::int64_t m, std::int64_t d,
                                      unsigned h, Seed seed, const SamplerMethod& sampler,
                                      const CommutativityOptions& options) {
  const LayeredGraph g = build_random_layered(k, m, d, h, seed, sampler);
  return check_commutative(g, options);
}

SweepResult commutative_sweep(const Rational& k, std::int64_t m, std::vector<std::int64_t> d_list,
                              unsigned h, std::size_t trials, const SamplerMethod& sampler,
                              Seed master_seed, const SweepOptions& options,
                              std::optional<std::size_t> sample_edges) {
  require_trials(trials);
  std::stable_sort(d_list.begin(), d_list.end());
  const auto k_num = static_cast<std::int64_t>(boost::multiprecision::numerator(k));
  const auto k_den = static_cast<std::int64_t>(boost::multiprecision::denominator(k));

  std::vector<char> commutative(d_list.size() * trials, 0);
  parallel_for(commutative.size(), [&](std::size_t index) {
    const std::size_t point = index / trials;
    const Seed seed = master_seed.derive(point).derive(index % trials);
    CommutativityOptions check;
    check.sample_edges = sample_edges;
    check.seed = seed.derive(0);
    check.stop_at_first_violation = true;
    commutative[index] =
        commutative_trial(k, m, d_list[point], h, seed, sampler, check).commutative ? 1 : 0;
  });

  SweepResult result;
  for (std::size_t point = 0; point < d_list.size(); ++point) {
    SweepRow row;
    row.mode = Mode::Commutative;
    row.k_num = k_num;
    row.k_den = k_den;
    row.n = m;
    row.d = d_list[point];
    row.c = threshold_c(validate_params(k_num, k_den, m, d_list[point])).c;
    row.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const bool ok = commutative[point * trials + t] != 0;
      if (ok) ++row.successes;
      if (options.keep_trials) {
        result.trial_records.push_back(
            {point, t, master_seed.derive(point).derive(t).master, ok, {}});
      }
    }
    fill_rate(row, options.z);
    result.rows.push_back(row);
  }
  return result;
}

namespace {

struct MeanAccumulator {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }

  LocalStatRow row(const std::string& name, double oracle, double z) const {
    LocalStatRow r;
    r.name = name;
    r.samples = count;
    r.oracle_low = r.oracle_high = oracle;
    if (count == 0) return r;
    const double n = static_cast<double>(count);
    r.estimate = sum / n;
    const double var = count > 1 ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)) : 0.0;
    const double half = z * std::sqrt(var / n);
    r.ci_low = r.estimate - half;
    r.ci_high = r.estimate + half;
    constexpr double kTol = 1e-12;
    r.pass = oracle >= r.ci_low - kTol && oracle <= r.ci_high + kTol;
    return r;
  }
};

struct RateAccumulator {
  std::size_t count = 0;
  std::size_t hits = 0;

  void add(bool hit) {
    ++count;
    if (hit) ++hits;
  }

  LocalStatRow row(const std::string& name, double low, double high, double z) const {
    LocalStatRow r;
    r.name = name;
    r.samples = count;
    r.oracle_low = low;
    r.oracle_high = high;
    if (count == 0) return r;
    r.estimate = static_cast<double>(hits) / static_cast<double>(count);
    const Interval ci = wilson_interval(static_cast<std::int64_t>(hits),
                                        static_cast<std::int64_t>(count), z);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.pass = r.ci_low <= high && low <= r.ci_high;
    return r;
  }
};

std::size_t common_count(std::span<const Vertex> x, std::span<const Vertex> y) {
  std::size_t count = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Per-sample observations feeding estimate_local_statistics.
struct LocalSample {
  std::size_t common = 0;
  bool has_edge = false;
  bool cond_miss = false;
  bool uncond_miss = false;
  std::size_t isolated = 0;
};

}  // namespace

std::vector<LocalStatRow> estimate_local_statistics(const GraphParams& params, std::size_t trials,
                                                    Seed master_seed,
                                                    const LocalStatsOptions& options) {
  require_trials(trials);
  const std::int64_t n = params.n();
  const std::int64_t kd = params.kd();
  const std::int64_t s_cond = options.conditioned_s;
  const std::int64_t s_uncond = options.unconditioned_s;
  const bool want_cond = s_cond >= 0 && s_cond <= n - 1;
  const bool want_uncond = s_uncond >= 0 && s_uncond <= n;
  const bool want_pair = n >= 2;
  const bool want_band = want_pair && 2 * kd <= params.kn();

  std::vector<LocalSample> samples(trials);
  parallel_for(trials, [&](std::size_t t) {
    const BipartiteDigraph g = sample(params, options.sampler, master_seed.derive(t));
    LocalSample& s = samples[t];
    if (want_pair) s.common = common_count(g.out(0), g.out(1));
    const auto in0 = g.in(0);
    s.has_edge = g.has_edge(0, 0);
    s.cond_miss = std::none_of(in0.begin(), in0.end(), [&](Vertex y) {
      return y >= 1 && static_cast<std::int64_t>(y) <= s_cond;
    });
    s.uncond_miss = std::none_of(in0.begin(), in0.end(), [&](Vertex y) {
      return static_cast<std::int64_t>(y) < s_uncond;
    });
    const auto a = prefix(static_cast<std::size_t>(kd));
    const InducedSubgraph h = induce(g, a, a);
    for (Vertex i = 0; i < h.local.left_size(); ++i) {
      if (h.local.out(i).empty()) ++s.isolated;
      if (h.local.in(i).empty()) ++s.isolated;
    }
  });

  MeanAccumulator common;
  RateAccumulator cond;
  RateAccumulator uncond;
  MeanAccumulator isolated;
  RateAccumulator disjoint;
  for (const auto& s : samples) {
    common.add(static_cast<double>(s.common));
    if (s.has_edge) cond.add(s.cond_miss);
    uncond.add(s.uncond_miss);
    isolated.add(static_cast<double>(s.isolated));
    disjoint.add(s.common == 0);
  }

  std::vector<LocalStatRow> rows;
  const double z = options.z;
  if (want_pair) {
    rows.push_back(common.row("common_neighbors",
                              to_double(pair_expectations(params).common_neighbors), z));
  }
  if (want_cond) {
    const double p = no_edge_exact(s_cond, params, Side::In, true).value;
    rows.push_back(cond.row("no_edge_conditioned", p, p, z));
  }
  if (want_uncond) {
    const double p = no_edge_exact(s_uncond, params, Side::In, false).value;
    rows.push_back(uncond.row("no_edge_unconditioned", p, p, z));
  }
  rows.push_back(isolated.row("isolated_count", expected_q(params).value, z));
  if (want_band) {
    const ProbabilityBound band = a_plus_bounds(params);
    rows.push_back(disjoint.row("disjoint_pair", band.lower.value_or(0.0), band.upper, z));
  }
  return rows;
}

FamilyAverages exhaustive_local_statistics(const GraphParams& params) {
  if (params.n() < 2) throw Error(ErrorCode::InvalidArgument, "need n >= 2");
  const auto family = enumerate_family(params);
  FamilyAverages avg;
  avg.members = family.size();
  BigInt common = 0;
  BigInt disjoint = 0;
  for (const auto& g : family) {
    const std::size_t c = common_count(g.out(0), g.out(1));
    common += c;
    if (c == 0) ++disjoint;
  }
  avg.common_neighbors = Rational(common, avg.members);
  avg.disjoint_pair = Rational(disjoint, avg.members);
  return avg;
}

}  // namespace bireg
