#include "bireg/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <unordered_set>

#include <boost/math/distributions/chi_squared.hpp>

#include "bireg/error.hpp"

namespace bireg {

SamplerMethod switch_chain_method(std::optional<std::uint64_t> steps) {
  if (steps && *steps == 0) {
    throw Error(ErrorCode::InvalidArgument, "switch chain needs at least one step");
  }
  return SwitchChain{steps};
}

SamplerMethod parse_sampler_method(const std::string& name, std::optional<std::uint64_t> steps) {
  if (name == "pairing") return PairingRejection{};
  if (name == "chain" || name == "switch") return switch_chain_method(steps);
  if (name == "circulant") return Circulant{};
  throw Error(ErrorCode::InvalidArgument,
              "unknown sampler '" + name + "' (expected pairing, chain or circulant)");
}

std::string method_name(const SamplerMethod& method) {
  struct Visitor {
    std::string operator()(const PairingRejection&) const { return "pairing"; }
    std::string operator()(const SwitchChain& c) const {
      return c.steps ? "chain:" + std::to_string(*c.steps) : "chain";
    }
    std::string operator()(const Circulant&) const { return "circulant"; }
  };
  return std::visit(Visitor{}, method);
}

bool pairing_feasible(const GraphParams& params) {
  return (params.d() - 1) * (params.kd() - 1) <= kPairingGuard;
}

std::uint64_t default_chain_steps(const GraphParams& params) {
  return 20 * static_cast<std::uint64_t>(params.edge_count());
}

BipartiteDigraph sample_pairing(const GraphParams& params, Seed seed) {
  if (!pairing_feasible(params)) {
    throw Error(ErrorCode::RejectionInfeasible,
                "(d-1)(kd-1) = " + std::to_string((params.d() - 1) * (params.kd() - 1)) +
                    " exceeds " + std::to_string(kPairingGuard) + " for " + params.describe() +
                    "; use the switch chain");
  }
  const auto n = static_cast<std::size_t>(params.n());
  const auto kn = static_cast<std::size_t>(params.kn());
  const auto kd = static_cast<std::size_t>(params.kd());
  std::vector<Vertex> stubs;
  stubs.reserve(n * kd);
  for (std::size_t z = 0; z < kn; ++z) {
    stubs.insert(stubs.end(), static_cast<std::size_t>(params.d()), static_cast<Vertex>(z));
  }
  Rng rng = seed.rng();
  std::vector<std::size_t> owner(kn, 0);  // y + 1 of the last y that used z
  for (;;) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::fill(owner.begin(), owner.end(), 0);
    bool simple = true;
    for (std::size_t y = 0; y < n && simple; ++y) {
      for (std::size_t j = y * kd; j < (y + 1) * kd; ++j) {
        if (owner[stubs[j]] == y + 1) {
          simple = false;
          break;
        }
        owner[stubs[j]] = y + 1;
      }
    }
    if (!simple) continue;
    std::vector<VertexList> out(n);
    for (std::size_t y = 0; y < n; ++y) {
      out[y].assign(stubs.begin() + static_cast<std::ptrdiff_t>(y * kd),
                    stubs.begin() + static_cast<std::ptrdiff_t>((y + 1) * kd));
    }
    return BipartiteDigraph(params, std::move(out));
  }
}

namespace {

class DenseEdgeSet {
 public:
  DenseEdgeSet(std::size_t rows, std::size_t cols)
      : cols_(cols), bits_((rows * cols + 63) / 64, 0) {}
  bool contains(Vertex y, Vertex z) const {
    const std::size_t i = index(y, z);
    return (bits_[i >> 6] >> (i & 63)) & 1U;
  }
  void insert(Vertex y, Vertex z) {
    const std::size_t i = index(y, z);
    bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void erase(Vertex y, Vertex z) {
    const std::size_t i = index(y, z);
    bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

 private:
  std::size_t index(Vertex y, Vertex z) const { return std::size_t{y} * cols_ + z; }
  std::size_t cols_;
  std::vector<std::uint64_t> bits_;
};

class SparseEdgeSet {
 public:
  SparseEdgeSet(std::size_t, std::size_t) {}
  bool contains(Vertex y, Vertex z) const { return set_.contains(key(y, z)); }
  void insert(Vertex y, Vertex z) { set_.insert(key(y, z)); }
  void erase(Vertex y, Vertex z) { set_.erase(key(y, z)); }

 private:
  static std::uint64_t key(Vertex y, Vertex z) { return (std::uint64_t{y} << 32) | z; }
  std::unordered_set<std::uint64_t> set_;
};

using Edge = std::pair<Vertex, Vertex>;

#ifndef NDEBUG
void debug_check_degrees(const std::vector<Edge>& edges, const GraphParams& params) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(params.n()), 0);
  std::vector<std::int64_t> in(static_cast<std::size_t>(params.kn()), 0);
  for (auto [y, z] : edges) {
    ++out[y];
    ++in[z];
  }
  for (auto v : out) assert(v == params.kd());
  for (auto v : in) assert(v == params.d());
}
#endif

template <typename EdgeSet>
void run_chain(std::vector<Edge>& edges, const GraphParams& params, Rng& rng,
               std::uint64_t steps) {
  EdgeSet present(static_cast<std::size_t>(params.n()), static_cast<std::size_t>(params.kn()));
  for (auto [y, z] : edges) present.insert(y, z);
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  std::uint64_t accepted = 0;
  while (accepted < steps) {
    const std::size_t e1 = pick(rng);
    const std::size_t e2 = pick(rng);
    const auto [a, c] = edges[e1];
    const auto [b, d] = edges[e2];
    if (a == b || c == d) continue;
    if (present.contains(a, d) || present.contains(b, c)) continue;
    present.erase(a, c);
    present.erase(b, d);
    present.insert(a, d);
    present.insert(b, c);
    edges[e1] = {a, d};
    edges[e2] = {b, c};
    ++accepted;
#ifndef NDEBUG
    if (std::has_single_bit(accepted)) debug_check_degrees(edges, params);
#endif
  }
}

BipartiteDigraph chain_start(const GraphParams& params, Seed seed) {
  if (pairing_feasible(params)) return sample_pairing(params, seed);
  if (params.integer_k()) return circulant_graph(params);
  return wrapped_block_graph(params);
}

}  // namespace

BipartiteDigraph sample_switch_chain(const GraphParams& params, Seed seed, std::uint64_t steps) {
  BipartiteDigraph start = chain_start(params, seed.derive(0));
  // A complete bipartite graph is the only member of its family.
  if (steps == 0 || params.kd() == params.kn()) return start;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(params.edge_count()));
  for (std::size_t y = 0; y < start.out_lists().size(); ++y) {
    for (Vertex z : start.out_lists()[y]) edges.emplace_back(static_cast<Vertex>(y), z);
  }
  Rng rng = seed.derive(1).rng();
  const auto cells = static_cast<std::uint64_t>(params.n()) * static_cast<std::uint64_t>(params.kn());
  if (cells <= (std::uint64_t{1} << 28)) {
    run_chain<DenseEdgeSet>(edges, params, rng, steps);
  } else {
    run_chain<SparseEdgeSet>(edges, params, rng, steps);
  }
  std::vector<VertexList> out(static_cast<std::size_t>(params.n()));
  for (auto& list : out) list.reserve(static_cast<std::size_t>(params.kd()));
  for (auto [y, z] : edges) out[y].push_back(z);
  return BipartiteDigraph(params, std::move(out));
}

BipartiteDigraph sample(const GraphParams& params, const SamplerMethod& method, Seed seed) {
  struct Visitor {
    const GraphParams& params;
    Seed seed;
    BipartiteDigraph operator()(const PairingRejection&) const {
      return sample_pairing(params, seed);
    }
    BipartiteDigraph operator()(const SwitchChain& c) const {
      return sample_switch_chain(params, seed, c.steps.value_or(default_chain_steps(params)));
    }
    BipartiteDigraph operator()(const Circulant&) const { return circulant_graph(params); }
  };
  return std::visit(Visitor{params, seed}, method);
}

namespace {

struct Enumerator {
  const GraphParams& params;
  std::size_t n;
  std::size_t kn;
  std::size_t kd;
  std::vector<std::int64_t> capacity;
  std::vector<VertexList> rows;
  std::vector<BipartiteDigraph> found;

  void row(std::size_t y) {
    if (y == n) {
      if (found.size() >= kMaxFamily) {
        throw Error(ErrorCode::TooLarge, params.describe() + " has more than " +
                                             std::to_string(kMaxFamily) + " members");
      }
      found.emplace_back(params, rows);
      return;
    }
    // Every z still needs capacity[z] of the remaining n - y rows.
    for (auto c : capacity) {
      if (c > static_cast<std::int64_t>(n - y)) return;
    }
    rows[y].clear();
    choose(y, 0);
  }

  void choose(std::size_t y, std::size_t next_z) {
    VertexList& current = rows[y];
    if (current.size() == kd) {
      row(y + 1);
      return;
    }
    for (std::size_t z = next_z; z + (kd - current.size()) <= kn; ++z) {
      if (capacity[z] == 0) continue;
      --capacity[z];
      current.push_back(static_cast<Vertex>(z));
      choose(y, z + 1);
      current.pop_back();
      ++capacity[z];
    }
  }
};

}  // namespace

std::vector<BipartiteDigraph> enumerate_family(const GraphParams& params) {
  if (params.kn() > 8) {
    throw Error(ErrorCode::TooLarge,
                "exhaustive enumeration needs kn <= 8, got kn = " + std::to_string(params.kn()));
  }
  Enumerator e{params,
               static_cast<std::size_t>(params.n()),
               static_cast<std::size_t>(params.kn()),
               static_cast<std::size_t>(params.kd()),
               std::vector<std::int64_t>(static_cast<std::size_t>(params.kn()), params.d()),
               std::vector<VertexList>(static_cast<std::size_t>(params.n())),
               {}};
  e.row(0);
  return std::move(e.found);
}

ChiSquare uniformity_chisq(std::span<const std::uint64_t> observed_counts,
                           std::size_t family_size) {
  if (observed_counts.size() != family_size || family_size == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(family_size) + " counts, got " +
                    std::to_string(observed_counts.size()));
  }
  const std::uint64_t total =
      std::accumulate(observed_counts.begin(), observed_counts.end(), std::uint64_t{0});
  if (total < 5 * family_size) {
    throw Error(ErrorCode::InsufficientSamples,
                std::to_string(total) + " draws over " + std::to_string(family_size) +
                    " outcomes; need at least " + std::to_string(5 * family_size));
  }
  ChiSquare result;
  result.dof = family_size - 1;
  const double expected = static_cast<double>(total) / static_cast<double>(family_size);
  for (auto o : observed_counts) {
    const double diff = static_cast<double>(o) - expected;
    result.statistic += diff * diff / expected;
  }
  if (result.dof == 0) {
    result.p_value = 1.0;
    return result;
  }
  boost::math::chi_squared dist(static_cast<double>(result.dof));
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  return result;
}

}  // namespace bireg
