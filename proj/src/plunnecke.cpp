#include "bireg/plunnecke.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "bireg/error.hpp"
#include "bireg/matching.hpp"

namespace bireg {

void validate_layered_params(const Rational& k, std::int64_t m, std::int64_t d, unsigned h) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "layered construction needs k >= 1");
  if (h == 0) throw Error(ErrorCode::InvalidArgument, "layered construction needs h >= 1");
  if (m <= 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
  const Rational kd = k * d;
  if (d < 2 || d > m || boost::multiprecision::denominator(kd) != 1 || kd > m) {
    throw Error(ErrorCode::InvalidDegree, "need 2 <= d <= m with integral kd <= m, got d = " +
                                              std::to_string(d) + ", kd = " + to_string(kd) +
                                              ", m = " + std::to_string(m));
  }
  Rational size(m);
  for (unsigned level = 0; level <= h; ++level) {
    if (boost::multiprecision::denominator(size) != 1) {
      throw Error(ErrorCode::NonIntegralLayer, "|X_" + std::to_string(level) +
                                                   "| = k^" + std::to_string(level) +
                                                   " m = " + to_string(size));
    }
    size *= k;
  }
}

LayeredGraph build_random_layered(const Rational& k, std::int64_t m, std::int64_t d, unsigned h,
                                  Seed seed, const SamplerMethod& method) {
  validate_layered_params(k, m, d, h);
  const auto k_num = static_cast<std::int64_t>(boost::multiprecision::numerator(k));
  const auto k_den = static_cast<std::int64_t>(boost::multiprecision::denominator(k));
  std::vector<BipartiteAdjacency> layers;
  Rational n(m);
  for (unsigned i = 1; i <= h; ++i) {
    const auto params =
        validate_params(k_num, k_den, static_cast<std::int64_t>(boost::multiprecision::numerator(n)), d);
    layers.push_back(sample(params, method, seed.derive(i)).adjacency());
    n *= k;
  }
  return LayeredGraph(std::move(layers));
}

namespace {

constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();

// Layers whose bitset adjacency stays below this many bits use the dense path.
constexpr std::size_t kDenseBits = std::size_t{1} << 28;

// Out-neighborhoods of one layer as rows of 64-bit words over the upper level.
struct DenseLayer {
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  const std::uint64_t* row(Vertex a) const { return bits.data() + a * words; }
};

// Upward condition for layer-i edges: the layer-(i+1) edges between Gamma(u)
// and Gamma(v) must admit a matching covering Gamma(v). Dense layers use
// bitset rows with greedy matching plus augmenting paths; others build an
// explicit bipartite graph for Hopcroft-Karp.
class UpwardChecker {
 public:
  explicit UpwardChecker(const LayeredGraph& g) : g_(g), dense_(g.h() + 1) {
    std::size_t largest = 0;
    for (auto s : g.level_sizes()) largest = std::max(largest, s);
    position_.assign(largest, kAbsent);
    mate_right_.assign(largest, kAbsent);
    for (unsigned j = 2; j <= g.h(); ++j) {
      const auto& layer = g.layer(j);
      if (layer.left_size() * layer.right_size() > kDenseBits) continue;
      DenseLayer& dense = dense_[j];
      dense.words = (layer.right_size() + 63) / 64;
      dense.bits.assign(layer.left_size() * dense.words, 0);
      for (Vertex a = 0; a < layer.left_size(); ++a) {
        std::uint64_t* row = dense.bits.data() + a * dense.words;
        for (Vertex w : layer.out(a)) row[w >> 6] |= std::uint64_t{1} << (w & 63);
      }
    }
  }

  bool holds(unsigned layer, Vertex u, Vertex v) {
    const auto from = g_.layer(layer).out(u);
    const auto to = g_.layer(layer + 1).out(v);
    if (from.size() < to.size()) return false;
    if (!dense_[layer + 1].bits.empty()) return holds_dense(dense_[layer + 1], from, to);
    return holds_sparse(g_.layer(layer + 1), from, to);
  }

 private:
  bool holds_sparse(const BipartiteAdjacency& upper, std::span<const Vertex> from,
                    std::span<const Vertex> to) {
    for (std::size_t j = 0; j < to.size(); ++j) position_[to[j]] = static_cast<Vertex>(j);
    std::vector<VertexList> out(from.size());
    for (std::size_t a = 0; a < from.size(); ++a) {
      for (Vertex w : upper.out(from[a])) {
        if (position_[w] != kAbsent) out[a].push_back(position_[w]);
      }
    }
    for (Vertex w : to) position_[w] = kAbsent;
    return saturates_right(BipartiteAdjacency(from.size(), to.size(), std::move(out)));
  }

  bool holds_dense(const DenseLayer& dense, std::span<const Vertex> from,
                   std::span<const Vertex> to) {
    words_ = dense.words;
    target_.assign(words_, 0);
    for (Vertex w : to) {
      target_[w >> 6] |= std::uint64_t{1} << (w & 63);
      mate_right_[w] = kAbsent;
    }
    rows_.resize(from.size() * words_);
    mate_left_.assign(from.size(), kAbsent);
    for (std::size_t i = 0; i < from.size(); ++i) {
      const std::uint64_t* src = dense.row(from[i]);
      std::uint64_t* dst = rows_.data() + i * words_;
      for (std::size_t w = 0; w < words_; ++w) dst[w] = src[w] & target_[w];
    }

    std::size_t matched = 0;
    for (std::size_t i = 0; i < from.size() && matched < to.size(); ++i) {
      const std::uint64_t* row = rows_.data() + i * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        if (const std::uint64_t free = row[w] & target_[w]) {
          const auto b = static_cast<Vertex>(w * 64 + std::countr_zero(free));
          target_[w] &= ~(std::uint64_t{1} << (b & 63));
          mate_left_[i] = b;
          mate_right_[b] = static_cast<Vertex>(i);
          ++matched;
          break;
        }
      }
    }
    // target_ now marks the still unmatched vertices of Gamma(v).
    std::size_t unmatched_left = from.size() - matched;
    for (std::size_t i = 0; i < from.size() && matched < to.size(); ++i) {
      if (mate_left_[i] != kAbsent) continue;
      if (matched + unmatched_left < to.size()) return false;
      --unmatched_left;
      visited_.assign(words_, 0);
      if (augment(static_cast<Vertex>(i))) ++matched;
    }
    return matched == to.size();
  }

  bool augment(Vertex i) {
    const std::uint64_t* row = rows_.data() + i * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t candidates = row[w] & ~visited_[w];
      while (candidates) {
        const int bit = std::countr_zero(candidates);
        candidates &= candidates - 1;
        const std::uint64_t mask = std::uint64_t{1} << bit;
        if (visited_[w] & mask) continue;
        visited_[w] |= mask;
        const auto b = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit));
        const bool free = (target_[w] & mask) != 0;
        if (free || augment(mate_right_[b])) {
          if (free) target_[w] &= ~mask;
          mate_left_[i] = b;
          mate_right_[b] = i;
          return true;
        }
      }
    }
    return false;
  }

  const LayeredGraph& g_;
  std::vector<DenseLayer> dense_;
  std::vector<Vertex> position_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> target_;
  std::vector<std::uint64_t> visited_;
  std::vector<std::uint64_t> rows_;
  std::vector<Vertex> mate_left_;
  std::vector<Vertex> mate_right_;
};

void require_edge(const LayeredGraph& g, unsigned layer, Vertex u, Vertex v) {
  const auto& adj = g.layer(layer);
  if (u >= adj.left_size() || v >= adj.right_size() || !adj.has_edge(u, v)) {
    throw Error(ErrorCode::EdgeAbsent, "no edge " + std::to_string(u) + "->" +
                                           std::to_string(v) + " in layer " +
                                           std::to_string(layer));
  }
}

std::vector<LayerEdge> layer_edges(const LayeredGraph& g, unsigned first, unsigned last) {
  std::vector<LayerEdge> edges;
  for (unsigned i = first; i <= last; ++i) {
    const auto& adj = g.layer(i);
    for (Vertex u = 0; u < adj.left_size(); ++u) {
      for (Vertex v : adj.out(u)) edges.push_back({i, u, v});
    }
  }
  return edges;
}

}  // namespace

bool check_edge_condition(const LayeredGraph& g, unsigned layer, Vertex u, Vertex v,
                          Condition condition) {
  if (layer == 0 || layer > g.h()) {
    throw Error(ErrorCode::LayerOutOfRange,
                "layer " + std::to_string(layer) + " outside [1, " + std::to_string(g.h()) + "]");
  }
  require_edge(g, layer, u, v);
  if (condition == Condition::Upward) {
    if (layer + 1 > g.h()) {
      throw Error(ErrorCode::LayerOutOfRange, "upward condition needs layer <= h-1");
    }
    return UpwardChecker(g).holds(layer, u, v);
  }
  if (layer < 2) {
    throw Error(ErrorCode::LayerOutOfRange, "downward condition needs layer >= 2");
  }
  const LayeredGraph rev = g.reversed();
  return UpwardChecker(rev).holds(g.h() - layer + 1, v, u);
}

CommutativityReport check_commutative(const LayeredGraph& g, const CommutativityOptions& options) {
  CommutativityReport report;
  if (g.h() < 2) return report;
  Rng rng = options.seed.rng();
  auto select = [&](std::vector<LayerEdge> edges) {
    if (options.sample_edges && *options.sample_edges < edges.size()) {
      std::vector<LayerEdge> chosen;
      chosen.reserve(*options.sample_edges);
      std::sample(edges.begin(), edges.end(), std::back_inserter(chosen), *options.sample_edges,
                  rng);
      report.sampled = true;
      return chosen;
    }
    return edges;
  };

  UpwardChecker up(g);
  for (const auto& e : select(layer_edges(g, 1, g.h() - 1))) {
    ++report.edges_checked;
    if (!up.holds(e.layer, e.u, e.v)) {
      report.upward_violations.push_back(e);
      if (options.stop_at_first_violation) {
        report.commutative = false;
        return report;
      }
    }
  }
  const LayeredGraph rev = g.reversed();
  UpwardChecker down(rev);
  for (const auto& e : select(layer_edges(g, 2, g.h()))) {
    ++report.edges_checked;
    if (!down.holds(g.h() - e.layer + 1, e.v, e.u)) {
      report.downward_violations.push_back(e);
      if (options.stop_at_first_violation) break;
    }
  }
  report.commutative = report.upward_violations.empty() && report.downward_violations.empty();
  return report;
}

namespace {

using Bits = std::vector<std::uint64_t>;

void check_level(const LayeredGraph& g, unsigned i) {
  if (i == 0 || i > g.h()) {
    throw Error(ErrorCode::LayerOutOfRange,
                "level " + std::to_string(i) + " outside [1, " + std::to_string(g.h()) + "]");
  }
}

// Gamma^(i)({x}) for every x in X_0.
std::vector<VertexList> reach_lists(const LayeredGraph& g, unsigned i) {
  std::vector<VertexList> reach(g.level_size(0));
  for (Vertex x = 0; x < reach.size(); ++x) {
    const Vertex start[] = {x};
    reach[x] = neighborhood(g, start, 0, Direction::Out, i);
  }
  return reach;
}

struct BruteForce {
  std::size_t words;
  std::vector<Bits> reach;
  std::size_t best_num = 1;
  std::size_t best_den = 0;  // 0 = nothing seen yet
  VertexList best_set;
  VertexList current;

  void visit(const Bits& acc, Vertex next) {
    for (Vertex x = next; x < reach.size(); ++x) {
      Bits merged(words);
      std::size_t count = 0;
      for (std::size_t w = 0; w < words; ++w) {
        merged[w] = acc[w] | reach[x][w];
        count += static_cast<std::size_t>(std::popcount(merged[w]));
      }
      current.push_back(x);
      // count / |Z| < best_num / best_den, strictly, keeps the first minimizer.
      if (best_den == 0 || count * best_den < best_num * current.size()) {
        best_num = count;
        best_den = current.size();
        best_set = current;
      }
      visit(merged, x + 1);
      current.pop_back();
    }
  }
};

}  // namespace

MagnificationResult magnification_bruteforce(const LayeredGraph& g, unsigned i) {
  check_level(g, i);
  const std::size_t base = g.level_size(0);
  if (base > 20) {
    throw Error(ErrorCode::TooLarge,
                "brute force needs |X_0| <= 20, got " + std::to_string(base));
  }
  const std::size_t top = g.level_size(i);
  BruteForce bf;
  bf.words = (top + 63) / 64;
  for (const auto& list : reach_lists(g, i)) {
    Bits bits(bf.words, 0);
    for (Vertex w : list) bits[w >> 6] |= std::uint64_t{1} << (w & 63);
    bf.reach.push_back(std::move(bits));
  }
  bf.visit(Bits(bf.words, 0), 0);
  return {i, Rational(bf.best_num, bf.best_den), bf.best_set};
}

namespace {

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, std::int64_t,
                    boost::property<boost::edge_residual_capacity_t, std::int64_t,
                                    boost::property<boost::edge_reverse_t,
                                                    FlowTraits::edge_descriptor>>>>;
using FlowEdge = FlowTraits::edge_descriptor;

// source -> x (capacity p), x -> w for w in Gamma^(i)(x) (unbounded),
// w -> sink (capacity q). Min cut = p|X_0| + min_Z (q |Gamma^(i)(Z)| - p |Z|).
class ExpansionNetwork {
 public:
  ExpansionNetwork(const std::vector<VertexList>& reach, const VertexList& targets)
      : base_(reach.size()), targets_(targets.size()), graph_(base_ + targets_ + 2) {
    source_ = base_ + targets_;
    sink_ = source_ + 1;
    std::vector<std::size_t> target_index(targets.empty() ? 0 : targets.back() + 1, 0);
    for (std::size_t j = 0; j < targets.size(); ++j) target_index[targets[j]] = j;
    for (std::size_t x = 0; x < base_; ++x) source_edges_.push_back(add(source_, x));
    for (std::size_t x = 0; x < base_; ++x) {
      for (Vertex w : reach[x]) middle_edges_.push_back(add(x, base_ + target_index[w]));
    }
    for (std::size_t j = 0; j < targets_; ++j) sink_edges_.push_back(add(base_ + j, sink_));
  }

  // Max flow with source capacity p and sink capacity q.
  std::int64_t solve(std::int64_t p, std::int64_t q) {
    auto cap = boost::get(boost::edge_capacity, graph_);
    const std::int64_t unbounded =
        p * static_cast<std::int64_t>(base_) + q * static_cast<std::int64_t>(targets_) + 1;
    for (auto e : source_edges_) cap[e] = p;
    for (auto e : middle_edges_) cap[e] = unbounded;
    for (auto e : sink_edges_) cap[e] = q;
    return boost::push_relabel_max_flow(graph_, source_, sink_);
  }

  // X_0 vertices on the source side of the minimal minimum cut.
  VertexList source_side() const {
    auto residual = boost::get(boost::edge_residual_capacity, graph_);
    std::vector<bool> seen(boost::num_vertices(graph_), false);
    std::vector<std::size_t> queue{source_};
    seen[source_] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto [it, end] = boost::out_edges(queue[head], graph_); it != end; ++it) {
        const auto next = boost::target(*it, graph_);
        if (!seen[next] && residual[*it] > 0) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
    VertexList z;
    for (std::size_t x = 0; x < base_; ++x) {
      if (seen[x]) z.push_back(static_cast<Vertex>(x));
    }
    return z;
  }

 private:
  FlowEdge add(std::size_t from, std::size_t to) {
    auto [forward, ok1] = boost::add_edge(from, to, graph_);
    auto [backward, ok2] = boost::add_edge(to, from, graph_);
    auto rev = boost::get(boost::edge_reverse, graph_);
    auto cap = boost::get(boost::edge_capacity, graph_);
    rev[forward] = backward;
    rev[backward] = forward;
    cap[backward] = 0;
    return forward;
  }

  std::size_t base_;
  std::size_t targets_;
  FlowGraph graph_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
  std::vector<FlowEdge> source_edges_;
  std::vector<FlowEdge> middle_edges_;
  std::vector<FlowEdge> sink_edges_;
};

struct Fraction {
  std::int64_t p;
  std::int64_t q;
};

}  // namespace

MagnificationResult magnification_flow(const LayeredGraph& g, unsigned i) {
  check_level(g, i);
  const auto reach = reach_lists(g, i);
  VertexList all(reach.size());
  std::iota(all.begin(), all.end(), Vertex{0});
  const VertexList targets = neighborhood(g, all, 0, Direction::Out, i);
  const auto base = static_cast<std::int64_t>(reach.size());
  const auto top = static_cast<std::int64_t>(targets.size());

  // Every ratio |Gamma(Z)|/|Z| lies in {p/q : 1 <= q <= |X_0|, 0 <= p <= top}.
  std::vector<Fraction> candidates;
  candidates.reserve(static_cast<std::size_t>(base * (top + 1)));
  for (std::int64_t q = 1; q <= base; ++q) {
    for (std::int64_t p = 0; p <= top; ++p) {
      if (std::gcd(p, q) == 1) candidates.push_back({p, q});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Fraction& a, const Fraction& b) { return a.p * b.q < b.p * a.q; });

  ExpansionNetwork network(reach, targets);
  // feasible(t) <=> |Gamma(Z)| >= t|Z| for all Z <=> t <= D_i; monotone in t.
  auto feasible = [&](const Fraction& t) { return network.solve(t.p, t.q) == t.p * base; };
  std::size_t lo = 0;  // candidates[0] = 0 is always feasible
  std::size_t hi = candidates.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(candidates[mid])) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Fraction best = candidates[lo];
  // Just above D_i the minimal cut isolates a nonempty minimizer of the ratio.
  const Fraction above = hi < candidates.size() ? candidates[hi] : Fraction{top + 1, 1};
  network.solve(above.p, above.q);
  MagnificationResult result{i, Rational(best.p, best.q), network.source_side()};
  return result;
}

bool plunnecke_monotone_check(std::span<const Rational> values) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] <= 0) {
      throw Error(ErrorCode::NonPositiveValue,
                  "D_" + std::to_string(j + 1) + " = " + to_string(values[j]) + " is not positive");
    }
  }
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    const auto i = static_cast<unsigned>(j + 1);
    if (!pow_greater_equal(values[j], i + 1, values[j + 1], i)) return false;
  }
  return true;
}

}  // namespace bireg
