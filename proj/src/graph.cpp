#include "bireg/graph.hpp"

#include <algorithm>
#include <string>

#include "bireg/error.hpp"

namespace bireg {

BipartiteAdjacency::BipartiteAdjacency(std::size_t left, std::size_t right,
                                       std::vector<VertexList> out)
    : out_(std::move(out)), in_(right) {
  if (out_.size() != left) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(left) + " out-lists, got " +
                    std::to_string(out_.size()));
  }
  for (std::size_t a = 0; a < out_.size(); ++a) {
    auto& list = out_[a];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw Error(ErrorCode::DegreeViolation,
                  "left vertex " + std::to_string(a) + " lists a neighbor twice",
                  static_cast<std::int64_t>(a));
    }
    if (!list.empty() && list.back() >= right) {
      throw Error(ErrorCode::IndexOutOfRange, "left vertex " + std::to_string(a) +
                                                  " has neighbor " +
                                                  std::to_string(list.back()) +
                                                  " outside [0, " + std::to_string(right) + ")");
    }
    edges_ += list.size();
  }
  for (std::size_t a = 0; a < out_.size(); ++a) {
    for (Vertex b : out_[a]) in_[b].push_back(static_cast<Vertex>(a));
  }
}

bool BipartiteAdjacency::has_edge(Vertex a, Vertex b) const {
  const auto& list = out_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

BipartiteAdjacency BipartiteAdjacency::reversed() const {
  return BipartiteAdjacency(in_.size(), out_.size(), in_);
}

namespace {

void check_biregular(const BipartiteAdjacency& adj, const GraphParams& params) {
  if (adj.left_size() != static_cast<std::size_t>(params.n()) ||
      adj.right_size() != static_cast<std::size_t>(params.kn())) {
    throw Error(ErrorCode::InvalidArgument, "adjacency dimensions do not match " +
                                                params.describe());
  }
  for (std::size_t y = 0; y < adj.left_size(); ++y) {
    if (adj.out(static_cast<Vertex>(y)).size() != static_cast<std::size_t>(params.kd())) {
      throw Error(ErrorCode::DegreeViolation,
                  "y" + std::to_string(y) + " has out-degree " +
                      std::to_string(adj.out(static_cast<Vertex>(y)).size()) + ", expected " +
                      std::to_string(params.kd()),
                  static_cast<std::int64_t>(y));
    }
  }
  for (std::size_t z = 0; z < adj.right_size(); ++z) {
    if (adj.in(static_cast<Vertex>(z)).size() != static_cast<std::size_t>(params.d())) {
      throw Error(ErrorCode::DegreeViolation,
                  "z" + std::to_string(z) + " has in-degree " +
                      std::to_string(adj.in(static_cast<Vertex>(z)).size()) + ", expected " +
                      std::to_string(params.d()),
                  static_cast<std::int64_t>(z));
    }
  }
}

}  // namespace

BipartiteDigraph::BipartiteDigraph(GraphParams params, std::vector<VertexList> out_adj)
    : BipartiteDigraph(params, BipartiteAdjacency(static_cast<std::size_t>(params.n()),
                                                  static_cast<std::size_t>(params.kn()),
                                                  std::move(out_adj))) {}

BipartiteDigraph::BipartiteDigraph(GraphParams params, BipartiteAdjacency adjacency)
    : params_(params), adj_(std::move(adjacency)) {
  check_biregular(adj_, params_);
}

bool is_biregular(const BipartiteAdjacency& adj, const GraphParams& params) {
  if (adj.left_size() != static_cast<std::size_t>(params.n()) ||
      adj.right_size() != static_cast<std::size_t>(params.kn())) {
    return false;
  }
  std::vector<std::size_t> in_count(adj.right_size(), 0);
  for (std::size_t y = 0; y < adj.left_size(); ++y) {
    auto list = adj.out(static_cast<Vertex>(y));
    if (list.size() != static_cast<std::size_t>(params.kd())) return false;
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (list[j] >= adj.right_size()) return false;
      if (j > 0 && list[j] <= list[j - 1]) return false;
      ++in_count[list[j]];
    }
  }
  for (std::size_t z = 0; z < adj.right_size(); ++z) {
    auto list = adj.in(static_cast<Vertex>(z));
    if (in_count[z] != static_cast<std::size_t>(params.d()) || list.size() != in_count[z]) {
      return false;
    }
    for (Vertex y : list) {
      if (!adj.has_edge(y, static_cast<Vertex>(z))) return false;
    }
  }
  return true;
}

InducedSubgraph induce(const BipartiteAdjacency& g, std::span<const Vertex> a,
                       std::span<const Vertex> b) {
  constexpr Vertex kAbsent = static_cast<Vertex>(-1);
  std::vector<Vertex> b_local(g.right_size(), kAbsent);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] >= g.right_size()) {
      throw Error(ErrorCode::IndexOutOfRange, "B vertex " + std::to_string(b[j]) +
                                                  " outside [0, " +
                                                  std::to_string(g.right_size()) + ")");
    }
    if (b_local[b[j]] != kAbsent) {
      throw Error(ErrorCode::InvalidArgument, "B lists vertex " + std::to_string(b[j]) +
                                                  " twice");
    }
    b_local[b[j]] = static_cast<Vertex>(j);
  }
  std::vector<bool> seen_a(g.left_size(), false);
  std::vector<VertexList> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= g.left_size()) {
      throw Error(ErrorCode::IndexOutOfRange, "A vertex " + std::to_string(a[i]) +
                                                  " outside [0, " +
                                                  std::to_string(g.left_size()) + ")");
    }
    if (seen_a[a[i]]) {
      throw Error(ErrorCode::InvalidArgument, "A lists vertex " + std::to_string(a[i]) +
                                                  " twice");
    }
    seen_a[a[i]] = true;
    for (Vertex z : g.out(a[i])) {
      if (b_local[z] != kAbsent) out[i].push_back(b_local[z]);
    }
  }
  InducedSubgraph h;
  h.a_vertices.assign(a.begin(), a.end());
  h.b_vertices.assign(b.begin(), b.end());
  h.local = BipartiteAdjacency(a.size(), b.size(), std::move(out));
  return h;
}

DegreeSummary min_degrees(const BipartiteAdjacency& h) {
  if (h.left_size() == 0 || h.right_size() == 0) {
    throw Error(ErrorCode::EmptySide, "minimum degree of a graph with an empty side");
  }
  DegreeSummary s;
  s.delta_out = h.out(0).size();
  for (std::size_t a = 1; a < h.left_size(); ++a) {
    s.delta_out = std::min(s.delta_out, h.out(static_cast<Vertex>(a)).size());
  }
  s.delta_in = h.in(0).size();
  for (std::size_t b = 1; b < h.right_size(); ++b) {
    s.delta_in = std::min(s.delta_in, h.in(static_cast<Vertex>(b)).size());
  }
  s.delta = std::min(s.delta_out, s.delta_in);
  return s;
}

BipartiteDigraph circulant_graph(const GraphParams& params) {
  if (!params.integer_k()) {
    throw Error(ErrorCode::NonIntegerK,
                "circulant construction needs integer k, got " + params.describe());
  }
  const std::int64_t k = params.k_num();
  const std::int64_t kn = params.kn();
  std::vector<VertexList> out(static_cast<std::size_t>(params.n()));
  for (std::int64_t y = 0; y < params.n(); ++y) {
    auto& list = out[static_cast<std::size_t>(y)];
    list.reserve(static_cast<std::size_t>(params.kd()));
    for (std::int64_t j = 0; j < params.kd(); ++j) {
      list.push_back(static_cast<Vertex>((y * k + j) % kn));
    }
  }
  return BipartiteDigraph(params, std::move(out));
}

BipartiteDigraph wrapped_block_graph(const GraphParams& params) {
  const std::int64_t kn = params.kn();
  const std::int64_t kd = params.kd();
  std::vector<VertexList> out(static_cast<std::size_t>(params.n()));
  for (std::int64_t y = 0; y < params.n(); ++y) {
    auto& list = out[static_cast<std::size_t>(y)];
    list.reserve(static_cast<std::size_t>(kd));
    for (std::int64_t j = 0; j < kd; ++j) {
      list.push_back(static_cast<Vertex>((y * kd + j) % kn));
    }
  }
  return BipartiteDigraph(params, std::move(out));
}

VertexList neighborhood(const BipartiteAdjacency& g, std::span<const Vertex> s,
                        Direction direction, unsigned i) {
  const std::size_t from_size = direction == Direction::Out ? g.left_size() : g.right_size();
  const std::size_t to_size = direction == Direction::Out ? g.right_size() : g.left_size();
  for (Vertex v : s) {
    if (v >= from_size) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "vertex " + std::to_string(v) + " outside [0, " + std::to_string(from_size) + ")");
    }
  }
  if (i == 0) {
    VertexList result(s.begin(), s.end());
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }
  if (i > 1) {
    throw Error(ErrorCode::DirectionUnavailable,
                "a single bipartite layer supports at most one step, asked for " +
                    std::to_string(i));
  }
  std::vector<bool> hit(to_size, false);
  for (Vertex v : s) {
    for (Vertex w : direction == Direction::Out ? g.out(v) : g.in(v)) hit[w] = true;
  }
  VertexList result;
  for (std::size_t w = 0; w < to_size; ++w) {
    if (hit[w]) result.push_back(static_cast<Vertex>(w));
  }
  return result;
}

BipartiteDigraph apply_switching(const BipartiteDigraph& g, Vertex a, Vertex b, Vertex c,
                                 Vertex d) {
  const auto n = static_cast<Vertex>(g.params().n());
  const auto kn = static_cast<Vertex>(g.params().kn());
  if (a >= n || b >= n || c >= kn || d >= kn) {
    throw Error(ErrorCode::IndexOutOfRange, "switching vertex outside the graph");
  }
  auto edge_name = [](Vertex y, Vertex z) {
    return "y" + std::to_string(y) + "->z" + std::to_string(z);
  };
  if (!g.has_edge(a, c)) {
    throw Error(ErrorCode::PreconditionViolated, "missing edge " + edge_name(a, c));
  }
  if (!g.has_edge(b, d)) {
    throw Error(ErrorCode::PreconditionViolated, "missing edge " + edge_name(b, d));
  }
  if (g.has_edge(a, d)) {
    throw Error(ErrorCode::PreconditionViolated, "edge " + edge_name(a, d) + " already present");
  }
  if (g.has_edge(b, c)) {
    throw Error(ErrorCode::PreconditionViolated, "edge " + edge_name(b, c) + " already present");
  }
  std::vector<VertexList> out = g.out_lists();
  std::replace(out[a].begin(), out[a].end(), c, d);
  std::replace(out[b].begin(), out[b].end(), d, c);
  return BipartiteDigraph(g.params(), std::move(out));
}

}  // namespace bireg
