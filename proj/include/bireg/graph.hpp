#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bireg/params.hpp"

namespace bireg {

using Vertex = std::uint32_t;
using VertexList = std::vector<Vertex>;

// Directed bipartite adjacency from a left side [0, left) to a right side
// [0, right). Out-lists are sorted and duplicate free; the transpose is
// built on construction and never changes afterwards.
class BipartiteAdjacency {
 public:
  BipartiteAdjacency() = default;
  // Sorts every list; throws DegreeViolation on a repeated neighbor and
  // IndexOutOfRange on a right index >= right.
  BipartiteAdjacency(std::size_t left, std::size_t right, std::vector<VertexList> out);

  std::size_t left_size() const { return out_.size(); }
  std::size_t right_size() const { return in_.size(); }
  std::size_t edge_count() const { return edges_; }

  std::span<const Vertex> out(Vertex a) const { return out_[a]; }
  std::span<const Vertex> in(Vertex b) const { return in_[b]; }
  const std::vector<VertexList>& out_lists() const { return out_; }
  const std::vector<VertexList>& in_lists() const { return in_; }

  bool has_edge(Vertex a, Vertex b) const;

  // Same vertex sets with every edge reversed (right side becomes left).
  BipartiteAdjacency reversed() const;

  friend bool operator==(const BipartiteAdjacency& x, const BipartiteAdjacency& y) {
    return x.out_ == y.out_ && x.in_.size() == y.in_.size();
  }

 private:
  std::vector<VertexList> out_;
  std::vector<VertexList> in_;
  std::size_t edges_ = 0;
};

// A member of the family G(k, n, d): Y = [0, n), Z = [0, kn).
class BipartiteDigraph {
 public:
  // Checks out-degree kd on every y and in-degree d on every z; throws
  // DegreeViolation naming the first offending vertex.
  BipartiteDigraph(GraphParams params, std::vector<VertexList> out_adj);
  BipartiteDigraph(GraphParams params, BipartiteAdjacency adjacency);

  const GraphParams& params() const { return params_; }
  const BipartiteAdjacency& adjacency() const { return adj_; }
  std::span<const Vertex> out(Vertex y) const { return adj_.out(y); }
  std::span<const Vertex> in(Vertex z) const { return adj_.in(z); }
  bool has_edge(Vertex y, Vertex z) const { return adj_.has_edge(y, z); }
  const std::vector<VertexList>& out_lists() const { return adj_.out_lists(); }

  friend bool operator==(const BipartiteDigraph& x, const BipartiteDigraph& y) {
    return x.params_ == y.params_ && x.adj_ == y.adj_;
  }

 private:
  GraphParams params_;
  BipartiteAdjacency adj_;
};

// Full degree scan: true iff every y has kd distinct out-neighbors, every z has
// d in-neighbors and in/out lists are exact transposes.
bool is_biregular(const BipartiteAdjacency& adj, const GraphParams& params);

// Subgraph on (A, B). Local vertex i on the A side is parent vertex a_vertices[i].
struct InducedSubgraph {
  VertexList a_vertices;
  VertexList b_vertices;
  BipartiteAdjacency local;
};

InducedSubgraph induce(const BipartiteAdjacency& g, std::span<const Vertex> a,
                       std::span<const Vertex> b);
inline InducedSubgraph induce(const BipartiteDigraph& g, std::span<const Vertex> a,
                              std::span<const Vertex> b) {
  return induce(g.adjacency(), a, b);
}

struct DegreeSummary {
  std::size_t delta_out = 0;
  std::size_t delta_in = 0;
  std::size_t delta = 0;

  friend bool operator==(const DegreeSummary&, const DegreeSummary&) = default;
};

// Throws EmptySide when either side has no vertices.
DegreeSummary min_degrees(const BipartiteAdjacency& h);
inline DegreeSummary min_degrees(const InducedSubgraph& h) { return min_degrees(h.local); }

enum class Direction { Out, In };

// Requires integer k; Y is embedded in Z_{kn} as {0, k, ..., (n-1)k} and
// y -> z iff z - y lies in {0, ..., kd-1} mod kn. Vertex y of the result is the
// embedded element y*k.
BipartiteDigraph circulant_graph(const GraphParams& params);

// Biregular graph for any rational k: y owns the consecutive stub block
// {y*kd, ..., y*kd + kd - 1} taken mod kn.
BipartiteDigraph wrapped_block_graph(const GraphParams& params);

// i = 0 returns S; i = 1 returns Gamma(S) (Out) or Gamma^-(S) (In). A single
// bipartite layer cannot be iterated further: DirectionUnavailable.
VertexList neighborhood(const BipartiteAdjacency& g, std::span<const Vertex> s,
                        Direction direction, unsigned i = 1);
inline VertexList neighborhood(const BipartiteDigraph& g, std::span<const Vertex> s,
                               Direction direction, unsigned i = 1) {
  return neighborhood(g.adjacency(), s, direction, i);
}

// The {ac,bd}-switching: requires ac, bd present and ad, bc absent.
BipartiteDigraph apply_switching(const BipartiteDigraph& g, Vertex a, Vertex b, Vertex c,
                                 Vertex d);

}  // namespace bireg
