#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bireg/graph.hpp"

namespace bireg {

// Vertex-disjoint edges (a, b) in local indices of the queried graph, sorted by a.
struct Matching {
  std::vector<std::pair<Vertex, Vertex>> pairs;

  std::size_t size() const { return pairs.size(); }
};

// Frobenius-Konig counter-witness: nonempty S of the left side and T of the
// right side with |S| + |T| = |A| + 1 and no edge from S into T.
struct ProblematicPair {
  VertexList s;
  VertexList t;

  friend bool operator==(const ProblematicPair&, const ProblematicPair&) = default;
};

// Hopcroft-Karp; O(E sqrt(V)).
Matching max_matching(const BipartiteAdjacency& h);
inline Matching max_matching(const InducedSubgraph& h) { return max_matching(h.local); }

// Throws UnequalSides unless |A| = |B|.
bool has_perfect_matching(const BipartiteAdjacency& h);
inline bool has_perfect_matching(const InducedSubgraph& h) {
  return has_perfect_matching(h.local);
}

// True iff some matching covers every right-side vertex.
bool saturates_right(const BipartiteAdjacency& h);

// S is the set of left vertices reachable by alternating paths from the
// vertices a maximum matching leaves uncovered; T is the lexicographically
// first completion outside Gamma(S). Nullopt iff a perfect matching exists.
// Throws UnequalSides unless |A| = |B|.
std::optional<ProblematicPair> find_problematic_pair(const BipartiteAdjacency& h);
inline std::optional<ProblematicPair> find_problematic_pair(const InducedSubgraph& h) {
  return find_problematic_pair(h.local);
}

// Re-checks the three witness invariants directly against h.
bool verify_problematic_pair(const BipartiteAdjacency& h, const ProblematicPair& pair);
// Checks disjointness and edge membership of every pair.
bool verify_matching(const BipartiteAdjacency& h, const Matching& m);

}  // namespace bireg
