#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "bireg/graph.hpp"
#include "bireg/layered.hpp"
#include "bireg/rational.hpp"

namespace testing_support {

using bireg::BipartiteAdjacency;
using bireg::Vertex;
using bireg::VertexList;

// Each possible edge present independently with probability p.
inline BipartiteAdjacency random_bipartite(std::size_t left, std::size_t right, double p,
                                           std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<VertexList> out(left);
  for (auto& list : out) {
    for (Vertex b = 0; b < right; ++b) {
      if (coin(rng)) list.push_back(b);
    }
  }
  return BipartiteAdjacency(left, right, std::move(out));
}

// Largest matching by trying every injection of the left side (|A| <= 7).
inline std::size_t brute_max_matching(const BipartiteAdjacency& h) {
  const std::size_t left = h.left_size();
  std::size_t best = 0;
  std::vector<bool> used(h.right_size(), false);
  auto rec = [&](auto&& self, std::size_t a, std::size_t size) -> void {
    if (a == left) {
      best = std::max(best, size);
      return;
    }
    if (size + (left - a) <= best) return;
    self(self, a + 1, size);
    for (Vertex b : h.out(static_cast<Vertex>(a))) {
      if (used[b]) continue;
      used[b] = true;
      self(self, a + 1, size + 1);
      used[b] = false;
    }
  };
  rec(rec, 0, 0);
  return best;
}

// True iff some nonempty S, T with |S| + |T| = |A| + 1 and no S-T edge exist.
inline bool brute_problematic_exists(const BipartiteAdjacency& h) {
  const std::size_t a = h.left_size();
  const std::size_t b = h.right_size();
  for (std::uint32_t s_mask = 1; s_mask < (1u << a); ++s_mask) {
    std::uint32_t gamma = 0;
    for (std::size_t x = 0; x < a; ++x) {
      if (s_mask >> x & 1u) {
        for (Vertex y : h.out(static_cast<Vertex>(x))) gamma |= 1u << y;
      }
    }
    const std::size_t s_size = static_cast<std::size_t>(__builtin_popcount(s_mask));
    const std::size_t outside = b - static_cast<std::size_t>(__builtin_popcount(gamma));
    const std::size_t t_size = a + 1 - s_size;
    if (t_size >= 1 && outside >= t_size) return true;
  }
  return false;
}

// Minimum |Gamma^(i)(Z)| / |Z| over nonempty Z, computed with std::set.
inline bireg::Rational brute_magnification(const bireg::LayeredGraph& g, unsigned i) {
  const std::size_t base = g.level_size(0);
  bireg::Rational best(-1);
  for (std::uint32_t mask = 1; mask < (1u << base); ++mask) {
    std::set<Vertex> frontier;
    for (Vertex x = 0; x < base; ++x) {
      if (mask >> x & 1u) frontier.insert(x);
    }
    const auto size = frontier.size();
    for (unsigned level = 1; level <= i; ++level) {
      std::set<Vertex> next;
      for (Vertex v : frontier) {
        for (Vertex w : g.layer(level).out(v)) next.insert(w);
      }
      frontier = std::move(next);
    }
    const bireg::Rational ratio(static_cast<std::int64_t>(frontier.size()),
                                static_cast<std::int64_t>(size));
    if (best < 0 || ratio < best) best = ratio;
  }
  return best;
}

inline std::size_t reach_size(const bireg::LayeredGraph& g, const VertexList& z, unsigned i) {
  return bireg::neighborhood(g, z, 0, bireg::Direction::Out, i).size();
}

}  // namespace testing_support
