#include "bireg/matching.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "bireg/error.hpp"

namespace bireg {

namespace {

constexpr Vertex kFree = std::numeric_limits<Vertex>::max();
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteAdjacency& g)
      : g_(g),
        mate_left_(g.left_size(), kFree),
        mate_right_(g.right_size(), kFree),
        dist_(g.left_size(), kInf),
        next_edge_(g.left_size(), 0) {}

  std::size_t run() {
    std::size_t size = greedy();
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (Vertex a = 0; a < g_.left_size(); ++a) {
        if (mate_left_[a] == kFree && dfs(a)) ++size;
      }
    }
    return size;
  }

  const std::vector<Vertex>& mate_left() const { return mate_left_; }
  const std::vector<Vertex>& mate_right() const { return mate_right_; }

 private:
  std::size_t greedy() {
    std::size_t size = 0;
    for (Vertex a = 0; a < g_.left_size(); ++a) {
      for (Vertex b : g_.out(a)) {
        if (mate_right_[b] == kFree) {
          mate_left_[a] = b;
          mate_right_[b] = a;
          ++size;
          break;
        }
      }
    }
    return size;
  }

  // Layers free left vertices at distance 0; true iff some free right vertex
  // is reachable along alternating paths.
  bool bfs() {
    queue_.clear();
    for (Vertex a = 0; a < g_.left_size(); ++a) {
      if (mate_left_[a] == kFree) {
        dist_[a] = 0;
        queue_.push_back(a);
      } else {
        dist_[a] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex a = queue_[head];
      for (Vertex b : g_.out(a)) {
        const Vertex next = mate_right_[b];
        if (next == kFree) {
          found = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[a] + 1;
          queue_.push_back(next);
        }
      }
    }
    return found;
  }

  bool dfs(Vertex a) {
    const auto out = g_.out(a);
    for (std::size_t& i = next_edge_[a]; i < out.size(); ++i) {
      const Vertex b = out[i];
      const Vertex next = mate_right_[b];
      if (next == kFree || (dist_[next] == dist_[a] + 1 && dfs(next))) {
        mate_left_[a] = b;
        mate_right_[b] = a;
        ++i;
        return true;
      }
    }
    dist_[a] = kInf;
    return false;
  }

  const BipartiteAdjacency& g_;
  std::vector<Vertex> mate_left_;
  std::vector<Vertex> mate_right_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> next_edge_;
  std::vector<Vertex> queue_;
};

void require_square(const BipartiteAdjacency& h) {
  if (h.left_size() != h.right_size()) {
    throw Error(ErrorCode::UnequalSides, "|A| = " + std::to_string(h.left_size()) +
                                             " but |B| = " + std::to_string(h.right_size()));
  }
}

}  // namespace

Matching max_matching(const BipartiteAdjacency& h) {
  HopcroftKarp hk(h);
  hk.run();
  Matching m;
  for (Vertex a = 0; a < h.left_size(); ++a) {
    if (hk.mate_left()[a] != kFree) m.pairs.emplace_back(a, hk.mate_left()[a]);
  }
  return m;
}

bool has_perfect_matching(const BipartiteAdjacency& h) {
  require_square(h);
  return HopcroftKarp(h).run() == h.left_size();
}

bool saturates_right(const BipartiteAdjacency& h) {
  if (h.right_size() > h.left_size()) return false;
  return HopcroftKarp(h).run() == h.right_size();
}

std::optional<ProblematicPair> find_problematic_pair(const BipartiteAdjacency& h) {
  require_square(h);
  HopcroftKarp hk(h);
  if (hk.run() == h.left_size()) return std::nullopt;

  std::vector<bool> in_s(h.left_size(), false);
  std::vector<bool> in_gamma(h.right_size(), false);
  std::vector<Vertex> queue;
  for (Vertex a = 0; a < h.left_size(); ++a) {
    if (hk.mate_left()[a] == kFree) {
      in_s[a] = true;
      queue.push_back(a);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex b : h.out(queue[head])) {
      if (in_gamma[b]) continue;
      in_gamma[b] = true;
      // Maximality: every neighbor of S is matched.
      const Vertex next = hk.mate_right()[b];
      if (!in_s[next]) {
        in_s[next] = true;
        queue.push_back(next);
      }
    }
  }
  ProblematicPair pair;
  for (Vertex a = 0; a < h.left_size(); ++a) {
    if (in_s[a]) pair.s.push_back(a);
  }
  const std::size_t t_size = h.left_size() + 1 - pair.s.size();
  for (Vertex b = 0; b < h.right_size() && pair.t.size() < t_size; ++b) {
    if (!in_gamma[b]) pair.t.push_back(b);
  }
  return pair;
}

bool verify_problematic_pair(const BipartiteAdjacency& h, const ProblematicPair& pair) {
  if (pair.s.empty() || pair.t.empty()) return false;
  if (pair.s.size() + pair.t.size() != h.left_size() + 1) return false;
  std::vector<bool> in_s(h.left_size(), false);
  for (Vertex a : pair.s) {
    if (a >= h.left_size() || in_s[a]) return false;
    in_s[a] = true;
  }
  std::vector<bool> in_t(h.right_size(), false);
  for (Vertex b : pair.t) {
    if (b >= h.right_size() || in_t[b]) return false;
    in_t[b] = true;
  }
  for (Vertex a : pair.s) {
    for (Vertex b : h.out(a)) {
      if (in_t[b]) return false;
    }
  }
  return true;
}

bool verify_matching(const BipartiteAdjacency& h, const Matching& m) {
  std::vector<bool> used_left(h.left_size(), false);
  std::vector<bool> used_right(h.right_size(), false);
  for (auto [a, b] : m.pairs) {
    if (a >= h.left_size() || b >= h.right_size()) return false;
    if (used_left[a] || used_right[b] || !h.has_edge(a, b)) return false;
    used_left[a] = used_right[b] = true;
  }
  return true;
}

}  // namespace bireg
