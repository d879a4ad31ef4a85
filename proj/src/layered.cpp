#include "bireg/layered.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bireg/error.hpp"

namespace bireg {

LayeredGraph::LayeredGraph(std::vector<BipartiteAdjacency> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a layered graph needs at least one layer");
  }
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    if (layers_[i - 1].right_size() != layers_[i].left_size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "layer " + std::to_string(i) + " ends on " +
                      std::to_string(layers_[i - 1].right_size()) + " vertices but layer " +
                      std::to_string(i + 1) + " starts on " +
                      std::to_string(layers_[i].left_size()));
    }
  }
}

std::size_t LayeredGraph::level_size(unsigned level) const {
  if (level > h()) {
    throw Error(ErrorCode::LayerOutOfRange, "level " + std::to_string(level) + " > h");
  }
  return level == 0 ? layers_.front().left_size() : layers_[level - 1].right_size();
}

std::vector<std::size_t> LayeredGraph::level_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(layers_.size() + 1);
  for (unsigned level = 0; level <= h(); ++level) sizes.push_back(level_size(level));
  return sizes;
}

const BipartiteAdjacency& LayeredGraph::layer(unsigned i) const {
  if (i == 0 || i > h()) {
    throw Error(ErrorCode::LayerOutOfRange,
                "layer " + std::to_string(i) + " outside [1, " + std::to_string(h()) + "]");
  }
  return layers_[i - 1];
}

std::size_t LayeredGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer.edge_count();
  return total;
}

LayeredGraph LayeredGraph::reversed() const {
  std::vector<BipartiteAdjacency> rev;
  rev.reserve(layers_.size());
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) rev.push_back(it->reversed());
  return LayeredGraph(std::move(rev));
}

std::optional<GraphParams> LayeredGraph::layer_params(unsigned i) const {
  const auto& adj = layer(i);
  if (adj.left_size() == 0 || adj.right_size() == 0) return std::nullopt;
  const auto n = static_cast<std::int64_t>(adj.left_size());
  const auto kn = static_cast<std::int64_t>(adj.right_size());
  const auto d = static_cast<std::int64_t>(adj.in(0).size());
  const std::int64_t g = std::gcd(kn, n);
  try {
    auto params = validate_params(kn / g, n / g, n, d);
    if (!is_biregular(adj, params)) return std::nullopt;
    return params;
  } catch (const Error&) {
    return std::nullopt;
  }
}

VertexList neighborhood(const LayeredGraph& g, std::span<const Vertex> s, unsigned from_level,
                        Direction direction, unsigned i) {
  if (from_level > g.h()) {
    throw Error(ErrorCode::LayerOutOfRange, "level " + std::to_string(from_level) + " > h");
  }
  const bool up = direction == Direction::Out;
  if ((up && from_level + i > g.h()) || (!up && i > from_level)) {
    throw Error(ErrorCode::DirectionUnavailable,
                std::to_string(i) + " steps from level " + std::to_string(from_level) +
                    " leave the graph");
  }
  const std::size_t size = g.level_size(from_level);
  for (Vertex v : s) {
    if (v >= size) {
      throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) +
                                                  " outside level " + std::to_string(from_level));
    }
  }
  VertexList current(s.begin(), s.end());
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  for (unsigned step = 0; step < i; ++step) {
    const unsigned layer = up ? from_level + step + 1 : from_level - step;
    current = neighborhood(g.layer(layer), current, direction, 1);
  }
  return current;
}

}  // namespace bireg
