#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bireg/graph.hpp"

namespace bireg {

// Vertex set X_0, ..., X_h with edges only from X_{i-1} to X_i. Layers are
// numbered 1..h; layer i holds the X_{i-1} -> X_i edges.
class LayeredGraph {
 public:
  // Throws InvalidArgument when the layer list is empty or consecutive
  // layers disagree on the size of the shared vertex level.
  explicit LayeredGraph(std::vector<BipartiteAdjacency> layers);

  unsigned h() const { return static_cast<unsigned>(layers_.size()); }
  std::size_t level_size(unsigned level) const;
  std::vector<std::size_t> level_sizes() const;
  const BipartiteAdjacency& layer(unsigned i) const;
  std::size_t edge_count() const;

  // X'_j = X_{h-j}; layer j of the result is layer h-j+1 reversed.
  LayeredGraph reversed() const;

  // Model parameters of layer i when it is biregular, nullopt otherwise.
  std::optional<GraphParams> layer_params(unsigned i) const;

  friend bool operator==(const LayeredGraph&, const LayeredGraph&) = default;

 private:
  std::vector<BipartiteAdjacency> layers_;
};

// Iterated neighborhood starting from level `from_level`: Out walks i layers
// upward, In walks i layers downward. Walking past X_h or X_0 throws
// DirectionUnavailable.
VertexList neighborhood(const LayeredGraph& g, std::span<const Vertex> s, unsigned from_level,
                        Direction direction, unsigned i);

}  // namespace bireg
