#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "bireg/graph.hpp"
#include "bireg/layered.hpp"

namespace bireg {

// BRG1:  "BRG1 <k_num> <k_den> <n> <d>" then n lines of kd sorted 0-based
//        out-neighbors.
// LAY1:  "LAY1 <k_num> <k_den> <m> <h>" then h BRG1 blocks; block i has
//        n = k^(i-1) m.
void write_brg1(std::ostream& os, const BipartiteDigraph& g);
void write_lay1(std::ostream& os, const LayeredGraph& g);

// Malformed text throws ParseError (detail = 1-based line); a degree or
// duplicate-neighbor violation throws DegreeViolation (detail = vertex).
BipartiteDigraph read_brg1(std::istream& is);
LayeredGraph read_lay1(std::istream& is);

using AnyGraph = std::variant<BipartiteDigraph, LayeredGraph>;

// Dispatches on the magic word of the first line.
AnyGraph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const AnyGraph& g);

}  // namespace bireg
