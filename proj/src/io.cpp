#include "bireg/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bireg/error.hpp"

namespace bireg {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next raw line; ParseError at EOF.
  std::string require(const char* what) {
    std::string line;
    if (!std::getline(is_, line)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_ + 1) + ": unexpected end of input, expected " +
                      what,
                  line_ + 1);
    }
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  // Only whitespace may follow the last block.
  void expect_end() {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_) + ": trailing content after last block",
                    line_);
      }
    }
  }

  std::int64_t line() const { return line_; }

 private:
  std::istream& is_;
  std::int64_t line_ = 0;
};

[[noreturn]] void parse_fail(std::int64_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg, line);
}

std::vector<std::int64_t> parse_ints(const std::string& text, std::int64_t line) {
  std::vector<std::int64_t> values;
  std::istringstream ss(text);
  std::string token;
  while (ss >> token) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      parse_fail(line, "'" + token + "' is not an integer");
    }
    values.push_back(v);
  }
  return values;
}

struct Header {
  std::int64_t a, b, c, d;
};

Header parse_header(const std::string& text, std::string_view magic, std::int64_t line) {
  std::istringstream ss(text);
  std::string word;
  ss >> word;
  if (word != magic) {
    parse_fail(line, "expected '" + std::string(magic) + "' header, got '" + word + "'");
  }
  std::string rest;
  std::getline(ss, rest);
  const auto values = parse_ints(rest, line);
  if (values.size() != 4) {
    parse_fail(line, std::string(magic) + " header needs 4 integers");
  }
  return {values[0], values[1], values[2], values[3]};
}

BipartiteDigraph read_brg1_block(LineReader& reader) {
  const std::string header_text = reader.require("BRG1 header");
  const std::int64_t header_line = reader.line();
  const Header h = parse_header(header_text, "BRG1", header_line);
  GraphParams params = [&] {
    try {
      return validate_params(h.a, h.b, h.c, h.d);
    } catch (const Error& e) {
      parse_fail(header_line, e.what());
    }
  }();
  const auto n = static_cast<std::size_t>(params.n());
  const auto kn = params.kn();
  const auto kd = static_cast<std::size_t>(params.kd());
  std::vector<VertexList> out(n);
  for (std::size_t y = 0; y < n; ++y) {
    const std::string text = reader.require("out-neighbor line");
    const auto values = parse_ints(text, reader.line());
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] < 0 || values[j] >= kn) {
        parse_fail(reader.line(), "neighbor " + std::to_string(values[j]) +
                                      " outside [0, " + std::to_string(kn) + ")");
      }
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
      for (std::size_t l = 0; l < j; ++l) {
        if (values[l] == values[j]) {
          throw Error(ErrorCode::DegreeViolation,
                      "line " + std::to_string(reader.line()) + ": y" + std::to_string(y) +
                          " lists neighbor " + std::to_string(values[j]) + " twice",
                      static_cast<std::int64_t>(y));
        }
      }
    }
    if (values.size() != kd) {
      throw Error(ErrorCode::DegreeViolation,
                  "line " + std::to_string(reader.line()) + ": y" + std::to_string(y) + " has " +
                      std::to_string(values.size()) + " out-neighbors, expected " +
                      std::to_string(kd),
                  static_cast<std::int64_t>(y));
    }
    if (!std::is_sorted(values.begin(), values.end())) {
      parse_fail(reader.line(), "out-neighbors are not sorted");
    }
    out[y].assign(values.begin(), values.end());
  }
  // The constructor reports in-degree violations by vertex.
  return BipartiteDigraph(params, std::move(out));
}

void write_block(std::ostream& os, const BipartiteDigraph& g) {
  const auto& p = g.params();
  os << "BRG1 " << p.k_num() << ' ' << p.k_den() << ' ' << p.n() << ' ' << p.d() << '\n';
  for (const auto& list : g.out_lists()) {
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (j > 0) os << ' ';
      os << list[j];
    }
    os << '\n';
  }
}

}  // namespace

void write_brg1(std::ostream& os, const BipartiteDigraph& g) { write_block(os, g); }

void write_lay1(std::ostream& os, const LayeredGraph& g) {
  std::vector<BipartiteDigraph> blocks;
  for (unsigned i = 1; i <= g.h(); ++i) {
    auto params = g.layer_params(i);
    if (!params) {
      throw Error(ErrorCode::InvalidArgument,
                  "layer " + std::to_string(i) + " is not biregular; LAY1 cannot encode it");
    }
    if (!blocks.empty() && blocks.front().params().k() != params->k()) {
      throw Error(ErrorCode::InvalidArgument, "layers disagree on k; LAY1 cannot encode it");
    }
    blocks.emplace_back(*params, g.layer(i));
  }
  const auto& first = blocks.front().params();
  os << "LAY1 " << first.k_num() << ' ' << first.k_den() << ' ' << first.n() << ' ' << g.h()
     << '\n';
  for (const auto& block : blocks) write_block(os, block);
}

BipartiteDigraph read_brg1(std::istream& is) {
  LineReader reader(is);
  auto g = read_brg1_block(reader);
  reader.expect_end();
  return g;
}

LayeredGraph read_lay1(std::istream& is) {
  LineReader reader(is);
  const std::string header_text = reader.require("LAY1 header");
  const Header h = parse_header(header_text, "LAY1", 1);
  const std::int64_t m = h.c;
  const std::int64_t levels = h.d;
  if (h.a <= 0 || h.b <= 0 || m <= 0 || levels <= 0) {
    parse_fail(1, "LAY1 header values must be positive");
  }
  const Rational k(h.a, h.b);
  Rational expected_n(m);
  std::vector<BipartiteAdjacency> layers;
  for (std::int64_t i = 1; i <= levels; ++i) {
    const std::int64_t block_line = reader.line() + 1;
    auto block = read_brg1_block(reader);
    const auto& p = block.params();
    if (p.k() != k) {
      parse_fail(block_line, "block " + std::to_string(i) + " has k=" + to_string(p.k()) +
                                 ", header says " + to_string(k));
    }
    if (boost::multiprecision::denominator(expected_n) != 1 || Rational(p.n()) != expected_n) {
      parse_fail(block_line, "block " + std::to_string(i) + " has n=" + std::to_string(p.n()) +
                                 ", expected |X_" + std::to_string(i - 1) +
                                 "| = " + to_string(expected_n));
    }
    layers.push_back(block.adjacency());
    expected_n *= k;
  }
  reader.expect_end();
  return LayeredGraph(std::move(layers));
}

AnyGraph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::string magic;
  in >> magic;
  in.clear();
  in.seekg(0);
  if (magic == "BRG1") return read_brg1(in);
  if (magic == "LAY1") return read_lay1(in);
  throw Error(ErrorCode::ParseError, "line 1: unknown format '" + magic + "'", 1);
}

void write_graph(const std::filesystem::path& path, const AnyGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  std::visit(
      [&](const auto& graph) {
        using T = std::decay_t<decltype(graph)>;
        if constexpr (std::is_same_v<T, BipartiteDigraph>) {
          write_brg1(out, graph);
        } else {
          write_lay1(out, graph);
        }
      },
      g);
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

}  // namespace bireg
