#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bireg/error.hpp"
#include "bireg/io.hpp"
#include "bireg/plunnecke.hpp"
#include "bireg/sampler.hpp"

using namespace bireg;

namespace {

Error error_of(const std::string& text, bool layered = false) {
  std::istringstream in(text);
  try {
    if (layered) {
      read_lay1(in);
    } else {
      read_brg1(in);
    }
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return Error(ErrorCode::InvalidArgument, "none");
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bireg_io_" + name);
}

}  // namespace

TEST(Brg1, WritesExpectedText) {
  std::ostringstream out;
  write_brg1(out, circulant_graph(validate_params(1, 1, 3, 2)));
  EXPECT_EQ(out.str(), "BRG1 1 1 3 2\n0 1\n1 2\n0 2\n");
}

TEST(Brg1, RoundTrip) {
  const auto g = sample(validate_params(3, 2, 8, 4), SwitchChain{}, Seed{12});
  std::stringstream io;
  write_brg1(io, g);
  EXPECT_EQ(read_brg1(io), g);
}

TEST(Brg1, FileRoundTrip) {
  const auto g = sample(validate_params(2, 1, 6, 2), PairingRejection{}, Seed{4});
  const auto path = temp_file("g.brg1");
  write_graph(path, g);
  const AnyGraph back = read_graph(path);
  ASSERT_TRUE(std::holds_alternative<BipartiteDigraph>(back));
  EXPECT_EQ(std::get<BipartiteDigraph>(back), g);
  std::filesystem::remove(path);
}

TEST(Brg1, DuplicateNeighborIsDegreeViolation) {
  const Error e = error_of("BRG1 1 1 3 2\n0 0\n1 2\n0 2\n");
  EXPECT_EQ(e.code(), ErrorCode::DegreeViolation);
  EXPECT_EQ(e.detail(), 0);
}

TEST(Brg1, WrongInDegreeIsDegreeViolation) {
  const Error e = error_of("BRG1 1 1 3 2\n0 1\n0 1\n0 2\n");
  EXPECT_EQ(e.code(), ErrorCode::DegreeViolation);
}

TEST(Brg1, WrongOutDegreeIsDegreeViolation) {
  const Error e = error_of("BRG1 1 1 3 2\n0 1 2\n1 2\n0 2\n");
  EXPECT_EQ(e.code(), ErrorCode::DegreeViolation);
  EXPECT_EQ(e.detail(), 0);
}

TEST(Brg1, MalformedInputReportsLine) {
  Error e = error_of("BRG2 1 1 3 2\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.detail(), 1);
  e = error_of("BRG1 1 1 3 2\n0 1\n2 1\n0 2\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.detail(), 3);
  e = error_of("BRG1 1 1 3 2\n0 1\n1 7\n0 2\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.detail(), 3);
  e = error_of("BRG1 1 1 3 2\n0 1\n1 x\n0 2\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  e = error_of("BRG1 1 1 3 2\n0 1\n1 2\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  e = error_of("BRG1 1 2 3 2\n");
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.detail(), 1);
}

TEST(Lay1, RoundTrip) {
  const auto g = build_random_layered(Rational(2), 4, 2, 3, Seed{8}, SwitchChain{});
  std::stringstream io;
  write_lay1(io, g);
  EXPECT_EQ(read_lay1(io), g);
  const auto path = temp_file("g.lay1");
  write_graph(path, g);
  EXPECT_EQ(std::get<LayeredGraph>(read_graph(path)), g);
  std::filesystem::remove(path);
}

TEST(Lay1, MismatchedLayerSizesIsParseError) {
  // Second block should describe G(1, 2, .) on X_1 of size 2.
  const Error e = error_of("LAY1 1 1 2 2\nBRG1 1 1 2 1\n0\n1\nBRG1 1 1 3 1\n0\n1\n2\n", true);
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
  EXPECT_EQ(e.detail(), 5);
}

TEST(Lay1, RejectsDifferentK) {
  const Error e = error_of("LAY1 1 1 2 1\nBRG1 2 1 2 1\n0 1\n2 3\n", true);
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
}

TEST(Io, MissingFileIsIoError) {
  try {
    read_graph("/nonexistent/dir/g.brg1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}
