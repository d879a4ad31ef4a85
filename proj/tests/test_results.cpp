#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bireg/error.hpp"
#include "bireg/results.hpp"

using namespace bireg;

namespace {

SweepResult small_sweep() {
  return sweep_matching({validate_params(1, 1, 200, 5), validate_params(1, 1, 200, 30)}, 5,
                        Mode::AGamma, SwitchChain{}, Seed{3});
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

TEST(Results, CsvLayout) {
  std::ostringstream out;
  write_sweep_csv(small_sweep(), out, {{"seed", "3"}});
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# seed: 3");
  std::getline(lines, line);
  EXPECT_EQ(line, kSweepCsvHeader);
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("AGamma,1,1,200,5,", 0), 0u) << line;
  // AGamma rows leave mean_q empty.
  EXPECT_EQ(line.back(), ',');
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(Results, EmptySweepIsHeaderOnly) {
  std::ostringstream out;
  write_sweep_csv(SweepResult{}, out, {});
  EXPECT_EQ(out.str(), std::string(kSweepCsvHeader) + "\n");
}

TEST(Results, FilesAreByteIdentical) {
  const auto dir = std::filesystem::temp_directory_path() / "bireg_results_test";
  std::filesystem::create_directories(dir);
  const auto result = small_sweep();
  for (auto format : {ResultFormat::Csv, ResultFormat::Json}) {
    write_results(result, (dir / "a").string(), format, {{"command", "test"}});
    write_results(small_sweep(), (dir / "b").string(), format, {{"command", "test"}});
    EXPECT_EQ(slurp(dir / "a"), slurp(dir / "b"));
    EXPECT_FALSE(slurp(dir / "a").empty());
  }
  std::filesystem::remove_all(dir);
}

TEST(Results, JsonRoundTrip) {
  const auto result = small_sweep();
  std::ostringstream out;
  write_sweep_json(result, out, {{"seed", "3"}});
  EXPECT_EQ(read_sweep_json(out.str()), result);

  const auto er = er_baseline_sweep(50, {0.0, 2.0}, 4, Seed{1});
  std::ostringstream er_out;
  write_sweep_json(er, er_out, {});
  const auto back = read_sweep_json(er_out.str());
  EXPECT_EQ(back, er);
  EXPECT_FALSE(back.rows[0].d);
  EXPECT_TRUE(back.rows[0].analytic);
}

TEST(Results, Errors) {
  EXPECT_THROW(parse_result_format("xml"), Error);
  try {
    read_sweep_json("{\"rows\": [{\"mode\": \"AB\"}]}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  try {
    write_results(SweepResult{}, "/nonexistent-dir/x.csv", ResultFormat::Csv, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(Results, SixSignificantDigits) {
  EXPECT_EQ(format_g6(0.1353352832366127), "0.135335");
  EXPECT_EQ(format_g6(-3.412), "-3.412");
  EXPECT_EQ(format_g6(1.0), "1");
}

TEST(Results, TrialRecordLine) {
  SweepOptions options;
  options.keep_trials = true;
  const auto result = sweep_matching({validate_params(1, 1, 100, 4)}, 3, Mode::AB,
                                     SwitchChain{}, Seed{2}, options);
  ASSERT_EQ(result.trial_records.size(), 3u);
  const std::string line = trial_record_json(result.rows[0], result.trial_records[1]);
  EXPECT_NE(line.find("\"trial\":1"), std::string::npos) << line;
  EXPECT_NE(line.find("\"q_plus\""), std::string::npos);
  EXPECT_EQ(line.find('\n'), std::string::npos);
}
