#pragma once

#include <map>
#include <ostream>
#include <string>

#include "bireg/experiments.hpp"

namespace bireg {

enum class ResultFormat { Csv, Json };

// "csv" or "json"; anything else is InvalidArgument.
ResultFormat parse_result_format(const std::string& text);

inline constexpr const char* kSweepCsvHeader =
    "mode,k_num,k_den,n,d,c,trials,successes,p_hat,ci_low,ci_high,mean_a_minus,mean_a_plus,mean_q";

// Run metadata, written as leading "# key: value" lines (CSV) or a
// "metadata" object (JSON). Keys are emitted in sorted order.
using Metadata = std::map<std::string, std::string>;

// Absent optionals become empty CSV fields; reals use %.6g.
void write_sweep_csv(const SweepResult& result, std::ostream& out, const Metadata& meta = {});
void write_sweep_json(const SweepResult& result, std::ostream& out, const Metadata& meta = {});

// Throws IoError when the file cannot be written.
void write_results(const SweepResult& result, const std::string& path, ResultFormat format,
                   const Metadata& meta = {});

// Inverse of write_sweep_json (rows only). Throws ParseError.
SweepResult read_sweep_json(const std::string& text);

// One JSON object per line for --emit-trials.
std::string trial_record_json(const SweepRow& row, const TrialRecord& record);

std::string format_g6(double value);

}  // namespace bireg
