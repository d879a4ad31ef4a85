#include "bireg/results.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bireg/error.hpp"

namespace bireg {

using nlohmann::json;

ResultFormat parse_result_format(const std::string& text) {
  if (text == "csv") return ResultFormat::Csv;
  if (text == "json") return ResultFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "format must be csv or json, got '" + text + "'");
}

std::string format_g6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

template <typename T>
std::string field(const std::optional<T>& value) {
  if (!value) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_g6(*value);
  } else {
    return std::to_string(*value);
  }
}

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json row_json(const SweepRow& row) {
  return json{{"mode", mode_name(row.mode)},
              {"k_num", row.k_num},
              {"k_den", row.k_den},
              {"n", row.n},
              {"d", optional_json(row.d)},
              {"c", row.c},
              {"trials", row.trials},
              {"successes", row.successes},
              {"p_hat", row.p_hat},
              {"ci_low", row.ci_low},
              {"ci_high", row.ci_high},
              {"mean_a_minus", optional_json(row.mean_a_minus)},
              {"mean_a_plus", optional_json(row.mean_a_plus)},
              {"mean_q", optional_json(row.mean_q)},
              {"edge_probability", optional_json(row.edge_probability)},
              {"analytic", optional_json(row.analytic)}};
}

json stats_json(const ObservableStats& s) {
  json j = json::object();
  if (s.a_minus) j["a_minus"] = *s.a_minus;
  if (s.a_plus) j["a_plus"] = *s.a_plus;
  if (s.q_plus) j["q_plus"] = *s.q_plus;
  if (s.q_minus) j["q_minus"] = *s.q_minus;
  return j;
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out, const Metadata& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
  out << kSweepCsvHeader << '\n';
  for (const auto& row : result.rows) {
    out << mode_name(row.mode) << ',' << row.k_num << ',' << row.k_den << ',' << row.n << ','
        << field(row.d) << ',' << format_g6(row.c) << ',' << row.trials << ',' << row.successes
        << ',' << format_g6(row.p_hat) << ',' << format_g6(row.ci_low) << ','
        << format_g6(row.ci_high) << ',' << field(row.mean_a_minus) << ','
        << field(row.mean_a_plus) << ',' << field(row.mean_q) << '\n';
  }
}

void write_sweep_json(const SweepResult& result, std::ostream& out, const Metadata& meta) {
  json rows = json::array();
  for (const auto& row : result.rows) rows.push_back(row_json(row));
  json doc{{"metadata", meta}, {"rows", rows}};
  out << doc.dump(2) << '\n';
}

void write_results(const SweepResult& result, const std::string& path, ResultFormat format,
                   const Metadata& meta) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  if (format == ResultFormat::Csv) {
    write_sweep_csv(result, file, meta);
  } else {
    write_sweep_json(result, file, meta);
  }
  file.flush();
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

SweepResult read_sweep_json(const std::string& text) {
  SweepResult result;
  try {
    const json doc = json::parse(text);
    for (const auto& j : doc.at("rows")) {
      SweepRow row;
      row.mode = parse_mode(j.at("mode").get<std::string>());
      row.k_num = j.at("k_num").get<std::int64_t>();
      row.k_den = j.at("k_den").get<std::int64_t>();
      row.n = j.at("n").get<std::int64_t>();
      row.d = optional_from<std::int64_t>(j, "d");
      row.c = j.at("c").get<double>();
      row.trials = j.at("trials").get<std::size_t>();
      row.successes = j.at("successes").get<std::size_t>();
      row.p_hat = j.at("p_hat").get<double>();
      row.ci_low = j.at("ci_low").get<double>();
      row.ci_high = j.at("ci_high").get<double>();
      row.mean_a_minus = optional_from<double>(j, "mean_a_minus");
      row.mean_a_plus = optional_from<double>(j, "mean_a_plus");
      row.mean_q = optional_from<double>(j, "mean_q");
      row.edge_probability = optional_from<double>(j, "edge_probability");
      row.analytic = optional_from<double>(j, "analytic");
      result.rows.push_back(row);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed sweep JSON: ") + e.what());
  }
  return result;
}

std::string trial_record_json(const SweepRow& row, const TrialRecord& record) {
  json j{{"mode", mode_name(row.mode)},
         {"k_num", row.k_num},
         {"k_den", row.k_den},
         {"n", row.n},
         {"d", optional_json(row.d)},
         {"row", record.row},
         {"trial", record.trial},
         {"seed", record.seed},
         {"success", record.success},
         {"stats", stats_json(record.stats)}};
  return j.dump();
}

}  // namespace bireg
