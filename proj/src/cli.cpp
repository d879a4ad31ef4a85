#include "bireg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bireg/analytics.hpp"
#include "bireg/error.hpp"
#include "bireg/experiments.hpp"
#include "bireg/io.hpp"
#include "bireg/plunnecke.hpp"
#include "bireg/results.hpp"
#include "bireg/sampler.hpp"

namespace bireg {

using nlohmann::json;

namespace {

struct Options {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string k = "1/1";
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::vector<std::int64_t> d;
  unsigned h = 2;
  std::string method = "auto";
  std::optional<std::uint64_t> steps;
  std::size_t trials = 0;
  std::string mode = "AB";
  std::string policy = "fixed";
  std::string format = "csv";
  std::string emit_trials;
  std::vector<double> c;
  std::optional<std::size_t> sample_edges;
  std::string graph;
  std::vector<unsigned> levels;
  std::string algorithm = "flow";
  std::string name;
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> t;
  std::string side = "in";
  bool conditioned = false;
  std::optional<std::int64_t> b_size;
  std::int64_t s_cond = 1;
  std::int64_t s_uncond = 1;
  bool exhaustive = false;
};

// Validation failures; reported with exit code 2.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
auto checked(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw FlagError(flag + ": " + e.what());
  }
}

std::pair<std::int64_t, std::int64_t> ratio_flag(const std::string& text) {
  return checked("--k", [&] { return parse_ratio(text); });
}

GraphParams params_flags(const std::string& k, std::int64_t n, std::int64_t d) {
  const auto [num, den] = ratio_flag(k);
  return checked("--k/--n/--d", [&] { return validate_params(num, den, n, d); });
}

std::int64_t single_d(const Options& o) {
  if (o.d.size() != 1) throw FlagError("--d: expected exactly one value");
  return o.d.front();
}

SamplerMethod method_flag(const Options& o, const GraphParams& params) {
  if (o.method == "auto") {
    if (pairing_feasible(params)) return PairingRejection{};
    return checked("--steps", [&] { return switch_chain_method(o.steps); });
  }
  return checked("--method", [&] { return parse_sampler_method(o.method, o.steps); });
}

SamplerMethod method_flag_for_layers(const Options& o) {
  if (o.method == "auto") return checked("--steps", [&] { return switch_chain_method(o.steps); });
  return checked("--method", [&] { return parse_sampler_method(o.method, o.steps); });
}

Seed seed_flag(const Options& o, std::ostream& out) {
  if (o.seed) return Seed{*o.seed};
  std::random_device device;
  const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  out << "seed: " << seed << " (chosen at random; pass --seed to reproduce)\n";
  return Seed{seed};
}

Rational k_rational(const std::string& text) {
  const auto [num, den] = ratio_flag(text);
  return Rational(num, den);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_text(o.out, text);
  }
}

Metadata sweep_metadata(const std::string& command, std::uint64_t seed, std::size_t trials) {
  return {{"command", command}, {"seed", std::to_string(seed)}, {"trials", std::to_string(trials)}};
}

void emit_sweep(const Options& o, std::ostream& out, const SweepResult& result,
                const Metadata& meta) {
  const ResultFormat format = parse_result_format(o.format);
  if (!o.out.empty()) {
    write_results(result, o.out, format, meta);
  } else if (format == ResultFormat::Csv) {
    write_sweep_csv(result, out, meta);
  } else {
    write_sweep_json(result, out, meta);
  }
  if (!o.emit_trials.empty()) {
    std::ostringstream lines;
    for (const auto& record : result.trial_records) {
      lines << trial_record_json(result.rows[record.row], record) << '\n';
    }
    write_text(o.emit_trials, lines.str());
  }
}

json rational_json(const std::optional<Rational>& r) {
  return r ? json(to_string(*r)) : json(nullptr);
}

json report_json(const CommutativityReport& r) {
  auto edges = [](const std::vector<LayerEdge>& list) {
    json a = json::array();
    for (const auto& e : list) a.push_back({e.layer, e.u, e.v});
    return a;
  };
  return json{{"commutative", r.commutative},
              {"edges_checked", r.edges_checked},
              {"sampled", r.sampled},
              {"upward_violations", edges(r.upward_violations)},
              {"downward_violations", edges(r.downward_violations)}};
}

Side side_flag(const std::string& text) {
  if (text == "in") return Side::In;
  if (text == "out") return Side::Out;
  throw FlagError("--side: expected in or out, got '" + text + "'");
}

using Job = std::function<void()>;

Job prepare_sample(const Options& o, std::ostream& out) {
  const GraphParams params = params_flags(o.k, o.n, single_d(o));
  const SamplerMethod method = method_flag(o, params);
  const Seed seed = std::holds_alternative<Circulant>(method) ? Seed{o.seed.value_or(0)}
                                                              : seed_flag(o, out);
  return [=, &o, &out] {
    const BipartiteDigraph g = sample(params, method, seed);
    std::ostringstream text;
    write_brg1(text, g);
    if (o.out.empty()) {
      out << text.str();
    } else {
      write_text(o.out, text.str());
      out << "sampled " << params.describe() << " with " << method_name(method) << " -> "
          << o.out << '\n';
    }
  };
}

Job prepare_enumerate(const Options& o, std::ostream& out) {
  const GraphParams params = params_flags(o.k, o.n, single_d(o));
  return [=, &o, &out] {
    const auto family = enumerate_family(params);
    out << "count: " << family.size() << '\n';
    if (!o.out.empty()) {
      json members = json::array();
      for (const auto& g : family) members.push_back(g.out_lists());
      write_text(o.out, json{{"params", params.describe()},
                             {"count", family.size()},
                             {"members", members}}
                                .dump(2) +
                            "\n");
    }
  };
}

Job prepare_matching_sweep(const Options& o, std::ostream& out) {
  if (o.d.empty()) throw FlagError("--d: at least one value required");
  if (o.trials == 0) throw FlagError("--trials: must be at least 1");
  std::vector<GraphParams> points;
  for (auto d : o.d) points.push_back(params_flags(o.k, o.n, d));
  const Mode mode = checked("--mode", [&] { return parse_mode(o.mode); });
  if (mode != Mode::AB && mode != Mode::AGamma) throw FlagError("--mode: expected AB or AGamma");
  if (mode == Mode::AGamma) {
    for (const auto& p : points) {
      if (p.d() < 2) throw FlagError("--d: mode AGamma needs d >= 2");
    }
  }
  // "auto" uses exact rejection only when every point allows it.
  const auto widest = std::max_element(
      points.begin(), points.end(), [](const GraphParams& x, const GraphParams& y) {
        return (x.d() - 1) * (x.kd() - 1) < (y.d() - 1) * (y.kd() - 1);
      });
  const SamplerMethod method = method_flag(o, *widest);
  for (const auto& p : points) {
    if (std::holds_alternative<PairingRejection>(method) && !pairing_feasible(p)) {
      throw FlagError("--method: pairing rejection infeasible for " + p.describe());
    }
  }
  SweepOptions options;
  if (o.policy == "random") {
    options.subset_policy = SubsetPolicy::UniformRandom;
  } else if (o.policy != "fixed") {
    throw FlagError("--policy: expected fixed or random");
  }
  options.keep_trials = !o.emit_trials.empty();
  checked("--format", [&] { return parse_result_format(o.format); });
  const Seed seed = seed_flag(o, out);
  return [=, &o, &out] {
    const SweepResult result = sweep_matching(points, o.trials, mode, method, seed, options);
    Metadata meta = sweep_metadata("matching-sweep", seed.master, o.trials);
    meta["sampler"] = method_name(method);
    emit_sweep(o, out, result, meta);
  };
}

Job prepare_er(const Options& o, std::ostream& out) {
  if (o.c.empty()) throw FlagError("--c: at least one value required");
  if (o.trials == 0) throw FlagError("--trials: must be at least 1");
  for (double c : o.c) checked("--c", [&] { return er_edge_probability(o.n, c); });
  checked("--format", [&] { return parse_result_format(o.format); });
  SweepOptions options;
  options.keep_trials = !o.emit_trials.empty();
  const Seed seed = seed_flag(o, out);
  return [=, &o, &out] {
    const SweepResult result = er_baseline_sweep(o.n, o.c, o.trials, seed, options);
    emit_sweep(o, out, result, sweep_metadata("er-baseline", seed.master, o.trials));
  };
}


Job prepare_commutative(const Options& o, std::ostream& out) {
  if (!o.graph.empty()) {
    return [&o, &out] {
      const AnyGraph any = read_graph(o.graph);
      const auto* g = std::get_if<LayeredGraph>(&any);
      if (!g) throw Error(ErrorCode::InvalidArgument, "--graph: expected a LAY1 file");
      CommutativityOptions options;
      options.sample_edges = o.sample_edges;
      options.seed = Seed{o.seed.value_or(0)};
      const auto report = check_commutative(*g, options);
      out << (report.commutative ? "commutative" : "not commutative") << " ("
          << report.edges_checked << " edge checks" << (report.sampled ? ", sampled" : "")
          << ")\n";
      if (!o.out.empty()) write_text(o.out, report_json(report).dump(2) + "\n");
    };
  }
  if (o.d.empty()) throw FlagError("--d: at least one value required");
  if (o.trials == 0) throw FlagError("--trials: must be at least 1");
  if (o.sample_edges && *o.sample_edges == 0) throw FlagError("--sample-edges: must be positive");
  const Rational k = k_rational(o.k);
  for (auto d : o.d) {
    checked("--k/--m/--d/--h", [&] { validate_layered_params(k, o.m, d, o.h); });
  }
  const SamplerMethod method = method_flag_for_layers(o);
  checked("--format", [&] { return parse_result_format(o.format); });
  SweepOptions options;
  options.keep_trials = !o.emit_trials.empty();
  const Seed seed = seed_flag(o, out);
  return [=, &o, &out] {
    const SweepResult result =
        commutative_sweep(k, o.m, o.d, o.h, o.trials, method, seed, options, o.sample_edges);
    Metadata meta = sweep_metadata("commutative", seed.master, o.trials);
    meta["h"] = std::to_string(o.h);
    meta["edges"] = o.sample_edges ? "sampled " + std::to_string(*o.sample_edges) : "all";
    emit_sweep(o, out, result, meta);
  };
}

Job prepare_magnification(const Options& o, std::ostream& out) {
  if (o.algorithm != "flow" && o.algorithm != "brute") {
    throw FlagError("--algorithm: expected flow or brute");
  }
  std::function<LayeredGraph()> load;
  if (!o.graph.empty()) {
    load = [&o] {
      AnyGraph any = read_graph(o.graph);
      if (auto* g = std::get_if<LayeredGraph>(&any)) return std::move(*g);
      const auto& b = std::get<BipartiteDigraph>(any);
      return LayeredGraph({b.adjacency()});
    };
  } else {
    const Rational k = k_rational(o.k);
    const std::int64_t d = single_d(o);
    checked("--k/--m/--d/--h", [&] { validate_layered_params(k, o.m, d, o.h); });
    const SamplerMethod method = method_flag_for_layers(o);
    const Seed seed = seed_flag(o, out);
    load = [=, &o] { return build_random_layered(k, o.m, d, o.h, seed, method); };
  }
  return [=, &o, &out] {
    const LayeredGraph g = load();
    std::vector<unsigned> levels = o.levels;
    if (levels.empty()) {
      levels.resize(g.h());
      std::iota(levels.begin(), levels.end(), 1u);
    }
    json values = json::array();
    std::vector<Rational> ratios;
    for (unsigned i : levels) {
      const auto r = o.algorithm == "flow" ? magnification_flow(g, i) : magnification_bruteforce(g, i);
      out << "D_" << i << " = " << to_string(r.value) << " (" << to_double(r.value)
          << "), witness size " << r.witness.size() << '\n';
      values.push_back({{"i", i},
                        {"value", to_string(r.value)},
                        {"float", to_double(r.value)},
                        {"witness", r.witness}});
      ratios.push_back(r.value);
    }
    std::vector<unsigned> sorted = levels;
    std::sort(sorted.begin(), sorted.end());
    const bool consecutive =
        !sorted.empty() && sorted.front() == 1 && sorted.back() == sorted.size() &&
        std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    json doc{{"values", values}};
    if (consecutive && levels == sorted) {
      const bool monotone = plunnecke_monotone_check(ratios);
      out << "D_i^(1/i) non-increasing: " << (monotone ? "yes" : "no") << '\n';
      doc["monotone"] = monotone;
    }
    if (!o.out.empty()) write_text(o.out, doc.dump(2) + "\n");
  };
}

Job prepare_analytic(const Options& o, std::ostream& out) {
  const std::string& name = o.name;
  auto need = [](const std::optional<std::int64_t>& v, const char* flag) {
    if (!v) throw FlagError(std::string(flag) + ": required by this --name");
    return *v;
  };
  auto params = [&] { return params_flags(o.k, o.n, single_d(o)); };
  json inputs{{"k", o.k}};
  json exact = nullptr;
  json value = nullptr;
  json extra = json::object();

  if (name == "threshold_c") {
    const auto p = params();
    inputs["n"] = p.n();
    inputs["d"] = p.d();
    value = threshold_c(p).c;
  } else if (name == "no_edge") {
    const auto p = params();
    const auto s = need(o.s, "--s");
    const Side side = side_flag(o.side);
    inputs.update({{"n", p.n()}, {"d", p.d()}, {"s", s}, {"side", o.side},
                   {"conditioned", o.conditioned}});
    const auto r = checked("--s", [&] { return no_edge_exact(s, p, side, o.conditioned); });
    exact = rational_json(r.exact);
    value = r.value;
  } else if (name == "no_edge_upper") {
    const auto p = params();
    const auto s = need(o.s, "--s");
    const auto t = need(o.t, "--t");
    const Side side = side_flag(o.side);
    inputs.update({{"n", p.n()}, {"d", p.d()}, {"s", s}, {"t", t}, {"side", o.side},
                   {"conditioned", o.conditioned}});
    const auto r =
        checked("--s/--t", [&] { return no_edge_upper(s, t, p, side, o.conditioned); });
    exact = rational_json(r.bound.upper_exact);
    value = r.bound.upper;
    extra = {{"exp_form", r.exp_form},
             {"rigorous_form", r.rigorous_form},
             {"exp_form_dominates", r.exp_form_dominates}};
  } else if (name == "isolated") {
    const auto p = params();
    inputs.update({{"n", p.n()}, {"d", p.d()}});
    const auto r = isolated_prob_asymptotic(p);
    value = r.value;
    extra = {{"in_regime", r.in_regime}};
  } else if (name == "er_matching") {
    if (o.c.size() != 1) throw FlagError("--c: expected exactly one value");
    inputs = {{"c", o.c.front()}};
    value = er_matching_prob(o.c.front());
  } else if (name == "commutative_d_bounds") {
    const Rational k = k_rational(o.k);
    inputs.update({{"m", o.m}, {"h", o.h}});
    const auto r = checked("--k/--m/--h", [&] {
      return commutative_d_bounds(k, o.m, static_cast<std::int64_t>(o.h));
    });
    value = {{"d_low", r.d_low}, {"d_high", r.d_high}};
    extra = {{"d_high_exceeds_m", r.d_high_exceeds_m}};
  } else if (name == "a_plus_bounds") {
    const auto p = params();
    inputs.update({{"n", p.n()}, {"d", p.d()}});
    const auto r = checked("--k/--n/--d", [&] { return a_plus_bounds(p); });
    exact = {{"lower", rational_json(r.lower_exact)}, {"upper", rational_json(r.upper_exact)}};
    value = {{"lower", r.lower.value_or(0.0)}, {"upper", r.upper}};
  } else if (name == "nonmatching") {
    const auto p = params();
    inputs.update({{"n", p.n()}, {"d", p.d()}});
    value = nonmatching_diagnostic(p);
  } else if (name == "expected_a_minus" || name == "expected_q") {
    const auto p = params();
    inputs.update({{"n", p.n()}, {"d", p.d()}});
    const auto r = name == "expected_q" ? expected_q(p) : expected_a_minus(p);
    exact = rational_json(r.exact);
    value = r.value;
  } else if (name == "pair_expectations") {
    const auto p = params();
    inputs.update({{"n", p.n()}, {"d", p.d()}});
    if (o.b_size) inputs["b"] = *o.b_size;
    const auto r = checked("--b", [&] { return pair_expectations(p, o.b_size); });
    exact = {{"common_neighbors", to_string(r.common_neighbors)},
             {"hits_in_b", rational_json(r.hits_in_b)}};
    json f{{"common_neighbors", to_double(r.common_neighbors)}};
    f["hits_in_b"] = r.hits_in_b ? json(to_double(*r.hits_in_b)) : json(nullptr);
    value = f;
  } else {
    throw FlagError("--name: unknown analytic '" + name + "'");
  }

  json doc{{"name", name}, {"inputs", inputs}, {"exact", exact}, {"float", value}};
  for (auto& [key, v] : extra.items()) doc[key] = v;
  return [doc, &o, &out] { emit(o, out, doc.dump(2) + "\n"); };
}

Job prepare_stats(const Options& o, std::ostream& out) {
  const GraphParams params = params_flags(o.k, o.n, single_d(o));
  if (o.exhaustive) {
    return [=, &o, &out] {
      const FamilyAverages avg = exhaustive_local_statistics(params);
      out << "members: " << avg.members << '\n'
          << "mean common neighbors: " << to_string(avg.common_neighbors) << '\n'
          << "disjoint pair fraction: " << to_string(avg.disjoint_pair) << '\n';
      if (!o.out.empty()) {
        write_text(o.out, json{{"members", avg.members},
                               {"common_neighbors", to_string(avg.common_neighbors)},
                               {"disjoint_pair", to_string(avg.disjoint_pair)}}
                                  .dump(2) +
                              "\n");
      }
    };
  }
  if (o.trials == 0) throw FlagError("--trials: must be at least 1");
  LocalStatsOptions options;
  options.sampler = method_flag(o, params);
  options.conditioned_s = o.s_cond;
  options.unconditioned_s = o.s_uncond;
  if (std::holds_alternative<PairingRejection>(options.sampler) && !pairing_feasible(params)) {
    throw FlagError("--method: pairing rejection infeasible for " + params.describe());
  }
  const Seed seed = seed_flag(o, out);
  return [=, &o, &out] {
    const auto rows = estimate_local_statistics(params, o.trials, seed, options);
    json table = json::array();
    for (const auto& r : rows) {
      out << r.name << ": " << format_g6(r.estimate) << " [" << format_g6(r.ci_low) << ", "
          << format_g6(r.ci_high) << "] vs ";
      if (r.oracle_low == r.oracle_high) {
        out << format_g6(r.oracle_low);
      } else {
        out << "[" << format_g6(r.oracle_low) << ", " << format_g6(r.oracle_high) << "]";
      }
      out << (r.pass ? "  pass" : "  FAIL") << '\n';
      table.push_back({{"name", r.name},
                       {"samples", r.samples},
                       {"estimate", r.estimate},
                       {"ci_low", r.ci_low},
                       {"ci_high", r.ci_high},
                       {"oracle_low", r.oracle_low},
                       {"oracle_high", r.oracle_high},
                       {"pass", r.pass}});
    }
    if (!o.out.empty()) {
      write_text(o.out, json{{"params", params.describe()},
                             {"seed", seed.master},
                             {"trials", o.trials},
                             {"rows", table}}
                                .dump(2) +
                            "\n");
    }
  };
}

void common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Master seed (random and printed when omitted)");
  cmd->add_option("--out", o.out, "Machine-readable output path");
}

void graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.k, "Ratio |Z|/|Y| as p/q")->capture_default_str();
  cmd->add_option("--n", o.n, "|Y|");
}

void method_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "auto, pairing, chain or circulant")
      ->capture_default_str();
  cmd->add_option("--steps", o.steps, "Accepted switchings for the chain (default 20|E|)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Random biregular bipartite graphs: sampling, matchings, commutativity"};
  app.name("bireg");
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  auto* sample_cmd = app.add_subcommand("sample", "Sample one member of G(k,n,d) as BRG1");
  graph_flags(sample_cmd, o);
  sample_cmd->add_option("--d", o.d, "In-degree d")->required()->expected(1);
  method_flags(sample_cmd, o);
  common_flags(sample_cmd, o);

  auto* enum_cmd = app.add_subcommand("enumerate", "Count every member of a tiny G(k,n,d)");
  graph_flags(enum_cmd, o);
  enum_cmd->add_option("--d", o.d, "In-degree d")->required()->expected(1);
  common_flags(enum_cmd, o);

  auto* sweep_cmd = app.add_subcommand("matching-sweep", "Perfect-matching frequency per d");
  graph_flags(sweep_cmd, o);
  sweep_cmd->add_option("--d", o.d, "Comma-separated in-degrees")->required()->delimiter(',');
  sweep_cmd->add_option("--trials", o.trials, "Trials per d")->required();
  sweep_cmd->add_option("--mode", o.mode, "AB or AGamma")->capture_default_str();
  sweep_cmd->add_option("--policy", o.policy, "Subset policy: fixed or random")
      ->capture_default_str();
  sweep_cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  sweep_cmd->add_option("--emit-trials", o.emit_trials, "Write per-trial JSON lines here");
  method_flags(sweep_cmd, o);
  common_flags(sweep_cmd, o);

  auto* er_cmd = app.add_subcommand("er-baseline", "Independent-edge bipartite baseline");
  er_cmd->add_option("--n", o.n, "Side size")->required();
  er_cmd->add_option("--c", o.c, "Comma-separated offsets c, p = (ln n + c)/n")
      ->required()
      ->delimiter(',');
  er_cmd->add_option("--trials", o.trials, "Trials per c")->required();
  er_cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  er_cmd->add_option("--emit-trials", o.emit_trials, "Write per-trial JSON lines here");
  common_flags(er_cmd, o);

  auto* comm_cmd = app.add_subcommand("commutative", "Commutativity of layered graphs");
  comm_cmd->add_option("--k", o.k, "Layer ratio as p/q")->capture_default_str();
  comm_cmd->add_option("--m", o.m, "|X_0|");
  comm_cmd->add_option("--d", o.d, "Comma-separated in-degrees")->delimiter(',');
  comm_cmd->add_option("--h", o.h, "Number of layers")->capture_default_str();
  comm_cmd->add_option("--trials", o.trials, "Trials per d");
  comm_cmd->add_option("--sample-edges", o.sample_edges,
                       "Check this many random edges per condition instead of all");
  comm_cmd->add_option("--graph", o.graph, "Certify a LAY1 file instead");
  comm_cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  comm_cmd->add_option("--emit-trials", o.emit_trials, "Write per-trial JSON lines here");
  method_flags(comm_cmd, o);
  common_flags(comm_cmd, o);

  auto* mag_cmd = app.add_subcommand("magnification", "Magnification ratios D_i");
  mag_cmd->add_option("--graph", o.graph, "BRG1 or LAY1 file");
  mag_cmd->add_option("--k", o.k, "Layer ratio as p/q")->capture_default_str();
  mag_cmd->add_option("--m", o.m, "|X_0|");
  mag_cmd->add_option("--d", o.d, "In-degree d")->expected(1);
  mag_cmd->add_option("--h", o.h, "Number of layers")->capture_default_str();
  mag_cmd->add_option("--i", o.levels, "Comma-separated levels (default 1..h)")->delimiter(',');
  mag_cmd->add_option("--algorithm", o.algorithm, "flow or brute")->capture_default_str();
  method_flags(mag_cmd, o);
  common_flags(mag_cmd, o);

  auto* an_cmd = app.add_subcommand("analytic", "Evaluate a closed-form oracle as JSON");
  an_cmd->add_option("--name", o.name,
                     "threshold_c, no_edge, no_edge_upper, isolated, er_matching, "
                     "commutative_d_bounds, a_plus_bounds, nonmatching, expected_a_minus, "
                     "expected_q, pair_expectations")
      ->required();
  graph_flags(an_cmd, o);
  an_cmd->add_option("--d", o.d, "In-degree d")->expected(1);
  an_cmd->add_option("--m", o.m, "|X_0|");
  an_cmd->add_option("--h", o.h, "Number of layers")->capture_default_str();
  an_cmd->add_option("--s", o.s, "Set size s");
  an_cmd->add_option("--t", o.t, "Set size t");
  an_cmd->add_option("--b", o.b_size, "|B|");
  an_cmd->add_option("--c", o.c, "Offset c")->expected(1);
  an_cmd->add_option("--side", o.side, "in or out")->capture_default_str();
  an_cmd->add_flag("--conditioned", o.conditioned, "Condition on the fixed edge");
  common_flags(an_cmd, o);

  auto* stats_cmd = app.add_subcommand("stats", "Local statistics against their closed forms");
  graph_flags(stats_cmd, o);
  stats_cmd->add_option("--d", o.d, "In-degree d")->required()->expected(1);
  stats_cmd->add_option("--trials", o.trials, "Samples");
  stats_cmd->add_option("--s-cond", o.s_cond, "Set size for the conditioned no-edge row")
      ->capture_default_str();
  stats_cmd->add_option("--s-uncond", o.s_uncond, "Set size for the unconditioned row")
      ->capture_default_str();
  stats_cmd->add_flag("--exhaustive", o.exhaustive, "Exact averages over the whole family");
  method_flags(stats_cmd, o);
  common_flags(stats_cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Job job;
  try {
    if (sample_cmd->parsed()) job = prepare_sample(o, out);
    if (enum_cmd->parsed()) job = prepare_enumerate(o, out);
    if (sweep_cmd->parsed()) job = prepare_matching_sweep(o, out);
    if (er_cmd->parsed()) job = prepare_er(o, out);
    if (comm_cmd->parsed()) job = prepare_commutative(o, out);
    if (mag_cmd->parsed()) job = prepare_magnification(o, out);
    if (an_cmd->parsed()) job = prepare_analytic(o, out);
    if (stats_cmd->parsed()) job = prepare_stats(o, out);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    job();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace bireg
