#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bireg/analytics.hpp"
#include "bireg/cli.hpp"
#include "bireg/error.hpp"
#include "bireg/experiments.hpp"
#include "bireg/io.hpp"
#include "bireg/matching.hpp"
#include "bireg/plunnecke.hpp"
#include "bireg/sampler.hpp"

namespace py = pybind11;
using namespace bireg;

namespace {

GraphParams make_params(const std::string& k, std::int64_t n, std::int64_t d) {
  const auto [num, den] = parse_ratio(k);
  return validate_params(num, den, n, d);
}

SamplerMethod make_method(const std::string& name, std::optional<std::uint64_t> steps) {
  return parse_sampler_method(name, steps);
}

LayeredGraph make_layered(const std::vector<std::vector<VertexList>>& layers,
                          std::size_t base) {
  std::vector<BipartiteAdjacency> adj;
  std::size_t left = base;
  for (const auto& out : layers) {
    if (out.size() != left) {
      throw Error(ErrorCode::InvalidArgument, "layer sizes do not chain");
    }
    std::size_t right = 0;
    for (const auto& list : out) {
      for (Vertex v : list) right = std::max<std::size_t>(right, v + 1);
    }
    adj.emplace_back(left, right, out);
    left = right;
  }
  return LayeredGraph(std::move(adj));
}

py::dict row_dict(const SweepRow& r) {
  py::dict d;
  d["mode"] = mode_name(r.mode);
  d["k_num"] = r.k_num;
  d["k_den"] = r.k_den;
  d["n"] = r.n;
  d["d"] = r.d;
  d["c"] = r.c;
  d["trials"] = r.trials;
  d["successes"] = r.successes;
  d["p_hat"] = r.p_hat;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  d["mean_a_minus"] = r.mean_a_minus;
  d["mean_a_plus"] = r.mean_a_plus;
  d["mean_q"] = r.mean_q;
  d["analytic"] = r.analytic;
  return d;
}

py::list rows(const SweepResult& result) {
  py::list out;
  for (const auto& r : result.rows) out.append(row_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_bireg, m) {
  m.doc() = "Random biregular bipartite graphs";

  static PyObject* error_type =
      py::exception<Error>(m, "BiregError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  m.def(
      "sample",
      [](const std::string& k, std::int64_t n, std::int64_t d, const std::string& method,
         std::uint64_t seed, std::optional<std::uint64_t> steps) {
        return sample(make_params(k, n, d), make_method(method, steps), Seed{seed}).out_lists();
      },
      py::arg("k"), py::arg("n"), py::arg("d"), py::arg("method") = "pairing",
      py::arg("seed") = 0, py::arg("steps") = py::none(),
      "Out-neighbor lists of one sampled member of G(k, n, d).");

  m.def(
      "enumerate_family",
      [](const std::string& k, std::int64_t n, std::int64_t d) {
        std::vector<std::vector<VertexList>> members;
        for (const auto& g : enumerate_family(make_params(k, n, d))) {
          members.push_back(g.out_lists());
        }
        return members;
      },
      py::arg("k"), py::arg("n"), py::arg("d"));

  m.def(
      "is_biregular",
      [](const std::string& k, std::int64_t n, std::int64_t d, std::vector<VertexList> out) {
        const auto params = make_params(k, n, d);
        return is_biregular(BipartiteAdjacency(static_cast<std::size_t>(params.n()),
                                               static_cast<std::size_t>(params.kn()),
                                               std::move(out)),
                            params);
      },
      py::arg("k"), py::arg("n"), py::arg("d"), py::arg("out"));

  m.def(
      "read_brg1",
      [](const std::string& text) {
        std::istringstream in(text);
        return read_brg1(in).out_lists();
      },
      py::arg("text"));

  m.def(
      "has_perfect_matching",
      [](std::size_t left, std::size_t right, std::vector<VertexList> out) {
        return has_perfect_matching(BipartiteAdjacency(left, right, std::move(out)));
      },
      py::arg("left"), py::arg("right"), py::arg("out"));

  m.def(
      "find_problematic_pair",
      [](std::size_t size, std::vector<VertexList> out) -> std::optional<py::tuple> {
        const auto pair = find_problematic_pair(BipartiteAdjacency(size, size, std::move(out)));
        if (!pair) return std::nullopt;
        return py::make_tuple(pair->s, pair->t);
      },
      py::arg("size"), py::arg("out"));

  m.def(
      "threshold_c",
      [](const std::string& k, std::int64_t n, std::int64_t d) {
        return threshold_c(make_params(k, n, d)).c;
      },
      py::arg("k"), py::arg("n"), py::arg("d"));

  m.def(
      "no_edge_exact",
      [](std::int64_t s, const std::string& k, std::int64_t n, std::int64_t d,
         const std::string& side, bool conditioned) {
        const auto r = no_edge_exact(s, make_params(k, n, d), side == "out" ? Side::Out : Side::In,
                                     conditioned);
        return py::make_tuple(r.exact ? py::cast(to_string(*r.exact)) : py::none(), r.value);
      },
      py::arg("s"), py::arg("k"), py::arg("n"), py::arg("d"), py::arg("side") = "in",
      py::arg("conditioned") = false, "(exact 'p/q' or None, float)");

  m.def(
      "a_plus_bounds",
      [](const std::string& k, std::int64_t n, std::int64_t d) {
        const auto b = a_plus_bounds(make_params(k, n, d));
        return py::make_tuple(b.lower.value_or(0.0), b.upper);
      },
      py::arg("k"), py::arg("n"), py::arg("d"));

  m.def("er_matching_prob", &er_matching_prob, py::arg("c"));

  m.def(
      "commutative_d_bounds",
      [](const std::string& k, std::int64_t mm, std::int64_t h) {
        const auto [num, den] = parse_ratio(k);
        const auto b = commutative_d_bounds(Rational(num, den), mm, h);
        return py::make_tuple(b.d_low, b.d_high);
      },
      py::arg("k"), py::arg("m"), py::arg("h"));

  m.def(
      "wilson_interval",
      [](std::int64_t successes, std::int64_t trials, double z) {
        const Interval ci = wilson_interval(successes, trials, z);
        return py::make_tuple(ci.low, ci.high);
      },
      py::arg("successes"), py::arg("trials"), py::arg("z") = 1.959963984540054);

  m.def(
      "sweep_matching",
      [](const std::string& k, std::int64_t n, const std::vector<std::int64_t>& d_list,
         std::size_t trials, const std::string& mode, const std::string& method,
         std::uint64_t seed, std::optional<std::uint64_t> steps) {
        std::vector<GraphParams> points;
        for (auto d : d_list) points.push_back(make_params(k, n, d));
        const Mode parsed = parse_mode(mode);
        const SamplerMethod sampler = make_method(method, steps);
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = sweep_matching(points, trials, parsed, sampler, Seed{seed});
        }
        return rows(result);
      },
      py::arg("k"), py::arg("n"), py::arg("d"), py::arg("trials"), py::arg("mode") = "AB",
      py::arg("method") = "chain", py::arg("seed") = 0, py::arg("steps") = py::none());

  m.def(
      "er_baseline_sweep",
      [](std::int64_t n, const std::vector<double>& c_list, std::size_t trials,
         std::uint64_t seed) {
        return rows(er_baseline_sweep(n, c_list, trials, Seed{seed}));
      },
      py::arg("n"), py::arg("c"), py::arg("trials"), py::arg("seed") = 0);

  m.def(
      "random_layered",
      [](const std::string& k, std::int64_t mm, std::int64_t d, unsigned h, std::uint64_t seed,
         const std::string& method) {
        const auto [num, den] = parse_ratio(k);
        const auto g = build_random_layered(Rational(num, den), mm, d, h, Seed{seed},
                                            make_method(method, std::nullopt));
        std::vector<std::vector<VertexList>> layers;
        for (unsigned i = 1; i <= g.h(); ++i) layers.push_back(g.layer(i).out_lists());
        return layers;
      },
      py::arg("k"), py::arg("m"), py::arg("d"), py::arg("h"), py::arg("seed") = 0,
      py::arg("method") = "chain", "Out-lists of each layer, bottom first.");

  m.def(
      "is_commutative",
      [](const std::vector<std::vector<VertexList>>& layers) {
        return check_commutative(make_layered(layers, layers.at(0).size())).commutative;
      },
      py::arg("layers"));

  m.def(
      "magnification",
      [](const std::vector<std::vector<VertexList>>& layers, unsigned i,
         const std::string& algorithm) {
        const auto g = make_layered(layers, layers.at(0).size());
        const auto r = algorithm == "brute" ? magnification_bruteforce(g, i)
                                            : magnification_flow(g, i);
        return py::make_tuple(to_string(r.value), r.witness);
      },
      py::arg("layers"), py::arg("i"), py::arg("algorithm") = "flow",
      "('p/q', witness) for the minimum ratio |Gamma^(i)(Z)|/|Z|.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "(exit code, stdout, stderr)");
}
