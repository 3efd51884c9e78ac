#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stacklab/experiment.hpp"

namespace py = pybind11;
using namespace stacklab;

namespace {

py::int_ to_py_int(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigInt to_bigint(const py::int_& v) {
  return BigInt(static_cast<std::string>(py::str(static_cast<py::object>(v))));
}

ConstructionSpec make_ornstein(const std::vector<int>& p,
                               const std::vector<long long>& t,
                               const std::vector<long long>& x_last) {
  ConstructionSpec spec;
  spec.mode = SpacerMode::ornstein;
  spec.stages = static_cast<int>(p.size());
  spec.cuts = p;
  spec.spacer_range = t;
  spec.last_spacer = x_last;
  spec.validate();
  return spec;
}

ConstructionSpec make_deterministic(
    const std::vector<int>& p,
    const std::vector<std::vector<long long>>& spacers) {
  ConstructionSpec spec;
  spec.mode = SpacerMode::deterministic;
  spec.stages = static_cast<int>(p.size());
  spec.cuts = p;
  spec.spacers = spacers;
  spec.validate();
  return spec;
}

std::vector<SpacerStage> spec_spacers(const ConstructionSpec& spec,
                                      std::uint64_t seed, OmegaDraw* draw_out) {
  if (spec.mode == SpacerMode::deterministic) return deterministic_spacers(spec);
  OmegaDraw draw = sample_omega(spec, seed);
  if (draw_out) *draw_out = draw;
  return omega_spacers(spec, draw);
}

}  // namespace

PYBIND11_MODULE(_stacklab, m) {
  m.doc() = "Exact cutting-and-stacking constructions, eigenvalue candidate "
            "screens, and seeded Monte Carlo experiments";

  py::register_exception<parameter_error>(m, "ParameterError",
                                          PyExc_ValueError);
  py::register_exception<construction_error>(m, "ConstructionError",
                                             PyExc_RuntimeError);

  m.def("prng_next", [](std::uint64_t state) {
    std::uint64_t out = prng_next(state);
    return py::make_tuple(state, out);
  }, py::arg("state"), "SplitMix64 step; returns (new_state, output)");

  m.def("sample_uniform", [](std::uint64_t state, std::uint64_t bound) {
    std::uint64_t v = sample_uniform(state, bound);
    return py::make_tuple(state, v);
  }, py::arg("state"), py::arg("bound"),
     "unbiased draw on [0, bound); returns (new_state, value)");

  m.def("ornstein_heights",
        [](const std::vector<int>& p, const std::vector<long long>& t,
           const std::vector<long long>& x_last) {
          auto h = ornstein_heights(make_ornstein(p, t, x_last));
          py::list out;
          for (const BigInt& v : h) out.append(to_py_int(v));
          return out;
        },
        py::arg("p"), py::arg("t"), py::arg("x_last"),
        "heights h_0..h_K of an ornstein spec (draw-independent)");

  m.def("deterministic_heights",
        [](const std::vector<int>& p,
           const std::vector<std::vector<long long>>& spacers) {
          ConstructionSpec spec = make_deterministic(p, spacers);
          auto h = height_sequence(spec, deterministic_spacers(spec));
          py::list out;
          for (const BigInt& v : h) out.append(to_py_int(v));
          return out;
        },
        py::arg("p"), py::arg("spacers"));

  m.def("sample_omega",
        [](const std::vector<int>& p, const std::vector<long long>& t,
           const std::vector<long long>& x_last, std::uint64_t seed) {
          return sample_omega(make_ornstein(p, t, x_last), seed).draws;
        },
        py::arg("p"), py::arg("t"), py::arg("x_last"), py::arg("seed"),
        "the draw matrix x_{k,i}, row-major in (k, i)");

  m.def("chacon_pattern_stages",
        [](const std::vector<int>& p, const std::vector<long long>& t,
           const std::vector<long long>& x_last, std::uint64_t seed) {
          ConstructionSpec spec = make_ornstein(p, t, x_last);
          return chacon_pattern_scan(omega_spacers(spec, sample_omega(spec, seed)));
        },
        py::arg("p"), py::arg("t"), py::arg("x_last"), py::arg("seed"));

  m.def("circle_norm", [](const std::string& x) {
    return format_rational(circle_norm(parse_rational(x)));
  }, py::arg("x"), "distance from the rational x to the nearest integer");

  m.def("chain_survivors",
        [](const std::vector<py::int_>& n_seq, const std::string& eps,
           const py::int_& L) {
          std::vector<BigInt> n;
          for (const py::int_& v : n_seq) n.push_back(to_bigint(v));
          CandidateChain chain = chain_intersect(n, parse_rational(eps),
                                                 to_bigint(L));
          py::list out;
          for (const ChainArc& arc : chain.survivors()) {
            py::dict d;
            d["center"] = format_rational(mod_one(arc.center()));
            d["half_width"] = format_rational(arc.half_width());
            d["trivial"] = arc.contains_zero();
            out.append(d);
          }
          return out;
        },
        py::arg("n_seq"), py::arg("eps"), py::arg("L") = py::int_(0),
        "surviving arcs of the exact interval chain over n_seq");

  m.def("screen",
        [](const std::vector<int>& p, const std::vector<long long>& t,
           const std::vector<long long>& x_last, std::uint64_t seed,
           const std::string& eps, int first, int last,
           const std::string& sequence) {
          ConstructionSpec spec = make_ornstein(p, t, x_last);
          OmegaDraw draw;
          auto spacers = spec_spacers(spec, seed, &draw);
          SequenceKind kind = sequence == "frequency" ? SequenceKind::frequency
                                                      : SequenceKind::criterion;
          auto s = screen_sequence(kind, ornstein_heights(spec), spacers, &draw);
          ScreenResult res = eigenvalue_screen(s, parse_rational(eps), first, last);
          py::dict out;
          out["survivors"] = res.survivors.size();
          out["nontrivial"] = res.nontrivial;
          out["weak_mixing_evidence"] = res.nontrivial == 0;
          return out;
        },
        py::arg("p"), py::arg("t"), py::arg("x_last"), py::arg("seed"),
        py::arg("eps"), py::arg("first"), py::arg("last"),
        py::arg("sequence") = "criterion");

  m.def("correlation",
        [](const std::vector<int>& p,
           const std::vector<std::vector<long long>>& spacers, int level_stage,
           const std::vector<std::uint64_t>& levels, std::uint64_t shift, int K) {
          ConstructionSpec spec = make_deterministic(p, spacers);
          Tower tower = build_tower(spec, deterministic_spacers(spec));
          LevelSet A{level_stage, levels};
          CorrelationReport rep = correlation(A, A, shift, K, tower);
          py::dict out;
          out["value"] = format_rational(rep.value);
          out["error_bound"] = format_rational(rep.error_bound);
          out["normalized"] = format_rational(rep.normalized);
          return out;
        },
        py::arg("p"), py::arg("spacers"), py::arg("level_stage"),
        py::arg("levels"), py::arg("shift"), py::arg("K"));

  m.def("run_experiment",
        [](const std::string& config_json) {
          auto files = run_experiment(parse_config(config_json));
          std::vector<std::string> out;
          for (const auto& f : files) out.push_back(f.string());
          return out;
        },
        py::arg("config_json"),
        "run a configured experiment; returns the emitted file paths");
}
