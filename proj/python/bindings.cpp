#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergodlab/diagnostics.hpp"
#include "ergodlab/joinings.hpp"
#include "ergodlab/json_io.hpp"
#include "ergodlab/lacunary.hpp"
#include "ergodlab/nilflow.hpp"

namespace py = pybind11;
using namespace ergodlab;

namespace {

Json parse(const std::string& text) { return Json::parse(text); }

py::int_ bits_to_int(Frac f) { return py::int_(py::str(f.bits_decimal())); }

Frac frac_from_int(const py::int_& v) {
  if (v.attr("__lt__")(0).cast<bool>() || v.attr("bit_length")().cast<int>() > 128) {
    throw DomainError("bits must lie in [0, 2^128)");
  }
  const auto hi = v.attr("__rshift__")(64).cast<std::uint64_t>();
  const auto lo = v.attr("__and__")(py::int_(~std::uint64_t{0})).cast<std::uint64_t>();
  return Frac::from_bits((static_cast<u128>(hi) << 64) | lo);
}

std::vector<double> reals(const TorusPoint& p) {
  std::vector<double> out;
  for (Frac f : p.coords()) out.push_back(f.to_real());
  return out;
}

TorusPoint start_or_zero(const FlowSpec& spec, const std::optional<std::string>& start) {
  return start ? point_from_json(parse(*start)) : TorusPoint(spec.dim());
}

}  // namespace

PYBIND11_MODULE(_ergodlab, m) {
  m.doc() = "Exact orbit kernels and ergodic diagnostics";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_MemoryError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Frac>(m, "Frac")
      .def(py::init<>())
      .def_static("from_decimal", &Frac::from_decimal)
      .def_static("from_rational",
                  [](const py::int_& p, const py::int_& q) {
                    return Frac::from_rational(BigInt(py::str(p).cast<std::string>()), BigInt(py::str(q).cast<std::string>()));
                  })
      .def_static("from_bits", &frac_from_int)
      .def_static("from_real", &Frac::from_real)
      .def_property_readonly("bits", &bits_to_int)
      .def("to_real", &Frac::to_real)
      .def("__add__", [](Frac a, Frac b) { return a + b; })
      .def("__sub__", [](Frac a, Frac b) { return a - b; })
      .def("__neg__", [](Frac a) { return -a; })
      .def("__eq__", [](Frac a, Frac b) { return a == b; })
      .def("__hash__", [](Frac a) { return py::hash(bits_to_int(a)); })
      .def("__repr__", [](Frac a) { return "Frac(bits=" + a.bits_decimal() + ")"; });

  m.def("int_mul", &int_mul, py::arg("a"), py::arg("n"), "exact n * a mod 1");
  m.def("dist", &dist, "circle distance as a double");

  m.def(
      "weyl_closed_form",
      [](Frac beta, int degree, std::int64_t n) {
        const auto p = weyl_closed_form(beta, degree, n);
        return std::vector<Frac>(p.coords().begin(), p.coords().end());
      },
      py::arg("beta"), py::arg("degree"), py::arg("n"));
  m.def(
      "anzai_closed_form",
      [](Frac alpha, std::int64_t n) {
        const auto p = anzai_closed_form(alpha, n);
        return std::vector<Frac>(p.coords().begin(), p.coords().end());
      },
      py::arg("alpha"), py::arg("n"));

  m.def(
      "orbit",
      [](const std::string& flow, std::uint64_t count, const std::optional<std::string>& start) {
        const FlowSpec spec = flow_from_json(parse(flow));
        std::vector<std::vector<double>> out;
        out.reserve(count);
        for (const auto& p : orbit(spec, start_or_zero(spec, start), count)) out.push_back(reals(p));
        return out;
      },
      py::arg("flow_json"), py::arg("count"), py::arg("start_json") = py::none(),
      "orbit coordinates as doubles; the flow and start are JSON documents");
  m.def(
      "orbit_exact",
      [](const std::string& flow, std::uint64_t count, const std::optional<std::string>& start) {
        const FlowSpec spec = flow_from_json(parse(flow));
        std::vector<std::vector<Frac>> out;
        for (const auto& p : orbit(spec, start_or_zero(spec, start), count)) {
          out.emplace_back(p.coords().begin(), p.coords().end());
        }
        return out;
      },
      py::arg("flow_json"), py::arg("count"), py::arg("start_json") = py::none());

  m.def("furstenberg_sequence", [](int K) {
    const auto s = furstenberg_sequence(K);
    py::dict d;
    d["v"] = s.v;
    d["n"] = s.n;
    d["alpha"] = py::make_tuple(py::int_(py::str(numerator(s.alpha_exact).str())),
                                py::int_(py::str(denominator(s.alpha_exact).str())));
    return d;
  });
  m.def("small_divisor_bound_holds", [](int K, int k) { return small_divisor_bound_holds(furstenberg_sequence(K), k); });

  auto lacunary = [](int K, const std::string& weights, double t, Frac beta) {
    return make_lacunary_params(K, weights_from_string(weights), t, beta);
  };
  m.def(
      "h_eval", [=](Frac x, int K, const std::string& w, double t, Frac beta) { return h_eval(x, lacunary(K, w, t, beta)); },
      py::arg("x"), py::arg("K") = 3, py::arg("weights") = "inv", py::arg("t") = 1.0, py::arg("beta") = Frac{});
  m.def(
      "H_eval", [=](Frac x, int K, const std::string& w, double t, Frac beta) { return H_eval(x, lacunary(K, w, t, beta)); },
      py::arg("x"), py::arg("K") = 3, py::arg("weights") = "inv", py::arg("t") = 1.0, py::arg("beta") = Frac{});

  m.def(
      "theta_eval", [](double x, double y, double z, double tol) { return theta_eval({x, y, z}, tol); }, py::arg("x"),
      py::arg("y"), py::arg("z"), py::arg("tol") = 1e-12);
  m.def(
      "nil_function",
      [](std::int64_t n, Frac alpha, Frac beta, Frac gamma, double tol) {
        NilParams p{alpha, beta, gamma, tol};
        validate(p);
        return nil_function(n, p);
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("tol") = 1e-12);

  m.def(
      "birkhoff_average",
      [](const std::string& flow, const std::string& obs, std::uint64_t count, const std::optional<std::string>& start) {
        const FlowSpec spec = flow_from_json(parse(flow));
        return birkhoff_average(spec, start_or_zero(spec, start), observable_from_json(parse(obs)), count);
      },
      py::arg("flow_json"), py::arg("observable_json"), py::arg("count"), py::arg("start_json") = py::none());
  m.def(
      "uniform_deviation",
      [](const std::string& flow, const std::string& obs, std::uint64_t count, unsigned threads) {
        const FlowSpec spec = flow_from_json(parse(flow));
        const auto starts = default_deviation_starts(spec.dim());
        std::vector<std::pair<std::uint64_t, double>> out;
        py::gil_scoped_release release;
        for (const auto& c : uniform_deviation(spec, starts, observable_from_json(parse(obs)), count, threads).checkpoints) {
          out.emplace_back(c.n, c.deviation);
        }
        return out;
      },
      py::arg("flow_json"), py::arg("observable_json"), py::arg("count"), py::arg("threads") = 1);
  m.def(
      "eigen_correlation",
      [](const std::string& flow, const std::string& obs, Frac theta, std::uint64_t count) {
        const FlowSpec spec = flow_from_json(parse(flow));
        return eigen_correlation(spec, TorusPoint(spec.dim()), observable_from_json(parse(obs)), theta, count);
      },
      py::arg("flow_json"), py::arg("observable_json"), py::arg("theta"), py::arg("count"));
  m.def("star_discrepancy", [](const std::vector<Frac>& points) { return star_discrepancy_1d(points); });
  m.def(
      "m_joining_report",
      [](int K, const std::string& weights, double t, Frac beta, std::uint64_t count) {
        const auto p = make_lacunary_params(K, weights_from_string(weights), t, beta);
        return to_csv(m_joining_demo(p, p.seq.alpha, count));
      },
      py::arg("K") = 3, py::arg("weights") = "inv", py::arg("t") = 1.0, py::arg("beta") = Frac{},
      py::arg("count") = 10000, "report CSV");
}
