// Python bindings. Matrices cross the boundary as square complex128 numpy
// arrays; reports come back as plain dicts.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "gruss/bounds.hpp"
#include "gruss/campaign.hpp"
#include "gruss/distance.hpp"
#include "gruss/json_io.hpp"
#include "gruss/linalg.hpp"
#include "gruss/random.hpp"
#include "gruss/spectral.hpp"
#include "gruss/variance.hpp"
#include "gruss/zoo.hpp"

namespace py = pybind11;
using namespace gruss;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
    throw DimensionError("expected a square 2-d array");
  const auto n = static_cast<std::size_t>(arr.shape(0));
  return ComplexMatrix(n, std::vector<Complex>(arr.data(), arr.data() + n * n));
}

CArray to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.n());
  CArray out({n, n});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CVector to_vector(const CArray& arr) {
  if (arr.ndim() != 1) throw DimensionError("expected a 1-d array");
  return CVector(arr.data(), arr.data() + arr.shape(0));
}

CArray vector_array(const CVector& v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::object to_python(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json from_python(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

OptimizerSettings settings_for(std::uint64_t seed, int restarts) {
  OptimizerSettings s;
  s.seed = seed;
  s.restarts = restarts;
  return s;
}

py::dict scalar_distance_dict(const ScalarDistance& d) {
  py::dict out;
  out["center"] = d.center;
  out["distance"] = d.distance;
  out["lower_bound"] = d.lower_bound;
  out["degenerate"] = d.degenerate;
  out["converged"] = d.converged;
  return out;
}

py::object chain(const std::string& name, const CArray& a, const CArray& t,
                 const CArray& p, double lambda, double mu,
                 std::optional<std::vector<Complex>> shifts, std::uint64_t seed) {
  const OptimizerSettings s = settings_for(seed, 32);
  const PairContext ctx =
      make_pair_context(to_matrix(a), to_matrix(t), DensityOperator(to_matrix(p), s), s);
  BoundChainReport r;
  if (name == "renaud") {
    r = renaud_chain(ctx);
  } else if (name == "refined") {
    r = refined_chain(ctx);
  } else if (name == "normal") {
    r = normal_chain(ctx);
  } else if (name == "transloid") {
    std::vector<Complex> sh = shifts.value_or(std::vector<Complex>{});
    if (sh.empty()) {
      CounterRng rng(derive_seed(seed, 0x7a5ULL));
      const double scale = 1.0 + ctx.a.norm + ctx.t.norm;
      for (int k = 0; k < 8; ++k) sh.push_back(scale * rng.complex_normal());
    }
    r = transloid_chain(ctx, sh);
  } else if (name == "theorem") {
    r = renaud_k_chain(ctx, lambda, mu);
  } else if (name == "normaloid") {
    r = normaloid_corollary_chain(ctx, lambda, mu);
  } else {
    throw py::value_error("unknown chain '" + name + "'");
  }
  return to_python(report_to_json(r));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical range, variance and Gruss-type bound toolkit";

  static py::exception<Error> base(m, "GrussError", PyExc_RuntimeError);
  static py::exception<PreconditionError> pre(m, "PreconditionError", base.ptr());
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      py::set_error(pre, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("spectral_norm", [](const CArray& a) { return spectral_norm(to_matrix(a)); });
  m.def("spectrum", [](const CArray& a) { return vector_array(spectrum(to_matrix(a))); });
  m.def("numerical_radius", [](const CArray& a) { return numerical_radius(to_matrix(a)); });
  m.def("numerical_range_boundary", [](const CArray& a) {
    return vector_array(numerical_range_boundary(to_matrix(a), {}));
  });
  m.def("numerical_range_disc", [](const CArray& a) {
    const Disc d = numerical_range_disc(to_matrix(a));
    return py::make_tuple(d.center, d.radius);
  });
  m.def("smallest_enclosing_disc", [](const std::vector<Complex>& pts) {
    const Disc d = smallest_enclosing_disc(pts);
    return py::make_tuple(d.center, d.radius);
  });
  m.def("is_normaloid", [](const CArray& a, double tol) {
    const NormaloidCheck c = is_normaloid(to_matrix(a), tol);
    return py::make_tuple(c.normaloid, c.residual);
  }, py::arg("a"), py::arg("tol") = 1e-8);

  m.def("dist_to_scalars", [](const CArray& a, std::uint64_t seed) {
    return scalar_distance_dict(dist_to_scalars(to_matrix(a), settings_for(seed, 32)));
  }, py::arg("a"), py::arg("seed") = 42);
  m.def("dist_sphere", [](const CArray& a, std::uint64_t seed, int restarts) {
    const SphereDistance d = dist_sphere(to_matrix(a), settings_for(seed, restarts));
    py::dict out;
    out["distance"] = d.distance;
    out["maximizer"] = vector_array(d.maximizer);
    out["converged"] = d.converged;
    return out;
  }, py::arg("a"), py::arg("seed") = 42, py::arg("restarts") = 32);
  m.def("dist_to_line", [](const CArray& a, const CArray& t, std::uint64_t seed) {
    const LineDistance l = dist_to_line(to_matrix(a), to_matrix(t), settings_for(seed, 32));
    py::dict out;
    out["direct"] = scalar_distance_dict(l.direct);
    out["sup"] = l.sup.distance;
    out["agree"] = l.agree;
    return out;
  }, py::arg("a"), py::arg("t"), py::arg("seed") = 42);
  m.def("dist_characterizations", [](const CArray& a, std::uint64_t seed, int restarts) {
    const DistCharacterizations c =
        dist_characterizations(to_matrix(a), settings_for(seed, restarts));
    py::dict out;
    out["commutator_half_sup"] = c.commutator_half_sup;
    out["rank_one_proj_sup"] = c.rank_one_proj_sup;
    out["converged"] = c.converged;
    return out;
  }, py::arg("a"), py::arg("seed") = 42, py::arg("restarts") = 64);

  m.def("v_p", [](const CArray& a, const CArray& t, const CArray& p) {
    return v_p(to_matrix(a), to_matrix(t), DensityOperator(to_matrix(p)));
  });
  m.def("variance", [](const CArray& a, const CArray& p) {
    return variance(to_matrix(a), DensityOperator(to_matrix(p)));
  });
  m.def("variance_identities", [](const CArray& a, const CArray& p) {
    const VarianceIdentities v = variance_identities(to_matrix(a), DensityOperator(to_matrix(p)));
    return py::make_tuple(v.v1, v.v2, v.v3);
  });
  m.def("audenaert_max", [](const CArray& a, std::uint64_t seed) {
    const AudenaertMax r = audenaert_max(to_matrix(a), settings_for(seed, 32));
    py::dict out;
    out["value"] = r.value;
    out["state"] = to_array(r.state.matrix());
    out["converged"] = r.converged;
    return out;
  }, py::arg("a"), py::arg("seed") = 42);
  m.def("dragomir_bound", [](const CArray& a, const CArray& t, const CArray& p,
                             Complex lambda, Complex mu) {
    const DragomirBound b =
        dragomir_bound(to_matrix(a), to_matrix(t), DensityOperator(to_matrix(p)), lambda, mu);
    return py::make_tuple(b.middle, b.outer);
  });

  m.def("renaud_bound", [](const CArray& a, const CArray& t) {
    return renaud_bound(to_matrix(a), to_matrix(t));
  });
  m.def("h_factor", [](const CArray& a, double lambda) {
    return h_factor(to_matrix(a), lambda);
  });
  m.def("kantorovich_check", [](const CArray& a, const CArray& x) {
    const KantorovichCheck k = kantorovich_check(to_matrix(a), to_vector(x));
    return py::make_tuple(k.lhs, k.rhs);
  });
  m.def("chain", &chain, py::arg("name"), py::arg("a"), py::arg("t"), py::arg("p"),
        py::arg("lam") = 1.0, py::arg("mu") = 1.0, py::arg("shifts") = py::none(),
        py::arg("seed") = 42,
        "Evaluate one inequality chain; returns the report as a dict.");
  m.def("sweep_k", [](const CArray& a, const CArray& t, int grid) {
    py::list rows;
    for (const SweepRow& r : sweep_k(to_matrix(a), to_matrix(t), grid)) {
      py::dict d;
      d["lambda"] = r.lambda;
      d["mu"] = r.mu;
      d["h_lambda"] = r.h_lambda;
      d["h_mu"] = r.h_mu;
      d["k"] = r.k;
      d["bound"] = r.bound;
      d["lhs"] = r.lhs;
      d["slack"] = r.slack;
      rows.append(d);
    }
    return rows;
  }, py::arg("a"), py::arg("t"), py::arg("grid") = 11);

  m.def("generate", [](const py::dict& spec) {
    return to_array(generate_matrix(zoo_spec_from_json(from_python(spec))));
  }, "Sample from the matrix zoo; spec keys match the JSON zoo spec.");
  m.def("fixture", [](const std::string& name) { return to_array(fixture(name).matrix); });
  m.def("fixture_names", [] {
    std::vector<std::string> names;
    for (const auto& f : fixtures()) names.push_back(f.name);
    return names;
  });
  m.def("run_campaign", [](const py::dict& config) {
    const TrialConfig c = config_from_json(from_python(config));
    c.validate();
    CampaignResult r;
    {
      py::gil_scoped_release release;
      r = run_campaign(c);
    }
    return to_python(campaign_to_json(r, c, false));
  }, "Run the property suites; config keys match the campaign JSON config.");
}
