// Python bindings. Results cross the boundary as report JSON text; the
// package wrapper turns them into dicts.

#include "tclab/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tclab;

namespace {

FieldSpec spec_from(const std::vector<long long>& coeffs, const std::optional<std::vector<std::vector<std::string>>>& basis,
                    const std::string& label) {
  FieldSpec s;
  s.source = "<python>";
  s.label = label;
  for (auto c : coeffs) s.poly.emplace_back(static_cast<long>(c));
  if (s.poly.empty() || s.poly.back() != 1) throw ConfigError("polynomial must be monic, constant term first");
  if (basis) {
    const std::size_t d = s.poly.size() - 1;
    if (basis->size() != d) throw ConfigError("integral basis must have " + std::to_string(d) + " rows");
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if ((*basis)[i].size() != d) throw ConfigError("basis row must have " + std::to_string(d) + " entries");
      for (std::size_t j = 0; j < d; ++j) m(i, j) = parse_rational((*basis)[i][j]);
    }
    s.basis = m;
  }
  return s;
}

class Field {
 public:
  Field(const std::vector<long long>& coeffs, const std::optional<std::vector<std::vector<std::string>>>& basis,
        const std::string& label)
      : ctx_(make_context(build_field(spec_from(coeffs, basis, label)))) {}

  std::string info() const {
    json j = field_json(ctx_.K);
    j["units"] = units_json(ctx_.K, ctx_.units);
    j["class_group"] = class_group_json(ctx_.K, ctx_.cl);
    return j.dump();
  }
  std::string ray_class(std::uint64_t p, const std::string& modulus) {
    return ray_class_json(ctx_.K, ray_class_p_part(ctx_, primes(modulus, p), p)).dump();
  }
  std::string selmer(std::uint64_t p, const std::string& S) {
    return selmer_json(ctx_.K, selmer_basis(ctx_, primes(S, p), p)).dump();
  }
  std::string rusb(std::uint64_t p, const std::string& S) {
    auto c = crosscheck_rusb(ctx_, primes(S, p), p);
    return json{{"dim", c.selmer.dim()}, {"selmer", selmer_json(ctx_.K, c.selmer)}, {"h1", h1_json(c.h1)}}.dump();
  }
  std::string exceptional(const std::string& S) { return exceptional_json(is_exceptional(ctx_, primes(S, 2))).dump(); }
  std::string sandwich(std::uint64_t p, const std::string& T, const std::string& V) {
    return sandwich_json(sha_sandwich(ctx_, p, primes(T, p), primes(V, p))).dump();
  }
  std::string preserving_primes(std::uint64_t p, const std::string& S, std::size_t count, long long norm_bound) {
    return preserving_json(ctx_.K, find_preserving_primes(ctx_, primes(S, p), p, count, Int(static_cast<long>(norm_bound)))).dump();
  }
  std::string primes_above(long long q) const { return primes_json(ctx_.K, factor_prime(ctx_.K, Int(static_cast<long>(q)))).dump(); }
  int degree() const { return ctx_.K.degree(); }
  std::string label() const { return ctx_.K.label(); }
  std::string discriminant() const { return to_string(ctx_.K.disc()); }

 private:
  std::vector<PrimeIdeal> primes(const std::string& list, std::uint64_t p) const {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    auto specs = parse_prime_list(list);
    for (const auto& s : specs)
      if (s.q == static_cast<unsigned long>(p)) throw std::invalid_argument("prime " + to_string(s.q) + " lies above p: sets must be tame");
    return resolve_primes(ctx_.K, specs);
  }

  FieldContext ctx_;
};

std::string run(const RunConfig& cfg) {
  json r = make_report("reproduce", {cfg.name});
  run_pipeline(cfg, r);
  r["golden_diff"] = golden_diff(cfg, r);
  return r.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "tclab native core";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Field>(m, "Field")
      .def(py::init<const std::vector<long long>&, const std::optional<std::vector<std::vector<std::string>>>&, const std::string&>(),
           py::arg("coefficients"), py::arg("integral_basis") = std::nullopt, py::arg("label") = "")
      .def_property_readonly("degree", &Field::degree)
      .def_property_readonly("label", &Field::label)
      .def_property_readonly("discriminant", &Field::discriminant)
      .def("_info", &Field::info)
      .def("_primes_above", &Field::primes_above, py::arg("q"))
      .def("_ray_class", &Field::ray_class, py::arg("p"), py::arg("modulus"))
      .def("_selmer", &Field::selmer, py::arg("p"), py::arg("S"))
      .def("_rusb", &Field::rusb, py::arg("p"), py::arg("S"))
      .def("_exceptional", &Field::exceptional, py::arg("S"))
      .def("_sandwich", &Field::sandwich, py::arg("p"), py::arg("T"), py::arg("V"))
      .def("_preserving_primes", &Field::preserving_primes, py::arg("p"), py::arg("S"), py::arg("count"), py::arg("norm_bound"));

  m.def("_reproduce", [](const std::string& name) { return run(parse_run_config(builtin_config(name), "builtin:" + name)); },
        py::arg("name"));
  m.def("_run_config", [](const std::string& path) { return run(load_run_config(path)); }, py::arg("path"));
  m.attr("REPORT_SCHEMA") = kReportSchema;
}
