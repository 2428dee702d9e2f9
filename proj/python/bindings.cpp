#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hwb/cli.hpp"
#include "hwb/complexity.hpp"
#include "hwb/constructions.hpp"
#include "hwb/dovetail.hpp"
#include "hwb/enumeration.hpp"
#include "hwb/omega.hpp"

namespace py = pybind11;
using namespace hwb;

namespace {

py::object big(const BigInt& v) {
  const std::string s = v.str();
  return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(big(r.numerator()), big(r.denominator()));
}

Rational rational(const py::handle& value) {
  return Rational::parse(py::str(value).cast<std::string>());
}

Program program_from(const std::string& text) {
  const bool bits = !text.empty() && text.find_first_not_of("01") == std::string::npos;
  return expect_valid(bits ? parse(BitString(text)) : parse_mnemonics(text));
}

py::dict outcome_dict(const RunOutcome& r) {
  py::dict d;
  d["kind"] = std::string(to_string(r.kind));
  d["output"] = r.output;
  d["steps"] = r.steps;
  d["cycle_step"] = r.cycle_step;
  return d;
}

py::dict bounds_dict(const OmegaBounds& b) {
  py::dict d;
  d["lower"] = fraction(b.lower);
  d["undecided"] = fraction(b.undecided);
  d["tail_bound"] = fraction(b.tail_bound);
  d["upper"] = fraction(b.upper);
  d["certified_bits"] = b.certified_bits.str();
  d["max_tokens"] = b.max_tokens;
  d["stage"] = b.stage;
  return d;
}

}  // namespace

PYBIND11_MODULE(halting_workbench, m) {
  m.doc() = "Toy prefix-free machine, halting probability bounds and related constructions";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<Program>(m, "Program")
      .def(py::init(&program_from), py::arg("text"), "Parse a bit string or space-separated mnemonics.")
      .def_property_readonly("bits", [](const Program& p) { return p.bits().str(); })
      .def_property_readonly("mnemonics", &Program::mnemonics)
      .def_property_readonly("bit_length", &Program::bit_length)
      .def_property_readonly("mass", [](const Program& p) { return fraction(p.mass()); })
      .def("__len__", &Program::size)
      .def("__eq__", [](const Program& a, const Program& b) { return a == b; })
      .def("__repr__", [](const Program& p) { return "Program('" + p.mnemonics() + "')"; });

  m.def("invalid_reason", [](const std::string& bits) -> std::optional<std::string> {
    auto parsed = parse(BitString(bits));
    if (auto* reason = std::get_if<InvalidReason>(&parsed)) return std::string(to_string(*reason));
    return std::nullopt;
  }, py::arg("bits"), "None for a valid program, else the reason it is invalid.");

  m.def("run", [](const Program& p, std::uint64_t fuel, std::optional<std::size_t> width) {
    return outcome_dict(run(p, {width, fuel}));
  }, py::arg("program"), py::arg("fuel") = 1000, py::arg("width") = py::none());

  m.def("decide", [](const Program& p, std::size_t width) {
    return outcome_dict(decide_halting_exact(p, MachineConfig::bounded(width)));
  }, py::arg("program"), py::arg("width") = kDefaultBoundedWidth);

  m.def("program_at", [](std::uint64_t i) { return program_at({i}); }, py::arg("index"));
  m.def("program_index", [](const Program& p) { return program_index(p).value; }, py::arg("program"));
  m.def("programs_up_to", &programs_up_to, py::arg("max_tokens"));
  m.def("count_valid", [](std::size_t t) { return big(count_valid(t).valid_count); }, py::arg("token_length"));
  m.def("tail_mass_bound", [](std::size_t t) { return fraction(tail_mass_bound(t)); }, py::arg("token_length"));

  m.def("omega_bounds", [](std::size_t max_tokens, std::uint64_t stages, std::optional<std::size_t> width,
                           unsigned jobs) {
    Session s({.max_tokens = max_tokens, .max_stage = stages, .tape_width = width});
    s.advance(stages, jobs);
    return bounds_dict(omega_bounds(s));
  }, py::arg("max_tokens"), py::arg("stages"), py::arg("width") = py::none(), py::arg("jobs") = 1);

  m.def("certify_bits", [](const py::object& lo, const py::object& hi, std::size_t max_bits) {
    return certify_bits(rational(lo), rational(hi), max_bits).str();
  }, py::arg("lower"), py::arg("upper"), py::arg("max_bits") = kDefaultCertifiedBits);

  m.def("decode", [](const std::string& prefix, const std::vector<Program>& universe, const Program& query) {
    return std::string(to_string(
        decode_halting_with_prefix(OmegaPrefix(BitString(prefix)), Universe::from_oracle(universe), query)));
  }, py::arg("omega_prefix"), py::arg("universe"), py::arg("program"));

  m.def("h_upper", [](const std::string& target, std::size_t max_tokens, std::uint64_t fuel, unsigned jobs) {
    auto e = h_upper(target, max_tokens, fuel, jobs);
    py::dict d;
    d["bound_bits"] = e.bound_bits;
    d["witness"] = e.witness;
    d["method"] = std::string(to_string(e.method));
    d["search_exhausted_through"] = e.search_exhausted_through;
    return d;
  }, py::arg("target"), py::arg("max_tokens"), py::arg("fuel") = 1000, py::arg("jobs") = 1);

  m.def("literal_program", [](const std::string& target) { return literal_program(target); }, py::arg("target"));

  m.def("borel_encode", [](const std::string& answers) { return fraction(borel_encode(BitString(answers))); },
        py::arg("answers"));
  m.def("borel_answer", [](const py::object& x, std::size_t n) { return borel_answer(rational(x), n); },
        py::arg("value"), py::arg("index"));

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the hwb command line in-process; returns (exit_code, stdout, stderr).");
}
