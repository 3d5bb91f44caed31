// Copyright 2026 The nilcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilcert/checker.hpp"
#include "nilcert/commutativity.hpp"
#include "nilcert/expr.hpp"
#include "nilcert/serialize.hpp"
#include "nilcert/transforms.hpp"

namespace py = pybind11;
using namespace nilcert;

namespace {

std::vector<std::string> merge_symbols(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (const std::string& s : b) {
    if (std::ranges::find(a, s) == a.end()) a.push_back(s);
  }
  return a;
}

Certificate load_valid(const std::string& json) {
  Certificate cert = deserialize(json);
  Verdict v = check_certificate(cert);
  if (!v) throw std::invalid_argument(v.describe());
  return cert;
}

}  // namespace

PYBIND11_MODULE(_nilcert, m) {
  m.doc() = "nilcert core: certificate checking and witness transforms";

  py::register_exception<MalformedInput>(m, "MalformedInput", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<TransformError>(m, "TransformError", PyExc_ValueError);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("valid", &Verdict::valid)
      .def_readonly("node", &Verdict::node)
      .def_property_readonly("reason",
                             [](const Verdict& v) -> std::optional<std::string> {
                               if (v.valid) return std::nullopt;
                               return std::string(reason_code(v.reason));
                             })
      .def_readonly("detail", &Verdict::detail)
      .def("__bool__", [](const Verdict& v) { return v.valid; })
      .def("__repr__", [](const Verdict& v) { return "<Verdict " + v.describe() + ">"; });

  m.def(
      "normalize",
      [](const std::string& expr, const std::vector<std::string>& symbols) {
        std::vector<Symbol> declared;
        for (const std::string& s : symbols) declared.push_back(Symbol::base(s));
        return print_poly(parse_poly(expr, symbols), SymbolOrder(declared));
      },
      py::arg("expr"), py::arg("symbols"), "Expand a ring expression to its normal form.");

  m.def(
      "check", [](const std::string& json) { return check_certificate(deserialize(json)); },
      py::arg("certificate"), "Replay a certificate.");

  m.def(
      "demo",
      [](int n) {
        Demo d = xn_demo(n);
        return py::make_tuple(serialize(d.certificate), render_proof_log(d.log, LogStyle::Markdown));
      },
      py::arg("n"), "Certificate and markdown log for [x,y] in Nil(x^n - x), n = 2 or 3.");

  m.def(
      "intersect",
      [](const std::string& p_json, const std::string& q_json) {
        Certificate pc = load_valid(p_json);
        Certificate qc = load_valid(q_json);
        WitnessDag p = to_witness(pc);
        WitnessDag q = to_witness(qc);
        if (p.setting() != q.setting()) throw SettingMismatch("settings differ");
        GeneratorSplit split = infer_split(p.generators(), q.generators());
        WitnessDag r = p.setting() == Setting::Nil ? nil_intersect(split, p, q)
                                                   : sqrt_intersect(split, p, q);
        return serialize(to_certificate(r, merge_symbols(pc.symbols, qc.symbols)));
      },
      py::arg("p"), py::arg("q"), "c in I(U,a), c in I(U,b) => c in I(U,ab).");

  m.def(
      "product",
      [](const std::string& p_json, const std::string& q_json, std::optional<std::string> middle) {
        Certificate pc = load_valid(p_json);
        Certificate qc = load_valid(q_json);
        WitnessDag p = to_witness(pc);
        WitnessDag q = to_witness(qc);
        if (p.setting() != q.setting()) throw SettingMismatch("settings differ");
        std::vector<std::string> symbols = merge_symbols(pc.symbols, qc.symbols);
        GeneratorSplit split = infer_split(p.generators(), q.generators());
        if (p.setting() == Setting::Nil) {
          if (middle) throw std::invalid_argument("middle only applies to the sqrt setting");
          return serialize(to_certificate(nil_product(split, p, q), symbols));
        }
        Poly mid = middle ? parse_poly(*middle, symbols) : Poly(Symbol::fresh());
        return serialize(to_certificate(sqrt_product(split, p, q, mid), symbols));
      },
      py::arg("p"), py::arg("q"), py::arg("middle") = py::none(),
      "x in I(U,a), y in I(U,b) => x*y (nil) or x*m*y (sqrt) in I(U,ab).");

  m.def(
      "permute",
      [](const std::string& json, const std::vector<std::string>& factors,
         const std::vector<std::size_t>& sigma) {
        Certificate cert = load_valid(json);
        std::vector<Poly> parts;
        for (const std::string& f : factors) parts.push_back(parse_poly(f, cert.symbols));
        WitnessDag r = permute(to_witness(cert), parts, Permutation(sigma));
        return serialize(to_certificate(r, cert.symbols));
      },
      py::arg("certificate"), py::arg("factors"), py::arg("sigma"),
      "Reorder the factors of a witnessed product; sigma lists 1-based images.");

  m.def(
      "emit_proof_log",
      [](const std::string& json, bool markdown) {
        return emit_proof_log(deserialize(json), markdown ? LogStyle::Markdown : LogStyle::Text);
      },
      py::arg("certificate"), py::arg("markdown") = true, "Node-by-node replay of a certificate.");
}
