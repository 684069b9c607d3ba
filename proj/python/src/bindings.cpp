// Thin pybind11 layer. Structured results cross the boundary as JSON text and
// are decoded by the Python package, so the schema matches the CLI exactly.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ideal_lab/convergence.hpp"
#include "ideal_lab/errors.hpp"
#include "ideal_lab/json_io.hpp"
#include "ideal_lab/realization.hpp"
#include "ideal_lab/suites.hpp"

namespace py = pybind11;
using namespace ideal_lab;

namespace {

std::vector<double> ladder_or_default(const std::optional<std::vector<double>>& l) {
  return l ? *l : default_eps_ladder();
}

std::string limit_search(const std::string& seq_json, const std::string& rho_s, double eta,
                         const std::optional<std::vector<double>>& ladder, std::size_t max_f,
                         std::optional<std::size_t> max_k, Nat max_element, std::uint64_t node_budget) {
  const PartitionRegularMap rho = parse_rho(rho_s);
  const SequenceWindow x = sequence_from_json(Json::parse(seq_json));
  LimitSearch ls;
  ls.target_size = max_f;
  ls.search_bound = max_element;
  if (max_k) ls.max_k = *max_k;
  ls.node_budget = node_budget;
  SearchOutcome<LimitWitness> r;
  {
    py::gil_scoped_release nogil;
    r = find_limit_witness(rho, x, eta, ladder_or_default(ladder), ls);
  }
  Json out{{"found", r.found()}, {"bounds", to_json(r.bounds)}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  return out.dump();
}

std::optional<std::vector<Nat>> positivity(const std::string& rho_s, const std::function<bool(py::object)>& in_s,
                                           std::size_t target_size, Nat search_bound, Nat window) {
  const PartitionRegularMap rho = parse_rho(rho_s);
  const bool pair = rho.target_domain() == IndexDomain::Pair;
  auto pred = [&](Index s) -> bool {
    return pair ? in_s(py::make_tuple(pair_lo(s), pair_hi(s))) : in_s(py::int_(s));
  };
  const auto w = positivity_search(rho, pred, target_size, search_bound, window);
  if (!w) return std::nullopt;
  return w->f.elements();
}

std::string construct(const std::string& kind_s, const std::string& scheme_spec, Nat bound, std::size_t depth,
                      std::size_t sparse_size, unsigned threads) {
  const RealizationKind kind = parse_realization_kind(kind_s);
  const SouslinScheme scheme = parse_scheme_spec(scheme_spec);
  const ExecPolicy pol{threads};
  py::gil_scoped_release nogil;
  std::optional<VerySparseSet> d;
  if (kind == RealizationKind::Hindman) d = generate_very_sparse(sparse_size, kDefaultGrowthFactor, pol);
  return to_json(build_realized_sequence(kind, scheme, depth, bound, d, pol)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ideal-lab native core";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<BoundError>(m, "BoundError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());

  m.def("nu2", &nu2, py::arg("n"));
  m.def(
      "fs", [](const std::vector<Nat>& d, Nat bound) { return fs(GenSet(d), bound).members(); }, py::arg("d"),
      py::arg("bound"));
  m.def(
      "pairs",
      [](const std::vector<Nat>& d) {
        std::vector<std::pair<Nat, Nat>> out;
        for (Index p : pairs(GenSet(d))) out.emplace_back(pair_lo(p), pair_hi(p));
        return out;
      },
      py::arg("d"));
  m.def(
      "tree_seq", [](Nat i) { return TreeBijection{}.seq_at(i).entries; }, py::arg("i"));
  m.def(
      "tree_index", [](const std::vector<Nat>& s) { return TreeBijection{}.index_of(TreeSeq(s)); }, py::arg("s"));

  m.def(
      "generate_very_sparse_json",
      [](std::size_t size, Nat growth, unsigned threads) {
        return to_json(generate_very_sparse(size, growth, ExecPolicy{threads})).dump();
      },
      py::arg("size"), py::arg("growth") = kDefaultGrowthFactor, py::arg("threads") = 1);
  m.def(
      "certify_very_sparse_json",
      [](const std::vector<Nat>& d, unsigned threads) {
        return to_json(certify_very_sparse(GenSet(d), ExecPolicy{threads})).dump();
      },
      py::arg("d"), py::arg("threads") = 1);

  m.def(
      "nu2_sequence_json", [](Nat bound) { return to_json(nu2_sequence(bound)).dump(); }, py::arg("bound"));
  m.def("find_limit_witness_json", &limit_search, py::arg("sequence"), py::arg("rho"), py::arg("eta"),
        py::arg("eps_ladder") = std::nullopt, py::arg("max_f") = 6, py::arg("max_k") = std::nullopt,
        py::arg("max_element") = 0, py::arg("node_budget") = 0);
  m.def("positivity_search", &positivity, py::arg("rho"), py::arg("in_s"), py::arg("target_size"),
        py::arg("search_bound"), py::arg("window"));

  m.def("construct_json", &construct, py::arg("kind"), py::arg("scheme"), py::arg("bound"),
        py::arg("depth") = kDefaultResolutionDepth, py::arg("sparse_size") = 10, py::arg("threads") = 1);
  m.def(
      "validate_scheme_json",
      [](const std::string& spec, std::size_t depth, std::size_t width) {
        return to_json(validate(parse_scheme_spec(spec), depth, width)).dump();
      },
      py::arg("scheme"), py::arg("depth"), py::arg("width"));
  m.def(
      "run_suite_json",
      [](const std::string& name, std::size_t depth, unsigned threads) {
        py::gil_scoped_release nogil;
        return run_suite(name, SuiteOptions{depth, ExecPolicy{threads}}).dump();
      },
      py::arg("name"), py::arg("depth") = 4, py::arg("threads") = 1);
}
