// Python bindings for the core operations: level arithmetic, set
// descriptors, filter bases, divisibility evidence, and the property suites.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ultralevels/arith.hpp"
#include "ultralevels/checker.hpp"
#include "ultralevels/errors.hpp"
#include "ultralevels/filter.hpp"
#include "ultralevels/setlang.hpp"
#include "ultralevels/witnesses.hpp"

namespace py = pybind11;
namespace ul = ultralevels;

namespace {

std::string verdict_kind(const ul::Verdict& v) {
  switch (v.kind) {
    case ul::Verdict::Kind::Proven:
      return "Proven";
    case ul::Verdict::Kind::ConsistentUpTo:
      return "ConsistentUpTo";
    case ul::Verdict::Kind::Refuted:
      return "Refuted";
  }
  return "Refuted";
}

std::string evidence_kind(const ul::LevelEvidence& e) {
  switch (e.kind) {
    case ul::LevelEvidence::Kind::OnLevel:
      return "OnLevel";
    case ul::LevelEvidence::Kind::NotOnFiniteLevels:
      return "NotOnFiniteLevels";
    case ul::LevelEvidence::Kind::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Levels of the multiplicative semigroup of naturals: prime-factor "
      "counts, signature classes, symbolic sets, and filter-base "
      "ultrafilter approximations.";

  py::register_exception<ul::error>(m, "Error");

  // --- level arithmetic ---
  m.def("omega", &ul::omega, py::arg("n"),
        "Number of prime factors of n, counted with multiplicity.");
  m.def(
      "factorize",
      [](std::uint64_t n) { return ul::factorize(n).factors; },
      py::arg("n"), "Prime factorization as ascending (prime, exponent) pairs.");
  m.def("signature", &ul::signature, py::arg("n"),
        "Exponent multiset of n >= 2, weakly descending.");
  m.def("signature_classes", &ul::signature_classes, py::arg("i"),
        "Signature classes of level i, descending lexicographic.");
  m.def("quotient_level", &ul::quotient_level, py::arg("i"), py::arg("m"),
        "Level of level(i)/m, or None when the quotient set is empty.");
  m.def("is_prime", &ul::is_prime, py::arg("n"));
  m.def("nth_prime", &ul::nth_prime, py::arg("k"), "1-indexed k-th prime.");

  // --- verdicts ---
  py::class_<ul::Verdict>(m, "Verdict")
      .def_property_readonly("kind", &verdict_kind)
      .def_readonly("rule", &ul::Verdict::rule)
      .def_readonly("bound", &ul::Verdict::bound)
      .def_readonly("counterexample", &ul::Verdict::counterexample)
      .def("is_proven", &ul::Verdict::is_proven)
      .def("is_refuted", &ul::Verdict::is_refuted)
      .def("non_refuted", &ul::Verdict::non_refuted)
      .def("__str__", &ul::Verdict::str)
      .def("__repr__", &ul::Verdict::str);

  // --- symbolic sets ---
  py::class_<ul::SetDesc>(m, "SetDesc")
      .def_static("parse", &ul::parse_set, py::arg("text"),
                  "Parse the set-spec grammar, e.g. 'tail(diag(pow2),3)'.")
      .def("member", &ul::SetDesc::member, py::arg("n"))
      .def("enumerate", &ul::SetDesc::enumerate, py::arg("bound"),
           "Ascending elements up to the bound.")
      .def("__eq__", &ul::SetDesc::operator==, py::is_operator())
      .def("__str__", &ul::SetDesc::str)
      .def("__repr__", &ul::SetDesc::str);
  m.def("parse_set", &ul::parse_set, py::arg("text"));
  m.def("is_upward_closed", &ul::is_upward_closed, py::arg("s"),
        py::arg("bound"));

  // --- filter bases ---
  py::class_<ul::FilterBase>(m, "FilterBase")
      .def_static("parse", &ul::parse_filter, py::arg("text"),
                  "Parse the filter-spec grammar, e.g. 'principal:30'.")
      .def_readonly("fip_bound", &ul::FilterBase::fip_bound)
      .def_readonly("fip_witness", &ul::FilterBase::fip_witness)
      .def_property_readonly(
          "generators",
          [](const ul::FilterBase& x) {
            std::vector<std::string> out;
            out.reserve(x.gens.size());
            for (const auto& g : x.gens) out.push_back(g.instance().str());
            return out;
          },
          "Depth-0 instance of every generator scheme, as set-spec text.")
      .def("__str__", &ul::FilterBase::str)
      .def("__repr__", &ul::FilterBase::str);
  m.def("parse_filter", &ul::parse_filter, py::arg("text"));
  m.def("principal", &ul::principal, py::arg("n"));
  m.def(
      "tails_base",
      [](const std::string& src) { return ul::tails_base(ul::parse_set(src)); },
      py::arg("src"), "Base generated by all tails of the given set-spec.");
  m.def(
      "f_alpha",
      [](const std::string& alpha) {
        return ul::f_alpha(ul::parse_alpha(alpha));
      },
      py::arg("alpha"), "Filter base of an alpha-spec, e.g. '[(2,^1,x2)]'.");
  m.def(
      "sigma",
      [](const std::string& alpha) { return ul::sigma(ul::parse_alpha(alpha)); },
      py::arg("alpha"), "Total level of an alpha-spec.");
  m.def(
      "add_alpha",
      [](const std::string& a, const std::string& b) {
        return ul::alpha_str(
            ul::add_alpha(ul::parse_alpha(a), ul::parse_alpha(b)));
      },
      py::arg("a"), py::arg("b"), "Pointwise sum of two alpha-specs.");

  m.def(
      "contains",
      [](const ul::FilterBase& x, const std::string& s, std::uint64_t bound) {
        return ul::contains(x, ul::parse_set(s), bound);
      },
      py::arg("x"), py::arg("set"), py::arg("bound") = 10'000,
      "Verdict on whether the set belongs to every extension of x.");
  m.def("product", &ul::product, py::arg("x"), py::arg("y"));
  m.def("scale", &ul::scale, py::arg("n"), py::arg("x"));
  m.def(
      "restrict",
      [](const ul::FilterBase& x, const std::string& a) {
        return ul::restrict(x, ul::parse_set(a));
      },
      py::arg("x"), py::arg("set"));
  m.def(
      "pushforward",
      [](const std::string& map, const ul::FilterBase& x) {
        return ul::pushforward(ul::get_map(map), x);
      },
      py::arg("map"), py::arg("x"),
      "Pushforward along a named map: sf(k), sm(k), pow(e), threetwomap.");
  m.def("tilde_divides", &ul::tilde_divides, py::arg("x"), py::arg("y"),
        py::arg("bound") = 10'000);
  m.def("chain", &ul::chain, py::arg("x"), py::arg("chain_len") = 8,
        py::arg("bound") = 10'000);

  py::class_<ul::LevelEvidence>(m, "LevelEvidence")
      .def_property_readonly("kind", &evidence_kind)
      .def_readonly("level", &ul::LevelEvidence::level)
      .def_readonly("verdict", &ul::LevelEvidence::verdict)
      .def_readonly("checked_up_to", &ul::LevelEvidence::checked_up_to)
      .def_readonly("per_level", &ul::LevelEvidence::per_level)
      .def("__str__", &ul::LevelEvidence::str)
      .def("__repr__", &ul::LevelEvidence::str);
  m.def("level_evidence", &ul::level_evidence, py::arg("x"),
        py::arg("max_level") = 50, py::arg("bound") = 10'000);

  // --- maps ---
  m.def(
      "apply_map",
      [](const std::string& map, std::uint64_t n) {
        return ul::get_map(map).apply(n);
      },
      py::arg("map"), py::arg("n"), "Apply a named map, domain-checked.");
  m.def("smallest_factor_in_level", &ul::smallest_factor_in_level,
        py::arg("n"), py::arg("k"));
  m.def("smallest_multiple_in_level", &ul::smallest_multiple_in_level,
        py::arg("n"), py::arg("k"));

  // --- property suites ---
  py::class_<ul::SuiteParams>(m, "SuiteParams")
      .def(py::init([](std::uint64_t bound, ul::LevelIndex max_level,
                       unsigned chain_len, std::uint64_t seed, unsigned jobs) {
             ul::SuiteParams p;
             p.bound = bound;
             p.max_level = max_level;
             p.chain_len = chain_len;
             p.seed = seed;
             p.jobs = jobs;
             return p;
           }),
           py::arg("bound") = 10'000, py::arg("max_level") = 50,
           py::arg("chain_len") = 8, py::arg("seed") = 0, py::arg("jobs") = 1)
      .def_readwrite("bound", &ul::SuiteParams::bound)
      .def_readwrite("max_level", &ul::SuiteParams::max_level)
      .def_readwrite("chain_len", &ul::SuiteParams::chain_len)
      .def_readwrite("seed", &ul::SuiteParams::seed)
      .def_readwrite("jobs", &ul::SuiteParams::jobs)
      .def("__str__", &ul::SuiteParams::str);

  py::class_<ul::SuiteResult>(m, "SuiteResult")
      .def_readonly("suite", &ul::SuiteResult::suite)
      .def_readonly("params", &ul::SuiteResult::params)
      .def_readonly("cases_run", &ul::SuiteResult::cases_run)
      .def_readonly("proven", &ul::SuiteResult::proven)
      .def_readonly("consistent", &ul::SuiteResult::consistent)
      .def_readonly("refuted", &ul::SuiteResult::refuted)
      .def_readonly("failures", &ul::SuiteResult::failures)
      .def("ok", &ul::SuiteResult::ok)
      .def("machine_line", &ul::SuiteResult::machine_line)
      .def("markdown", &ul::SuiteResult::markdown)
      .def("__repr__", &ul::SuiteResult::machine_line);

  m.def("suite_names", &ul::suite_names);
  m.def("run_suite", &ul::run_suite, py::arg("name"),
        py::arg("params") = ul::SuiteParams{});
  m.def("run_all", &ul::run_all, py::arg("params") = ul::SuiteParams{});
  m.def("render_machine", &ul::render_machine, py::arg("results"));
  m.def("render_markdown", &ul::render_markdown, py::arg("results"));
}
