// Command-line front end: level arithmetic, set/filter grammars, evidence
// queries, and the property suites. Output is byte-deterministic for fixed
// flags and seed; wall-clock time is never written to the report stream.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ultralevels/arith.hpp"
#include "ultralevels/checker.hpp"
#include "ultralevels/errors.hpp"
#include "ultralevels/filter.hpp"
#include "ultralevels/setlang.hpp"
#include "ultralevels/witnesses.hpp"

namespace ul = ultralevels;

namespace {

std::string signature_str(const ul::PrimeSignature& sig) {
  std::string out = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sig[i]);
  }
  return out + ")";
}

std::string factorization_str(const ul::Factorization& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i) out += "*";
    out += std::to_string(f.factors[i].first);
    if (f.factors[i].second > 1)
      out += "^" + std::to_string(f.factors[i].second);
  }
  return out;
}

void print_base(std::ostream& os, const ul::FilterBase& x) {
  os << "filter=" << x.str() << "\n";
  os << "witness=" << x.fip_witness << "\n";
  for (const auto& g : x.gens) os << "gen=" << g.instance().str() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Levels of the multiplicative semigroup of naturals: prime-factor\n"
      "counts, signature classes, symbolic set descriptors, filter-base\n"
      "ultrafilter approximations, and their property suites."};
  app.require_subcommand(1);
  app.footer(
      "Set-spec grammar:    finite(4,6) primes level(3) pow(S,2) dp(S,2)\n"
      "                     scale(2,S) quot(S,2) up(S) down(S) pu(A,B)\n"
      "                     geom(3,2) diag(pow2) mult(6) tail(S,3)\n"
      "                     union(A,B) inter(A,B) comp(S) primesidx(2,1)\n"
      "                     aprod((S,k,mult);...) img(map,S)\n"
      "Filter-spec grammar: principal:30 tails:diag(pow2) falpha:[(2,^1,x2)]\n"
      "                     prod(F,G) push(map,F) restrict(F,S) base:{S;S}\n"
      "Maps:                sf(k) sm(k) pow(e) threetwomap\n"
      "Exit codes:          0 all verdicts Proven/ConsistentUpTo and no suite\n"
      "                     failures; 1 any Refuted verdict or failing suite;\n"
      "                     2 usage or parse error.");

  std::uint64_t bound = 10'000;
  std::uint32_t max_level = 50;
  unsigned chain_length = 8;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "md";
  std::string out_path;

  app.add_option("--bound", bound, "Enumeration and witness search bound")
      ->capture_default_str();
  app.add_option("--max-level", max_level, "Highest level index inspected")
      ->capture_default_str();
  app.add_option("--chain-length", chain_length,
                 "Chain length for bases off all finite levels")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized suite cases")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "Suite worker threads (output-neutral)")
      ->capture_default_str();
  app.add_option("--format", format, "Report format for check: md or machine")
      ->check(CLI::IsMember({"md", "machine"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write output to this file, not stdout");

  std::uint64_t arg_n = 0;
  std::uint64_t arg_m = 0;
  std::uint32_t arg_i = 0;
  std::string spec_a;
  std::string spec_b;

  auto* sc_omega = app.add_subcommand(
      "omega", "Number of prime factors of n, with multiplicity");
  sc_omega->add_option("n", arg_n)->required();

  auto* sc_level = app.add_subcommand(
      "level", "Level, signature, and factorization of n");
  sc_level->add_option("n", arg_n)->required();

  auto* sc_classes = app.add_subcommand(
      "classes", "Signature classes of level i, descending lexicographic");
  sc_classes->add_option("i", arg_i)->required();

  auto* sc_quotient = app.add_subcommand(
      "quotient", "Level of the quotient set level(i)/m");
  sc_quotient->add_option("i", arg_i)->required();
  sc_quotient->add_option("m", arg_m)->required();

  auto* sc_enum = app.add_subcommand(
      "enum", "Ascending elements of a set-spec up to --bound");
  sc_enum->add_option("set", spec_a, "set-spec text")->required();

  auto* sc_falpha = app.add_subcommand(
      "falpha", "Build the filter base of an alpha-spec");
  sc_falpha->add_option("alpha", spec_a, "alpha-spec text, e.g. [(2,^2,x1)]")
      ->required();

  auto* sc_product = app.add_subcommand(
      "product", "Product of two filter bases");
  sc_product->add_option("x", spec_a, "filter-spec text")->required();
  sc_product->add_option("y", spec_b, "filter-spec text")->required();

  auto* sc_divides = app.add_subcommand(
      "divides", "Divisibility verdict x ~| y for filter bases");
  sc_divides->add_option("x", spec_a, "filter-spec text")->required();
  sc_divides->add_option("y", spec_b, "filter-spec text")->required();

  auto* sc_evidence = app.add_subcommand(
      "evidence", "Level evidence for a filter base up to --max-level");
  sc_evidence->add_option("x", spec_a, "filter-spec text")->required();

  auto* sc_chain = app.add_subcommand(
      "chain", "Divisibility chain walking the levels below a filter base");
  sc_chain->add_option("x", spec_a, "filter-spec text")->required();

  auto* sc_check = app.add_subcommand(
      "check", "Run one property suite, or all of them");
  sc_check->add_option("suite", spec_a, "suite name or 'all'")->required();

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int exit_code = 0;
  std::ostringstream body;
  try {
    if (app.got_subcommand(sc_omega)) {
      body << ul::omega(arg_n) << "\n";
    } else if (app.got_subcommand(sc_level)) {
      ul::Factorization f = ul::factorize(arg_n);
      body << "L_" << ul::omega(arg_n);
      if (arg_n >= 2) body << " signature=" << signature_str(ul::signature(arg_n));
      body << " " << arg_n << "=" << factorization_str(f) << "\n";
    } else if (app.got_subcommand(sc_classes)) {
      for (const auto& sig : ul::signature_classes(arg_i))
        body << signature_str(sig) << "\n";
    } else if (app.got_subcommand(sc_quotient)) {
      auto lvl = ul::quotient_level(arg_i, arg_m);
      if (lvl)
        body << "L_" << *lvl << "\n";
      else
        body << "empty\n";
    } else if (app.got_subcommand(sc_enum)) {
      for (std::uint64_t v : ul::parse_set(spec_a).enumerate(bound))
        body << v << "\n";
    } else if (app.got_subcommand(sc_falpha)) {
      ul::Alpha a = ul::parse_alpha(spec_a);
      ul::FilterBase fb = ul::f_alpha(a);
      body << "alpha=" << ul::alpha_str(a) << "\n";
      body << "sigma=" << ul::sigma(a) << "\n";
      print_base(body, fb);
    } else if (app.got_subcommand(sc_product)) {
      print_base(body, ul::product(ul::parse_filter(spec_a),
                                   ul::parse_filter(spec_b)));
    } else if (app.got_subcommand(sc_divides)) {
      ul::Verdict v = ul::tilde_divides(ul::parse_filter(spec_a),
                                        ul::parse_filter(spec_b), bound);
      body << v.str() << "\n";
      if (v.is_refuted()) exit_code = 1;
    } else if (app.got_subcommand(sc_evidence)) {
      body << ul::level_evidence(ul::parse_filter(spec_a), max_level, bound)
                  .str()
           << "\n";
    } else if (app.got_subcommand(sc_chain)) {
      auto links =
          ul::chain(ul::parse_filter(spec_a), chain_length, bound);
      for (std::size_t k = 0; k < links.size(); ++k)
        body << k << ": " << links[k].str() << "\n";
    } else if (app.got_subcommand(sc_check)) {
      ul::SuiteParams params;
      params.bound = bound;
      params.max_level = max_level;
      params.chain_len = chain_length;
      params.seed = seed;
      params.jobs = jobs;
      std::vector<ul::SuiteResult> results;
      if (spec_a == "all")
        results = ul::run_all(params);
      else
        results.push_back(ul::run_suite(spec_a, params));
      body << (format == "machine" ? ul::render_machine(results)
                                   : ul::render_markdown(results));
      for (const auto& r : results)
        if (!r.ok()) exit_code = 1;
    }
  } catch (const ul::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << body.str();
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
  } else {
    std::cout << body.str();
  }
  return exit_code;
}
